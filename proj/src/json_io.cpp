#include "postcrit/json_io.hpp"

#include "postcrit/errors.hpp"

#include <fstream>

namespace pcs {

namespace {

Json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

BigInt int_of(const Json& j, const char* what)
{
    if (j.is_number_unsigned())
        return BigInt(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string())
        return parse_bigint(j.get<std::string>());
    throw ParseError(std::string(what) + ": expected a non-negative integer");
}

std::uint64_t u64_of(const Json& j, const char* what)
{
    try {
        return to_u64(int_of(j, what), what);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

ResonantSpec spec_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("q") || !j.contains("b"))
        throw ParseError("spec needs \"q\" and \"b\"");
    const Json& q = j["q"];
    LevelSequence levels = LevelSequence::tower();
    try {
        if (q.is_string()) {
            if (q.get<std::string>() != "pow3tower")
                throw ParseError("unknown q rule '" + q.get<std::string>() + "'");
        } else if (q.is_array()) {
            std::vector<BigInt> v;
            for (const auto& e : q)
                v.push_back(int_of(e, "q"));
            levels = LevelSequence::list(std::move(v));
        } else {
            throw ParseError("q must be \"pow3tower\" or a list");
        }

        const Json& b = j["b"];
        BSequence bs = BSequence::cantor();
        if (b.is_array()) {
            std::vector<std::uint64_t> v;
            for (const auto& e : b)
                v.push_back(u64_of(e, "b"));
            bs = BSequence::list(std::move(v));
        } else if (b.is_object() && b.contains("builtin")) {
            std::string name = b["builtin"].get<std::string>();
            if (name == "finite") {
                if (!b.contains("m"))
                    throw ParseError("finite b needs \"m\"");
                bs = BSequence::finite(u64_of(b["m"], "m"));
            } else if (name == "countable") {
                bs = BSequence::countable();
            } else if (name == "cantor") {
                bs = BSequence::cantor();
            } else {
                throw ParseError("unknown b builtin '" + name + "'");
            }
        } else {
            throw ParseError("b must be a list or {\"builtin\": ...}");
        }
        unsigned cap = ResonantSpec::default_level_cap;
        if (j.contains("level_cap"))
            cap = static_cast<unsigned>(u64_of(j["level_cap"], "level_cap"));
        return ResonantSpec(std::move(levels), std::move(bs), cap);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

Json spec_to_json(const ResonantSpec& spec)
{
    Json j;
    if (spec.levels().is_tower()) {
        j["q"] = "pow3tower";
    } else {
        Json a = Json::array();
        for (const auto& v : spec.levels().values())
            a.push_back(str(v));
        j["q"] = a;
    }
    const BSequence& b = spec.bseq();
    switch (b.kind()) {
    case BSequence::Kind::Finite: j["b"] = {{"builtin", "finite"}, {"m", std::to_string(b.m())}}; break;
    case BSequence::Kind::Countable: j["b"] = {{"builtin", "countable"}}; break;
    case BSequence::Kind::Cantor: j["b"] = {{"builtin", "cantor"}}; break;
    case BSequence::Kind::List: {
        Json a = Json::array();
        for (auto v : b.values())
            a.push_back(std::to_string(v));
        j["b"] = a;
        break;
    }
    }
    j["level_cap"] = std::to_string(spec.level_cap());
    return j;
}

ResonantSpec load_spec(const std::string& path) { return spec_from_json(read_file(path)); }

PartitionTree tree_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
        throw ParseError("tree needs a \"levels\" list");
    PartitionTree t;
    for (const auto& l : j["levels"]) {
        PartitionTree::Level L;
        if (!l.contains("cells"))
            throw ParseError("tree level needs \"cells\"");
        L.cells = u64_of(l["cells"], "cells");
        if (l.contains("parent")) {
            if (!l["parent"].is_array())
                throw ParseError("\"parent\" must be a list");
            for (const auto& p : l["parent"])
                L.parent.push_back(u64_of(p, "parent"));
        }
        t.levels.push_back(std::move(L));
    }
    try {
        t.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return t;
}

Json tree_to_json(const PartitionTree& t)
{
    Json levels = Json::array();
    for (const auto& L : t.levels) {
        Json p = Json::array();
        for (auto v : L.parent)
            p.push_back(v);
        levels.push_back({{"cells", L.cells}, {"parent", p}});
    }
    return {{"levels", levels}};
}

PartitionTree load_tree(const std::string& path) { return tree_from_json(read_file(path)); }

Json to_json(const Rational& q) { return str(q); }
Json to_json(const BigInt& n) { return str(n); }
Json to_json(const Span& s) { return {{"lo", str(s.lo)}, {"hi", str(s.hi)}}; }

Json to_json(const PiecewiseVector& v)
{
    Json a = Json::array();
    for (const auto& p : v.pieces())
        a.push_back({{"lo", str(p.lo)}, {"hi", str(p.hi)}, {"value", str(p.value)}});
    return a;
}

Json to_json(const BlockMatrix& m)
{
    Json blocks = Json::array();
    for (const auto& b : m.blocks()) {
        Json e = {{"lo", str(b.lo)}, {"hi", str(b.hi)}};
        if (b.identity)
            e["identity"] = true;
        else
            e["column"] = to_json(b.column);
        blocks.push_back(e);
    }
    return {{"rows", to_json(m.rows())}, {"cols", to_json(m.cols())}, {"blocks", blocks}};
}

Json to_json(const RationalMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            r.push_back(str(m(i, k)));
        rows.push_back(r);
    }
    return {{"row_origin", str(m.row_origin())}, {"col_origin", str(m.col_origin())}, {"entries", rows}};
}

Json to_json(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(str(x));
    return a;
}

}  // namespace pcs
