#include "postcrit/bratteli.hpp"
#include "postcrit/errors.hpp"
#include "postcrit/interval.hpp"
#include "postcrit/json_io.hpp"
#include "postcrit/kneading.hpp"
#include "postcrit/odometer.hpp"
#include "postcrit/simplex.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace pcs;

namespace {

struct Config {
    std::string spec_path, map_name, table, word, tree_path, family = "logistic", param, x0, target;
    unsigned deep = 0;
    std::uint64_t depth = 3, horizon = 20, level = 1, r = 1, n = 0, k = 0, window = 0, to = 0, seed = 1;
    unsigned prec = 256;
    std::string format = "json";
    bool truncated = false, strict = false;
};

std::vector<std::uint64_t> parse_list(const std::string& s)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            out.push_back(to_u64(parse_bigint(item), "list entry"));
        } catch (const DomainError& e) {
            throw ParseError(e.what());
        }
    }
    if (out.empty())
        throw ParseError("empty list");
    return out;
}

bool is_builtin_map_name(const std::string& name)
{
    return name == "fibonacci" || name == "doubling" || name == "zero";
}

ResonantSpec spec_of(const Config& c)
{
    std::optional<ResonantSpec> s;
    if (!c.spec_path.empty())
        s = load_spec(c.spec_path);
    else if (!c.map_name.empty() && !is_builtin_map_name(c.map_name))
        s = builtin_spec(c.map_name);
    else
        throw DomainError("this command needs a resonant spec (--spec FILE or --map finite:M|countable|cantor)");
    if (c.deep)
        s = s->with_level_cap(c.deep);
    return *s;
}

KneadingMap map_of(const Config& c)
{
    if (!c.table.empty())
        return KneadingMap::table(parse_list(c.table));
    if (!c.map_name.empty() && is_builtin_map_name(c.map_name))
        return builtin_map(c.map_name);
    return KneadingMap::resonant(spec_of(c));
}

Json verdict_json(const AdmissibilityReport& a)
{
    Json j = {{"verdict", to_string(a.verdict)}};
    if (a.verdict != Verdict::Admissible) {
        j["witness"] = std::to_string(a.witness);
        j["reason"] = a.reason;
    }
    return j;
}

Json point_json(const OdometerPoint& x)
{
    Json j = {{"word", x.word()}, {"kind", x.finite_support() ? "finite" : "truncated"}};
    if (x.finite_support())
        j["sigma"] = str(x.sigma());
    return j;
}

Json real_json(const Real& x) { return {{"hex", x.hex()}, {"decimal", x.decimal(30)}}; }

// ---------------------------------------------------------------- kneading

Json knead(const std::string& sub, const Config& c)
{
    if (sub == "times") {
        KneadingMap Q = map_of(c);
        CuttingTimes ct = cutting_times(Q, c.horizon);
        Json S = Json::array(), q = Json::array();
        for (std::uint64_t k = 0; k <= c.horizon; ++k) {
            S.push_back(str(ct.S[k]));
            q.push_back(std::to_string(Q.at(k)));
        }
        return {{"map", Q.name()}, {"Q", q}, {"S", S}};
    }
    if (sub == "admissible") {
        KneadingMap Q = map_of(c);
        Json j = verdict_json(is_admissible(Q, c.horizon, c.window));
        j["map"] = Q.name();
        j["horizon"] = std::to_string(c.horizon);
        return j;
    }
    if (sub == "product") {
        ResonantSpec s = spec_of(c);
        Json p = Json::array();
        for (const auto& v : divergence_partials(s, c.depth))
            p.push_back(str(v));
        return {{"spec", s.describe()}, {"partials", p}};
    }
    if (sub == "norma") {
        ResonantSpec s = spec_of(c);
        Json a = Json::array();
        for (std::uint64_t r = 1; r <= c.depth; ++r)
            a.push_back({{"r", std::to_string(r)}, {"holds", check_norma(s, r)}});
        return {{"spec", s.describe()}, {"checks", a}};
    }
    throw ParseError("unknown knead command '" + sub + "'");
}

// ---------------------------------------------------------------- odometer

Json odometer(const std::string& sub, const Config& c)
{
    KneadingMap Q = map_of(c);
    auto kind = c.truncated ? OdometerPoint::Kind::Truncated : OdometerPoint::Kind::FiniteSupport;
    if (sub == "expand")
        return point_json(expand(BigInt(std::to_string(c.n)), Q));
    if (sub == "member") {
        std::vector<std::uint8_t> bits;
        for (char ch : c.word) {
            if (ch != '0' && ch != '1')
                throw ParseError("words are strings of 0 and 1");
            bits.push_back(ch == '1');
        }
        return {{"word", c.word}, {"member", membership(bits, Q)}};
    }
    OdometerPoint x = OdometerPoint::parse(Q, c.word, kind);
    if (sub == "succ")
        return point_json(successor(x));
    if (sub == "pred")
        return point_json(predecessor(x));
    if (sub == "classical")
        return {{"k", std::to_string(c.k)}, {"residue", str(classical_projection(x, c.k))},
                {"modulus", str(Q.S(c.k))}};
    throw ParseError("unknown odometer command '" + sub + "'");
}

// ---------------------------------------------------------------- bratteli

Json bratteli(const std::string& sub, const Config& c)
{
    BratteliDiagram d(map_of(c));
    BigInt j(std::to_string(c.level));
    if (sub == "stage") {
        BratteliStage st = d.stage(j);
        Json groups = Json::array();
        for (const auto& g : st.edges) {
            const char* kind = g.kind == EdgeGroup::Kind::Front ? "front"
                             : g.kind == EdgeGroup::Kind::Fan   ? "fan"
                                                                : "identity";
            groups.push_back({{"kind", kind}, {"targets", to_json(g.targets)}});
        }
        Json out = {{"level", str(j)},
                    {"prev", to_json(st.prev)},
                    {"cur", to_json(st.cur)},
                    {"edge_groups", groups},
                    {"heights_prev", to_json(st.heights_prev)},
                    {"heights_cur", to_json(st.heights_cur)}};
        if (st.cur.size() + st.prev.size() <= 2000) {
            Json edges = Json::array();
            for (const auto& e : st.edge_list())
                edges.push_back({str(e.source), str(e.target), std::to_string(e.rank)});
            out["edges"] = edges;
        }
        return out;
    }
    if (sub == "heights") {
        LevelState L = d.level(j);
        return {{"level", str(j)}, {"vertices", to_json(L.v)}, {"heights", to_json(L.s)}};
    }
    if (sub == "matrix")
        return {{"level", str(j)}, {"N", to_json(d.incidence(j))}, {"M", to_json(d.transition(j))}};
    if (sub == "product-rank") {
        RankProduct rp = product_and_rank(d, c.r);
        return {{"r", std::to_string(c.r)},
                {"rank", str(rp.rank)},
                {"expected_rank", str(rp.expected_rank)},
                {"matches_closed_form", rp.product == rp.closed_form},
                {"product", to_json(rp.product)}};
    }
    throw ParseError("unknown bratteli command '" + sub + "'");
}

// ---------------------------------------------------------------- simplex

Json simplex(const std::string& sub, const Config& c)
{
    if (sub == "realize") {
        if (c.tree_path.empty())
            throw ParseError("realize needs --tree FILE");
        PartitionTree t = load_tree(c.tree_path);
        RealizedSpace rs = realize_space(t, c.depth);
        Json b = Json::array(), r = Json::array();
        for (auto v : rs.b)
            b.push_back(std::to_string(v));
        for (auto v : rs.r_of)
            r.push_back(std::to_string(v));
        return {{"b", b}, {"r", r}, {"consistent", rs.consistent}};
    }
    ResonantSpec spec = spec_of(c);
    if (sub == "threads") {
        Json a = Json::array();
        for (const auto& t : extreme_threads(spec, c.depth)) {
            Json th = Json::array();
            for (auto v : t)
                th.push_back(std::to_string(v));
            a.push_back(th);
        }
        return {{"depth", std::to_string(c.depth)}, {"count", std::to_string(a.size())}, {"threads", a}};
    }
    KneadingMap Q = KneadingMap::resonant(spec);
    if (sub == "dets") {
        Json dets = Json::array(), detail = Json::array();
        for (std::uint64_t r = 1; r <= c.depth; ++r) {
            DetReport d = det_a(Q, r);
            dets.push_back(str(d.matrix_det));
            detail.push_back({{"r", std::to_string(r)},
                              {"singleton", d.singleton},
                              {"matrix_det", str(d.matrix_det)},
                              {"weight", str(d.weight)},
                              {"one_minus", str(d.one_minus)}});
        }
        return {{"spec", spec.describe()}, {"dets", dets}, {"detail", detail}};
    }
    if (sub == "intertwine") {
        BratteliDiagram d(Q);
        Json a = Json::array();
        for (std::uint64_t r = 0; r <= c.depth; ++r)
            a.push_back({{"r", std::to_string(r)}, {"equal", intertwine_check(d, r).equal}});
        return {{"spec", spec.describe()}, {"checks", a}};
    }
    if (sub == "certify") {
        std::uint64_t D = c.to ? c.to : c.depth + 2;
        Certificate cert = separation_certificate(Q, c.depth, D);
        Json j = {{"R", std::to_string(c.depth)}, {"D", std::to_string(D)}, {"vacuous", cert.vacuous}};
        if (!cert.vacuous) {
            j["sufficient"] = cert.sufficient;
            j["separation"] = str(cert.separation);
            if (cert.sufficient || cert.tail != 0) {
                j["tail"] = str(cert.tail);
                j["delta"] = str(cert.delta);
            }
        }
        if (!cert.note.empty())
            j["note"] = cert.note;
        return j;
    }
    if (sub == "contract") {
        std::mt19937_64 rng(c.seed);
        std::uint64_t r1 = c.depth, r2 = c.to ? c.to : c.depth + 1;
        auto v = random_simplex_point(rng, spec.top(r2) + 1);
        ContractionReport rep = contraction_bound(Q, c.r, r1, r2, v);
        return {{"vector", to_json(v)}, {"dist", str(rep.dist)}, {"dist_prime", str(rep.dist_prime)},
                {"bound", str(rep.bound)}, {"holds", rep.holds}};
    }
    throw ParseError("unknown simplex command '" + sub + "'");
}

// ---------------------------------------------------------------- interval

Json interval(const std::string& sub, const Config& c)
{
    Family fam = parse_family(c.family);
    DnOptions dn;
    dn.strict = c.strict;
    auto map_at = [&]() {
        if (c.param.empty())
            throw ParseError("this command needs --param");
        return UnimodalMap(fam, Real::parse(c.param, c.prec));
    };
    Json j = {{"family", to_string(fam)}, {"prec", std::to_string(c.prec)}};
    if (c.prec < 64)
        j["low_precision"] = true;
    if (sub == "knead") {
        ExtractedKneading ek = kneading_from_map(map_at(), c.horizon, dn);
        Json Q = Json::array(), S = Json::array();
        for (std::size_t k = 0; k < ek.Q.size(); ++k) {
            Q.push_back(std::to_string(ek.Q[k]));
            S.push_back(std::to_string(ek.S[k]));
        }
        j["Q"] = Q;
        j["S"] = S;
        j["fragile"] = std::to_string(ek.fragile_count);
        j["degenerate"] = ek.degenerate;
        j["admissible"] = verdict_json(ek.admissible);
        return j;
    }
    if (sub == "find") {
        std::vector<std::uint64_t> target;
        if (!c.table.empty()) {
            target = parse_list(c.table);
        } else {
            KneadingMap Q = map_of(c);
            for (std::uint64_t k = 0; k <= c.horizon; ++k)
                target.push_back(Q.at(k));
        }
        SearchOptions so;
        so.prec = c.prec;
        so.dn = dn;
        ParameterResult pr = find_parameter(fam, target, so);
        j["param"] = real_json(pr.param);
        j["bracket"] = {real_json(pr.lo), real_json(pr.hi)};
        j["steps"] = std::to_string(pr.steps);
        j["fragile"] = std::to_string(pr.check.fragile_count);
        return j;
    }
    if (sub == "project") {
        KneadingMap Q = map_of(c);
        auto kind = c.truncated ? OdometerPoint::Kind::Truncated : OdometerPoint::Kind::FiniteSupport;
        Projection p = project_point(map_at(), OdometerPoint::parse(Q, c.word, kind), dn);
        j["point"] = p.point;
        j["lo"] = real_json(p.lo);
        j["hi"] = real_json(p.hi);
        Json steps = Json::array();
        for (const auto& s : p.steps)
            steps.push_back({{"n", std::to_string(s.n)}, {"sigma", str(s.sigma)}, {"lo", s.lo.hex()}, {"hi", s.hi.hex()}});
        j["steps"] = steps;
        return j;
    }
    if (sub == "lyapunov") {
        UnimodalMap f = map_at();
        Real x0 = c.x0.empty() ? f(f.critical()) : Real::parse(c.x0, c.prec);
        LyapunovResult lr = lyapunov(f, x0, c.n ? c.n : 100000);
        j["x0"] = real_json(x0);
        j["hit_critical"] = lr.hit_critical;
        if (!lr.hit_critical) {
            std::ostringstream os;
            os.precision(17);
            os << lr.average;
            j["average"] = os.str();
            Json tr = Json::array();
            for (const auto& [n, v] : lr.trace) {
                std::ostringstream o;
                o.precision(17);
                o << v;
                tr.push_back({std::to_string(n), o.str()});
            }
            j["trace"] = tr;
        }
        return j;
    }
    throw ParseError("unknown interval command '" + sub + "'");
}

void print_text(const Json& j, const std::string& prefix, std::ostream& os)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            print_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); })) {
        os << prefix << ":";
        for (const auto& e : j)
            os << " " << (e.is_string() ? e.get<std::string>() : e.dump());
        os << "\n";
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            print_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kneading maps, odometers, Bratteli diagrams and measure simplices"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--spec", c.spec_path, "resonant spec JSON file")->check(CLI::ExistingFile);
        s->add_option("--map", c.map_name, "builtin: fibonacci, doubling, zero, finite:M, countable, cantor");
        s->add_option("--table", c.table, "comma-separated kneading table Q(0),Q(1),...");
        s->add_option("--deep", c.deep, "materialize tower levels up to this index");
        s->add_option("--depth", c.depth, "depth R");
        s->add_option("--horizon", c.horizon, "horizon K");
        s->add_option("--level", c.level, "level j");
        s->add_option("--r", c.r, "level r");
        s->add_option("--to", c.to, "second depth (certificate depth, contraction r'')");
        s->add_option("--window", c.window, "comparison window for admissibility");
        s->add_option("--word", c.word, "odometer word, lowest index first");
        s->add_flag("--truncated", c.truncated, "the word is a window of an infinite point");
        s->add_option("--n", c.n, "integer argument / orbit length");
        s->add_option("--k", c.k, "index k with Q(k+1) = k");
        s->add_option("--tree", c.tree_path, "partition tree JSON file")->check(CLI::ExistingFile);
        s->add_option("--family", c.family, "logistic or tent");
        s->add_option("--param", c.param, "map parameter (decimal or hex float)");
        s->add_option("--x0", c.x0, "starting point");
        s->add_option("--prec", c.prec, "working precision in bits")->check(CLI::Range(53u, 1u << 20));
        s->add_flag("--strict", c.strict, "orbits landing on a fixed point are errors");
        s->add_option("--seed", c.seed, "seed for sampled vectors");
        s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };

    const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
        {"knead", {"times", "admissible", "product", "norma"}},
        {"odometer", {"expand", "succ", "pred", "member", "classical"}},
        {"bratteli", {"stage", "heights", "matrix", "product-rank"}},
        {"simplex", {"dets", "intertwine", "threads", "realize", "certify", "contract"}},
        {"interval", {"knead", "find", "project", "lyapunov"}},
    };
    std::string group, sub;
    for (const auto& [g, subs] : groups) {
        CLI::App* ga = app.add_subcommand(g, g + " commands");
        ga->require_subcommand(1);
        for (const auto& s : subs) {
            CLI::App* sa = ga->add_subcommand(s);
            add_common(sa);
            sa->callback([&group, &sub, g = g, s = s]() {
                group = g;
                sub = s;
            });
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        Json out;
        if (group == "knead")
            out = knead(sub, c);
        else if (group == "odometer")
            out = odometer(sub, c);
        else if (group == "bratteli")
            out = bratteli(sub, c);
        else if (group == "simplex")
            out = simplex(sub, c);
        else
            out = interval(sub, c);
        if (c.format == "text")
            print_text(out, "", std::cout);
        else
            std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const ParseError& e) {
        std::cout << Json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    } catch (const Error& e) {
        std::cout << Json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << Json{{"error", "internal"}, {"message", e.what()}}.dump(2) << "\n";
        return 3;
    }
}
