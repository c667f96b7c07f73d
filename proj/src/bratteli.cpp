#include "postcrit/bratteli.hpp"

#include "postcrit/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcs {

namespace {

BigInt height_at(const PiecewiseVector& s, const BigInt& v)
{
    Rational r = s.at(v);
    if (r.get_den() != 1 || r <= 0)
        throw std::logic_error("height is not a positive integer");
    return r.get_num();
}

}  // namespace

std::vector<Edge> BratteliStage::edge_list(std::size_t limit) const
{
    std::vector<Edge> out;
    BigInt jm1 = level - 1;
    bool pair = false;
    for (const auto& g : edges)
        if (g.kind == EdgeGroup::Kind::Identity && g.targets.contains(level))
            pair = true;
    for (const auto& g : edges) {
        if (g.targets.size() + out.size() > limit)
            throw HorizonError("stage has too many edges to list");
        for (BigInt k = g.targets.lo; k <= g.targets.hi; ++k) {
            if (g.kind == EdgeGroup::Kind::Identity)
                out.push_back({k, k, (k == level && pair) ? 1 : 0});
            else
                out.push_back({jm1, k, 0});
        }
    }
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return a.target != b.target ? a.target < b.target : a.rank < b.rank;
    });
    return out;
}

BratteliDiagram::BratteliDiagram(KneadingMap Q) : Q_(std::move(Q))
{
    if (Q_.kind() == KneadingMap::Kind::Table)
        throw HorizonError("the diagram needs the whole kneading map; tables only know a prefix");
    if (!Q_.diverging() || !Q_.nondecreasing())
        throw DomainError("the diagram needs a non-decreasing diverging kneading map");
    if (Q_.at(1) != 0)
        throw DomainError("Q(1) must be 0");
}

Span BratteliDiagram::vertices(const BigInt& j) const
{
    if (j < 0)
        throw DomainError("negative level");
    if (j == 0)
        return {0, 0};
    if (j == 1)
        return {1, Q_.last_at_most(0)};
    return {j, Q_.last_at_most(j - 2) + 1};
}

bool BratteliDiagram::is_event(const BigInt& j) const
{
    if (j <= 2)
        return true;
    return Q_.next_image_at_least(j - 2) == j - 2;
}

BigInt BratteliDiagram::next_event_after(const BigInt& j) const
{
    if (j <= 0)
        return 1;
    return Q_.next_image_at_least(j - 1) + 2;
}

LevelState BratteliDiagram::step(const LevelState& L) const
{
    BigInt j = L.j + 1;
    const BigInt& hp = L.v.hi;
    Span cur = vertices(j);
    BigInt front = height_at(L.s, j - 1);
    if (j <= hp)
        front += height_at(L.s, j);
    std::vector<PiecewiseVector::Piece> raw{{j, j, Rational(front)}};
    for (const auto& p : L.s.restricted(j + 1, std::min(hp, cur.hi)).pieces())
        raw.push_back(p);
    BigInt fan_lo = std::max(BigInt(j + 1), BigInt(hp + 1));
    if (fan_lo <= cur.hi)
        raw.push_back({fan_lo, cur.hi, Rational(height_at(L.s, j - 1))});
    return {j, cur, PiecewiseVector::sum(raw)};
}

// Levels a = L.j+1 .. b all keep the same top vertex and contain their
// front vertex already, so s_b(b) = s_{a-1}(a-1) + sum_{t=a..b} s_{a-1}(t).
LevelState BratteliDiagram::run(const LevelState& L, const BigInt& b) const
{
    BigInt a = L.j + 1;
    const BigInt& H = L.v.hi;
    if (b > H)
        throw std::logic_error("plain run past the top vertex");
    Rational front = L.s.at(a - 1) + L.s.restricted(a, b).total();
    std::vector<PiecewiseVector::Piece> raw{{b, b, front}};
    for (const auto& p : L.s.restricted(b + 1, H).pieces())
        raw.push_back(p);
    return {b, {b, H}, PiecewiseVector::sum(raw)};
}

LevelState BratteliDiagram::advance(LevelState L, const BigInt& J) const
{
    while (L.j < J) {
        BigInt e = next_event_after(L.j);
        if (e == L.j + 1)
            L = step(L);
        else
            L = run(L, std::min(BigInt(e - 1), J));
    }
    return L;
}

LevelState BratteliDiagram::level(const BigInt& j) const
{
    LevelState root{0, {0, 0}, PiecewiseVector::unit(0)};
    return advance(root, j);
}

PiecewiseVector BratteliDiagram::heights(const BigInt& j) const { return level(j).s; }

BratteliStage BratteliDiagram::stage(const BigInt& j) const
{
    if (j < 1)
        throw DomainError("stages start at level 1");
    LevelState prev = level(j - 1);
    LevelState cur = step(prev);
    BratteliStage st;
    st.level = j;
    st.prev = prev.v;
    st.cur = cur.v;
    st.heights_prev = prev.s;
    st.heights_cur = cur.s;
    st.edges.push_back({EdgeGroup::Kind::Front, {j, j}});
    BigInt fan_lo = std::max(BigInt(j + 1), BigInt(prev.v.hi + 1));
    if (fan_lo <= cur.v.hi)
        st.edges.push_back({EdgeGroup::Kind::Fan, {fan_lo, cur.v.hi}});
    Span id{j, std::min(prev.v.hi, cur.v.hi)};
    if (!id.empty())
        st.edges.push_back({EdgeGroup::Kind::Identity, id});
    return st;
}

// Entry (k, l) is s_{j-1}(k) N_j(k, l) / s_j(l) (or just N_j(k, l)).
BlockMatrix BratteliDiagram::step_matrix(const LevelState& prev, const LevelState& cur, bool stochastic) const
{
    const BigInt& j = cur.j;
    const BigInt& hp = prev.v.hi;
    std::vector<BlockMatrix::Block> blocks;

    Rational denom = stochastic ? cur.s.at(j) : Rational(1);
    std::vector<PiecewiseVector::Piece> col{
        {j - 1, j - 1, (stochastic ? prev.s.at(j - 1) : Rational(1)) / denom}};
    if (j <= hp)
        col.push_back({j, j, (stochastic ? prev.s.at(j) : Rational(1)) / denom});
    blocks.push_back({j, j, false, PiecewiseVector::sum(col)});

    BigInt id_hi = std::min(hp, cur.v.hi);
    if (j + 1 <= id_hi) {
        if (stochastic) {
            PiecewiseVector ratio_check = prev.s.restricted(j + 1, id_hi) - cur.s.restricted(j + 1, id_hi);
            if (!ratio_check.is_zero())
                throw std::logic_error("identity edges changed a height");
        }
        blocks.push_back({j + 1, id_hi, true, {}});
    }
    BigInt fan_lo = std::max(BigInt(j + 1), BigInt(hp + 1));
    if (fan_lo <= cur.v.hi) {
        for (const auto& p : cur.s.restricted(fan_lo, cur.v.hi).pieces()) {
            Rational w = stochastic ? prev.s.at(j - 1) / p.value : Rational(1);
            blocks.push_back({p.lo, p.hi, false, PiecewiseVector::constant(j - 1, j - 1, w)});
        }
    }
    return BlockMatrix(prev.v, cur.v, std::move(blocks));
}

BlockMatrix BratteliDiagram::run_matrix(const LevelState& prev, const LevelState& cur) const
{
    const BigInt& b = cur.j;
    BigInt a = prev.j + 1;
    Rational sb = cur.s.at(b);
    std::vector<PiecewiseVector::Piece> col{{a - 1, a - 1, prev.s.at(a - 1)}};
    for (const auto& p : prev.s.restricted(a, b).pieces())
        col.push_back(p);
    std::vector<BlockMatrix::Block> blocks{{b, b, false, PiecewiseVector::sum(col).scaled(1 / sb)}};
    if (b + 1 <= cur.v.hi)
        blocks.push_back({b + 1, cur.v.hi, true, {}});
    return BlockMatrix(prev.v, cur.v, std::move(blocks));
}

BlockMatrix BratteliDiagram::incidence(const BigInt& j) const
{
    LevelState prev = level(j - 1);
    return step_matrix(prev, step(prev), false);
}

BlockMatrix BratteliDiagram::transition(const BigInt& j) const
{
    if (j < 1)
        throw DomainError("transition matrices start at level 1");
    LevelState prev = level(j - 1);
    return step_matrix(prev, step(prev), true);
}

BlockMatrix BratteliDiagram::product(const BigInt& from, const BigInt& to) const
{
    if (from < 1 || to < from)
        throw DomainError("product needs 1 <= from <= to");
    LevelState L = level(from - 1);
    BlockMatrix P = BlockMatrix::identity(L.v);
    while (L.j < to) {
        BigInt e = next_event_after(L.j);
        if (e == L.j + 1) {
            LevelState nx = step(L);
            P = P * step_matrix(L, nx, true);
            L = std::move(nx);
        } else {
            LevelState nx = run(L, std::min(BigInt(e - 1), to));
            P = P * run_matrix(L, nx);
            L = std::move(nx);
        }
    }
    return P;
}

BlockMatrix BratteliDiagram::product_stepwise(const BigInt& from, const BigInt& to) const
{
    if (from < 1 || to < from)
        throw DomainError("product needs 1 <= from <= to");
    LevelState L = level(from - 1);
    BlockMatrix P = BlockMatrix::identity(L.v);
    while (L.j < to) {
        LevelState nx = step(L);
        P = P * step_matrix(L, nx, true);
        L = std::move(nx);
    }
    return P;
}

bool BratteliDiagram::is_path(const std::vector<BigInt>& path) const
{
    if (path.empty() || path[0] != 0)
        return false;
    Span prev{0, 0};
    for (std::size_t i = 1; i < path.size(); ++i) {
        BigInt j(std::to_string(i));
        Span cur = vertices(j);
        const BigInt &u = path[i - 1], &v = path[i];
        if (!cur.contains(v))
            return false;
        bool identity = (u == v) && prev.contains(v);
        bool from_front = (u == j - 1) && (v == j || !prev.contains(v));
        if (!identity && !from_front)
            return false;
        prev = cur;
    }
    return true;
}

std::vector<BigInt> BratteliDiagram::minimal_path(const BigInt& j, const BigInt& v) const
{
    std::uint64_t n = to_u64(j, "path length");
    if (!vertices(j).contains(v))
        throw DomainError("vertex " + str(v) + " is not at level " + str(j));
    std::vector<BigInt> path(n + 1);
    path[n] = v;
    for (std::uint64_t m = n; m >= 1; --m) {
        BigInt mm(std::to_string(m));
        const BigInt& k = path[m];
        // the smallest edge into k at level m
        if (k == mm || !vertices(mm - 1).contains(k))
            path[m - 1] = mm - 1;
        else
            path[m - 1] = k;
    }
    return path;
}

std::vector<BigInt> BratteliDiagram::vershik_successor(const std::vector<BigInt>& path) const
{
    if (!is_path(path))
        throw DomainError("not a path from the root");
    for (std::size_t i = 1; i < path.size(); ++i) {
        BigInt j(std::to_string(i));
        // Only the front edge j-1 -> j can be non-maximal, when j -> j exists.
        if (path[i] == j && path[i - 1] == j - 1 && vertices(j - 1).contains(j)) {
            std::vector<BigInt> head = minimal_path(j - 1, j);
            std::vector<BigInt> out = head;
            out.insert(out.end(), path.begin() + i, path.end());
            return out;
        }
    }
    throw UnresolvedError("every edge of the prefix is maximal; the successor needs a longer prefix");
}

}  // namespace pcs

namespace pcs {

namespace {

const ResonantSpec& resonant_of(const BratteliDiagram& d)
{
    const ResonantSpec* sp = d.map().spec();
    if (!sp)
        throw DomainError("this needs a resonant kneading map");
    return *sp;
}

// (1/S_n)(S_{q_r} e_{q_r+1} + sum_{t=q_r+1}^{n} S_{Q(t)} e_{t+1})
PiecewiseVector v_of(const KneadingMap& Q, const BigInt& qr, const BigInt& n)
{
    std::vector<PiecewiseVector::Piece> raw{{qr + 1, qr + 1, Rational(Q.S(qr))}};
    BigInt t = qr + 1;
    while (t <= n) {
        BigInt v = Q.value(t);
        BigInt hi = std::min(Q.last_at_most(v), n);
        raw.push_back({t + 1, hi + 1, Rational(Q.S(v))});
        t = hi + 1;
    }
    return PiecewiseVector::sum(raw).scaled(Rational(1) / Rational(Q.S(n)));
}

}  // namespace

BlockMatrix rank_product_closed_form(const BratteliDiagram& d, std::uint64_t r)
{
    const ResonantSpec& sp = resonant_of(d);
    const KneadingMap& Q = d.map();
    if (r < 1)
        throw DomainError("the product lemma needs r >= 1");
    BigInt qr = sp.q(r);
    BigInt kr = sp.block_start(r);
    if (kr < qr + 2)
        throw DomainError("empty product: b(r) = r");
    Span rows = d.vertices(qr + 1), cols = d.vertices(kr);
    std::vector<BlockMatrix::Block> blocks{{kr, kr, false, v_of(Q, qr, kr - 1)}};
    for (std::uint64_t s = r; s < sp.b(r); ++s) {
        BigInt lo = sp.block_start(s) + 1, hi = sp.block_start(s + 1);
        blocks.push_back({lo, hi, false, v_of(Q, qr, sp.q(s))});
    }
    return BlockMatrix(rows, cols, std::move(blocks));
}

RankProduct product_and_rank(const BratteliDiagram& d, std::uint64_t r)
{
    const ResonantSpec& sp = resonant_of(d);
    BigInt kr = sp.block_start(r);
    BlockMatrix p = d.product(sp.q(r) + 2, kr);
    BigInt rk = p.rank();
    return {p, rank_product_closed_form(d, r), rk, BigInt(std::to_string(sp.b(r) - r + 1))};
}

}  // namespace pcs
