#include "postcrit/simplex.hpp"

#include "postcrit/errors.hpp"

#include <algorithm>
#include <map>

namespace pcs {

namespace {

const ResonantSpec& resonant_of(const KneadingMap& Q)
{
    const ResonantSpec* sp = Q.spec();
    if (!sp)
        throw DomainError("this needs a resonant kneading map");
    return *sp;
}

std::size_t width(const ResonantSpec& spec, std::uint64_t r) { return spec.top(r) + 1; }

BigInt big(std::uint64_t v) { return BigInt(std::to_string(v)); }

}  // namespace

std::uint64_t xi_index(const ResonantSpec& spec, std::uint64_t r, std::uint64_t i)
{
    std::uint64_t n = spec.top(r);
    if (i > spec.top(r + 1))
        throw DomainError("index outside I_{r+1}");
    return i < n ? i + 1 : 0;
}

RationalMatrix xi_map(const ResonantSpec& spec, std::uint64_t r)
{
    RationalMatrix m(width(spec, r), width(spec, r + 1));
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(xi_index(spec, r, j), j) = 1;
    return m;
}

RationalMatrix theta_map(const ResonantSpec& spec, std::uint64_t r)
{
    std::uint64_t n = spec.top(r);
    RationalMatrix m(width(spec, r), width(spec, r + 1));
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(std::min<std::uint64_t>(j, n), j) = 1;
    return m;
}

RationalMatrix a_prime(const ResonantSpec& spec, std::uint64_t r)
{
    std::size_t w = width(spec, r);
    RationalMatrix m(w, w);
    for (std::size_t j = 0; j < w; ++j)
        m((j + 1) % w, j) = 1;
    return m;
}

RationalMatrix a_matrix(const KneadingMap& Q, std::uint64_t r)
{
    const ResonantSpec& spec = resonant_of(Q);
    std::size_t w = width(spec, r);
    RationalMatrix m(w, w);
    if (w == 1) {
        m(0, 0) = 1;
        return m;
    }
    BigInt q0 = spec.q(r), q1 = spec.q(r + 1);
    BigInt s1 = Q.S(q1);
    m(0, 0) = ratio(Q.S(q0), s1);
    m(1, 0) = ratio((q1 - q0) * Q.S(Q.value(q1)), s1);
    for (std::size_t s = 1; s + 1 < w; ++s)
        m(s + 1, s) = 1;
    m(0, w - 1) = 1;
    return m;
}

BlockMatrix pi_map(const BratteliDiagram& d, std::uint64_t r)
{
    const ResonantSpec& spec = resonant_of(d.map());
    BigInt qr = spec.q(r);
    Span cols = d.vertices(qr + 1);
    std::uint64_t n = spec.top(r);
    Span rows{0, big(n)};
    if (r == 0)
        return BlockMatrix(rows, cols, {{cols.lo, cols.hi, false, PiecewiseVector::unit(0)}});
    if (cols.hi != spec.block_start(r))
        throw std::logic_error("V_{q_r+1} does not end at k_r");
    std::vector<BlockMatrix::Block> blocks{{qr + 1, qr + 1, false, PiecewiseVector::unit(0)}};
    for (std::uint64_t s = 1; s <= n; ++s)
        blocks.push_back({spec.q(r + s - 1) + 2, spec.q(r + s) + 1, false, PiecewiseVector::unit(big(s))});
    return BlockMatrix(rows, cols, std::move(blocks));
}

DetReport det_a(const KneadingMap& Q, std::uint64_t r)
{
    const ResonantSpec& spec = resonant_of(Q);
    DetReport rep;
    rep.r = r;
    rep.singleton = width(spec, r) == 1;
    rep.matrix_det = a_matrix(Q, r).determinant();
    BigInt q0 = spec.q(r), q1 = spec.q(r + 1);
    BigInt s1 = Q.S(q1);
    rep.weight = ratio((q1 - q0) * Q.S(Q.value(q1)), s1);
    rep.one_minus = 1 - ratio(Q.S(q0), s1);
    return rep;
}

Rational defect(const KneadingMap& Q, std::uint64_t r)
{
    const ResonantSpec& spec = resonant_of(Q);
    if (width(spec, r) == 1)
        return 0;
    return ratio(Q.S(spec.q(r)), Q.S(spec.q(r + 1)));
}

IntertwineReport intertwine_check(const BratteliDiagram& d, std::uint64_t r)
{
    const ResonantSpec& spec = resonant_of(d.map());
    BigInt from = spec.q(r) + 2, to = spec.q(r + 1) + 1;
    BlockMatrix lhs = pi_map(d, r) * d.product(from, to);
    BlockMatrix at = BlockMatrix::from_dense(a_matrix(d.map(), r) * theta_map(spec, r));
    BlockMatrix rhs = at * pi_map(d, r + 1);
    bool eq = lhs == rhs;
    return {r, std::move(lhs), std::move(rhs), eq};
}

std::vector<std::vector<std::uint64_t>> extreme_threads(const ResonantSpec& spec, std::uint64_t R)
{
    std::vector<std::vector<std::uint64_t>> out;
    for (std::uint64_t top = 0; top <= spec.top(R); ++top) {
        std::vector<std::uint64_t> t(R + 1);
        t[R] = top;
        for (std::uint64_t r = R; r-- > 0;)
            t[r] = xi_index(spec, r, t[r + 1]);
        out.push_back(std::move(t));
    }
    return out;
}

RationalMatrix a_theta_chain(const KneadingMap& Q, std::uint64_t r, std::uint64_t s)
{
    const ResonantSpec& spec = resonant_of(Q);
    RationalMatrix m = RationalMatrix::identity(width(spec, r));
    for (std::uint64_t t = r; t < s; ++t)
        m = m * (a_matrix(Q, t) * theta_map(spec, t));
    return m;
}

RationalMatrix a_prime_theta_chain(const ResonantSpec& spec, std::uint64_t r, std::uint64_t s)
{
    RationalMatrix m = RationalMatrix::identity(width(spec, r));
    for (std::uint64_t t = r; t < s; ++t)
        m = m * (a_prime(spec, t) * theta_map(spec, t));
    return m;
}

ContractionReport contraction_bound(const KneadingMap& Q, std::uint64_t r, std::uint64_t r1, std::uint64_t r2,
                                    const std::vector<Rational>& v)
{
    const ResonantSpec& spec = resonant_of(Q);
    if (!(r <= r1 && r1 <= r2))
        throw DomainError("contraction needs r <= r' <= r''");
    if (v.size() != width(spec, r2))
        throw DomainError("test vector does not live on I_{r''}");
    RationalMatrix a_lo = a_theta_chain(Q, r, r1), a_hi = a_theta_chain(Q, r1, r2);
    RationalMatrix p_lo = a_prime_theta_chain(spec, r, r1), p_hi = a_prime_theta_chain(spec, r1, r2);
    ContractionReport rep;
    rep.chain_a = a_lo.apply(a_hi.apply(v));
    rep.mixed = a_lo.apply(p_hi.apply(v));
    rep.chain_a_prime = p_lo.apply(p_hi.apply(v));
    rep.mixed_prime = p_lo.apply(a_hi.apply(v));
    rep.dist = l1_distance(rep.mixed, rep.chain_a);
    rep.dist_prime = l1_distance(rep.mixed_prime, rep.chain_a_prime);
    rep.bound = 0;
    for (std::uint64_t s = r1; s < r2; ++s)
        rep.bound += 2 * defect(Q, s);
    rep.holds = rep.dist <= rep.bound && rep.dist_prime <= rep.bound;
    return rep;
}

// For the tower q_s = 2^(3^s) - 2 the cutting times obey
// S_{q_s} <= prod_{t<s} (1 + q_{t+1} - q_t) < 2^((3^(s+1) - 3)/2) and
// S_{q_{s+1}} >= q_{s+1} - q_s >= 2^(3^(s+1) - 1), so each term is below
// 2^(-3^s) and the tail from L on is below 2 * 2^(-3^L).
std::optional<Rational> tail_bound(const KneadingMap& Q, std::uint64_t D)
{
    const ResonantSpec& spec = resonant_of(Q);
    Rational sum = 0;
    std::uint64_t s = D;
    for (;; ++s) {
        try {
            spec.q(s + 1);
        } catch (const HorizonError&) {
            break;
        }
        sum += ratio(Q.S(spec.q(s)), Q.S(spec.q(s + 1)));
    }
    if (!spec.levels().is_tower())
        return std::nullopt;
    BigInt three = 1;
    for (std::uint64_t i = 0; i < s; ++i)
        three *= 3;
    if (three > BigInt(1) << 24)
        throw HorizonError("tail majorant exponent too large");
    sum += Rational(BigInt(2), pow2(three.get_ui()));
    sum.canonicalize();
    return sum;
}

Certificate separation_certificate(const KneadingMap& Q, std::uint64_t R, std::uint64_t D)
{
    const ResonantSpec& spec = resonant_of(Q);
    if (D < R)
        throw DomainError("certificate depth must be at least R");
    Certificate c;
    if (spec.top(R) == 0) {
        c.vacuous = true;
        c.note = "single thread at depth R";
        return c;
    }
    RationalMatrix P = a_theta_chain(Q, R, D);
    std::vector<std::uint64_t> thread(width(spec, D));
    for (std::uint64_t i = 0; i < thread.size(); ++i) {
        std::uint64_t t = i;
        for (std::uint64_t r = D; r-- > R;)
            t = xi_index(spec, r, t);
        thread[i] = t;
    }
    auto col = [&](std::size_t j) {
        std::vector<Rational> v(P.rows());
        for (std::size_t i = 0; i < P.rows(); ++i)
            v[i] = P(i, j);
        return v;
    };
    bool have = false;
    for (std::size_t i = 0; i < thread.size(); ++i)
        for (std::size_t j = i + 1; j < thread.size(); ++j) {
            if (thread[i] == thread[j])
                continue;
            Rational d = l1_distance(col(i), col(j));
            if (!have || d < c.separation)
                c.separation = d;
            have = true;
        }
    if (!have)
        throw std::logic_error("distinct threads at depth R without distinct representatives");
    auto tail = tail_bound(Q, D);
    if (!tail) {
        c.note = "no majorant for the tail of the defect series";
        return c;
    }
    c.tail = *tail;
    c.delta = c.separation - 4 * c.tail;
    c.sufficient = c.delta > 0;
    if (!c.sufficient)
        c.note = "separation does not beat the tail at this depth";
    return c;
}

void PartitionTree::validate() const
{
    if (levels.empty())
        throw DomainError("partition tree has no levels");
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const Level& L = levels[j];
        if (L.cells == 0)
            throw DomainError("level " + std::to_string(j + 1) + " has no cells");
        if (j == 0) {
            if (!L.parent.empty())
                throw DomainError("the first level has no parent map");
            continue;
        }
        if (L.parent.size() != L.cells)
            throw DomainError("level " + std::to_string(j + 1) + ": parent list length differs from cell count");
        std::vector<bool> hit(levels[j - 1].cells, false);
        for (auto p : L.parent) {
            if (p >= levels[j - 1].cells)
                throw DomainError("level " + std::to_string(j + 1) + ": parent index out of range");
            hit[p] = true;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            throw DomainError("level " + std::to_string(j + 1) + ": refinement map is not onto");
    }
}

RealizedSpace realize_space(const PartitionTree& tree, std::uint64_t J)
{
    tree.validate();
    if (J < 1)
        throw DomainError("realization depth must be at least 1");
    if (tree.levels.size() < J + 1)
        throw DomainError("realization to depth J needs J + 1 tree levels");
    RealizedSpace out;
    // r(j) = 1 + sum_{i<j} #P_i
    std::uint64_t acc = 1;
    for (std::uint64_t j = 1; j <= J + 1; ++j) {
        out.r_of.push_back(acc);
        acc += tree.levels[j - 1].cells;
    }
    std::uint64_t r_next_last = acc;  // r(J+2)

    out.gamma.resize(J + 1);
    out.gamma[0].resize(tree.levels[0].cells);
    for (std::uint64_t c = 0; c < out.gamma[0].size(); ++c)
        out.gamma[0][c] = c;

    std::vector<std::uint64_t> b(out.r_of[J] + 1, 0);
    for (std::uint64_t j = 1; j <= J; ++j) {
        const auto& g = out.gamma[j - 1];
        const auto& next = tree.levels[j];
        std::uint64_t m = tree.levels[j - 1].cells;
        // children of each gamma_j label, in ascending cell order
        std::vector<std::vector<std::uint64_t>> kids(m);
        for (std::uint64_t c = 0; c < next.cells; ++c)
            kids[g[next.parent[c]]].push_back(c);
        std::vector<std::uint64_t> before(m + 1, 0);  // #preimage of {0..i-1}
        for (std::uint64_t i = 0; i < m; ++i)
            before[i + 1] = before[i] + kids[i].size();
        auto& gn = out.gamma[j];
        gn.assign(next.cells, 0);
        for (std::uint64_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < kids[i].size(); ++k)
                gn[kids[i][k]] = before[i] + k;

        std::uint64_t rj = out.r_of[j - 1];
        std::uint64_t r_next = j < J + 1 ? out.r_of[j] : r_next_last;
        b[rj] = r_next - 1;
        for (std::uint64_t i = 1; i < m; ++i)
            b[rj + i] = b[rj] + before[i];
    }
    std::uint64_t rl = out.r_of[J];
    b[rl] = r_next_last - 1;
    out.b = b;

    ResonantSpec spec(LevelSequence::tower(), BSequence::list(b));
    out.consistent = true;
    for (std::uint64_t j = 1; j <= J; ++j) {
        const auto& next = tree.levels[j];
        std::uint64_t lo = out.r_of[j - 1], hi = out.r_of[j];
        for (std::uint64_t c = 0; c < next.cells; ++c) {
            std::uint64_t i = out.gamma[j][c];
            for (std::uint64_t t = hi; t-- > lo;)
                i = xi_index(spec, t, i);
            if (i != out.gamma[j - 1][next.parent[c]])
                out.consistent = false;
        }
    }
    return out;
}

std::vector<Rational> random_simplex_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<unsigned> dist(0, 1000);
    std::vector<BigInt> w(n);
    BigInt total = 0;
    for (auto& x : w) {
        x = dist(rng);
        total += x;
    }
    if (total == 0) {
        w[0] = 1;
        total = 1;
    }
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = ratio(w[i], total);
    return v;
}

}  // namespace pcs
