#pragma once

// Helpers shared by the unit tests and the acceptance runner. Oracles here
// are deliberately naive: no closed forms, no spans, just the definitions.

#include "postcrit/blocks.hpp"
#include "postcrit/kneading.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcs::testing {

// Tower levels needed by the identities at r <= 4 on every builtin spec.
constexpr unsigned deep_cap = 13;

inline std::vector<std::string> builtin_spec_names() { return {"finite:2", "finite:5", "countable", "cantor"}; }

inline ResonantSpec deep_spec(const std::string& name) { return builtin_spec(name).with_level_cap(deep_cap); }

// b(r) for the countable case, by counting triangular numbers instead of a square root.
inline std::uint64_t countable_b(std::uint64_t r)
{
    std::uint64_t t = 0;
    while ((t + 1) * (t + 2) / 2 <= r)
        ++t;
    return r + t;
}

// A point of the simplex over `s`, constant on at most `pieces` random runs.
inline PiecewiseVector random_piecewise_point(gmp_randclass& rng, const Span& s, int pieces)
{
    std::set<BigInt> cuts;
    BigInt size = s.size();
    for (int i = 1; i < pieces && size > 1; ++i)
        cuts.insert(s.lo + 1 + BigInt(rng.get_z_range(size - 1)));
    std::vector<BigInt> starts{s.lo};
    starts.insert(starts.end(), cuts.begin(), cuts.end());
    std::vector<PiecewiseVector::Piece> raw;
    std::vector<BigInt> w;
    BigInt total = 0;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        w.push_back(BigInt(rng.get_z_range(1000)) + (i == 0 ? 1 : 0));
        total += w.back();
    }
    for (std::size_t i = 0; i < starts.size(); ++i) {
        BigInt hi = i + 1 < starts.size() ? BigInt(starts[i + 1] - 1) : s.hi;
        Rational v(w[i], total * (hi - starts[i] + 1));
        v.canonicalize();
        raw.push_back({starts[i], hi, v});
    }
    return PiecewiseVector::sum(raw);
}

// Vertex sets straight from the definition, for small Q tables.
inline std::vector<std::uint64_t> vertices_by_definition(const KneadingMap& Q, std::uint64_t j, std::uint64_t kmax)
{
    std::vector<std::uint64_t> v;
    if (j == 0)
        return {0};
    for (std::uint64_t k = std::max<std::uint64_t>(j, 1); k <= kmax; ++k) {
        bool in = j == 1 ? Q.at(k) == 0 : Q.at(k - 1) + 2 <= j;
        if (in)
            v.push_back(k);
    }
    return v;
}

// Edge multiset of level j from the definition: (source, target) pairs.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> edges_by_definition(const KneadingMap& Q, std::uint64_t j,
                                                                              std::uint64_t kmax)
{
    std::vector<std::pair<std::uint64_t, std::uint64_t>> e;
    auto cur = vertices_by_definition(Q, j, kmax);
    if (j == 1) {
        for (auto k : cur)
            e.push_back({0, k});
        return e;
    }
    auto prev = vertices_by_definition(Q, j - 1, kmax);
    std::set<std::uint64_t> p(prev.begin(), prev.end());
    e.push_back({j - 1, j});
    for (auto k : cur)
        if (!p.count(k) && k != j)
            e.push_back({j - 1, k});
    for (auto k : cur)
        if (p.count(k))
            e.push_back({k, k});
    return e;
}

// Heights by counting paths level by level on the explicit edge lists.
inline std::map<std::uint64_t, BigInt> heights_by_definition(const KneadingMap& Q, std::uint64_t J, std::uint64_t kmax)
{
    std::map<std::uint64_t, BigInt> s{{0, 1}};
    for (std::uint64_t j = 1; j <= J; ++j) {
        std::map<std::uint64_t, BigInt> next;
        for (auto [a, b] : edges_by_definition(Q, j, kmax))
            next[b] += s.at(a);
        s = std::move(next);
    }
    return s;
}

// Lexicographically least {0,1} word (lowest index first) with sum x_k S_k = n,
// found by asking at every index whether the rest can still be completed.
inline std::vector<std::uint8_t> lexmin_representation(std::uint64_t n, const std::vector<std::uint64_t>& S)
{
    std::size_t K = S.size();
    // reach[i][m]: m is a sum of distinct S_i, S_{i+1}, ...
    std::vector<std::vector<char>> reach(K + 1, std::vector<char>(n + 1, 0));
    reach[K][0] = 1;
    for (std::size_t i = K; i-- > 0;)
        for (std::uint64_t m = 0; m <= n; ++m)
            reach[i][m] = reach[i + 1][m] || (m >= S[i] && reach[i + 1][m - S[i]]);
    std::vector<std::uint8_t> w;
    std::uint64_t m = n;
    for (std::size_t i = 0; i < K && m > 0; ++i) {
        if (reach[i + 1][m]) {
            w.push_back(0);
        } else {
            w.push_back(1);
            m -= S[i];
        }
    }
    return w;
}

}  // namespace pcs::testing
