#pragma once

#include "postcrit/blocks.hpp"
#include "postcrit/kneading.hpp"

#include <vector>

namespace pcs {

// Edges of one level, grouped. Front: j-1 -> j. Fan: j-1 -> k for each new
// vertex k != j. Identity: k -> k for k in the span.
struct EdgeGroup {
    enum class Kind { Front, Fan, Identity };
    Kind kind;
    Span targets;
};

struct Edge {
    BigInt source, target;
    int rank;  // 0 = minimal among edges into target, 1 = the larger of a pair
};

struct BratteliStage {
    BigInt level;
    Span prev, cur;
    std::vector<EdgeGroup> edges;
    PiecewiseVector heights_prev, heights_cur;

    // Throws HorizonError if there are more than `limit` edges.
    std::vector<Edge> edge_list(std::size_t limit = 100000) const;
};

// Heights at one level: vertex span and the number of paths from the root.
struct LevelState {
    BigInt j;
    Span v;
    PiecewiseVector s;
};

// The ordered diagram of a non-decreasing diverging kneading map. Vertex j
// of level j is the front; everything is kept as spans, so levels with
// astronomically large vertex names cost as much as small ones.
class BratteliDiagram {
public:
    explicit BratteliDiagram(KneadingMap Q);

    const KneadingMap& map() const { return Q_; }

    Span vertices(const BigInt& j) const;
    BratteliStage stage(const BigInt& j) const;
    PiecewiseVector heights(const BigInt& j) const;
    LevelState level(const BigInt& j) const;

    // N_j and M_j, rows V_{j-1}, columns V_j.
    BlockMatrix incidence(const BigInt& j) const;
    BlockMatrix transition(const BigInt& j) const;

    // M_from * ... * M_to. Stretches of levels where nothing but the front
    // moves are multiplied in closed form.
    BlockMatrix product(const BigInt& from, const BigInt& to) const;
    // Same product, one factor per level. For cross-checking.
    BlockMatrix product_stepwise(const BigInt& from, const BigInt& to) const;

    // True where V_j does not simply drop its smallest vertex.
    bool is_event(const BigInt& j) const;

    // Vershik successor on a path given by its vertices v_0 = 0, v_1, ..., v_n.
    std::vector<BigInt> vershik_successor(const std::vector<BigInt>& path) const;
    // Minimal path from the root to vertex v at level j.
    std::vector<BigInt> minimal_path(const BigInt& j, const BigInt& v) const;
    bool is_path(const std::vector<BigInt>& path) const;

private:
    BigInt next_event_after(const BigInt& j) const;
    LevelState step(const LevelState& L) const;
    LevelState run(const LevelState& L, const BigInt& b) const;
    BlockMatrix step_matrix(const LevelState& prev, const LevelState& cur, bool stochastic) const;
    BlockMatrix run_matrix(const LevelState& prev, const LevelState& cur) const;
    LevelState advance(LevelState L, const BigInt& J) const;

    KneadingMap Q_;
};

// M_{q_r+2} ... M_{k_r} for a resonant map, k_r = q_{b(r)} + 1.
struct RankProduct {
    BlockMatrix product;
    BlockMatrix closed_form;  // the column pattern built from the v(n) vectors
    BigInt rank;
    BigInt expected_rank;     // b(r) - r + 1
};

RankProduct product_and_rank(const BratteliDiagram& d, std::uint64_t r);
BlockMatrix rank_product_closed_form(const BratteliDiagram& d, std::uint64_t r);

}  // namespace pcs
