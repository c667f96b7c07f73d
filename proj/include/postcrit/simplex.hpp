#pragma once

// Finite stages of the inverse system of simplices attached to a resonant
// kneading map. Coordinates of level r are I_r = {0, ..., b(r) - r}.

#include "postcrit/blocks.hpp"
#include "postcrit/bratteli.hpp"
#include "postcrit/kneading.hpp"
#include "postcrit/matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace pcs {

// Maps I_{r+1} -> I_r (columns indexed by I_{r+1}, rows by I_r).
RationalMatrix xi_map(const ResonantSpec& spec, std::uint64_t r);
RationalMatrix theta_map(const ResonantSpec& spec, std::uint64_t r);
// I_r -> I_r. A needs cutting times, hence the map.
RationalMatrix a_matrix(const KneadingMap& Q, std::uint64_t r);
RationalMatrix a_prime(const ResonantSpec& spec, std::uint64_t r);
// V_{q_r+1} -> I_r. For r = 0 this is the all-ones row over V_1.
BlockMatrix pi_map(const BratteliDiagram& d, std::uint64_t r);

// xi(i) for i in I_{r+1}: the unique row where column i of Xi_r is 1.
std::uint64_t xi_index(const ResonantSpec& spec, std::uint64_t r, std::uint64_t i);

struct DetReport {
    std::uint64_t r = 0;
    bool singleton = false;
    Rational matrix_det;  // computed from the matrix
    Rational weight;      // (q_{r+1} - q_r) S_{Q(q_{r+1})} / S_{q_{r+1}}
    Rational one_minus;   // 1 - S_{q_r} / S_{q_{r+1}}
};
DetReport det_a(const KneadingMap& Q, std::uint64_t r);

// 1 - det A_r as it enters the contraction estimate: S_{q_r}/S_{q_{r+1}},
// or 0 on a singleton level.
Rational defect(const KneadingMap& Q, std::uint64_t r);

struct IntertwineReport {
    std::uint64_t r = 0;
    BlockMatrix lhs, rhs;  // Pi_r M_{q_r+2}...M_{q_{r+1}+1} and A_r Theta_r Pi_{r+1}
    bool equal = false;
};
IntertwineReport intertwine_check(const BratteliDiagram& d, std::uint64_t r);

// All threads (i_0, ..., i_R) with i_r = xi_r(i_{r+1}), one per i_R in I_R.
std::vector<std::vector<std::uint64_t>> extreme_threads(const ResonantSpec& spec, std::uint64_t R);

// Compositions over levels r..r2-1 applied to v in simplex I_{r2}. "mixed"
// uses A up to r1 - 1 and A' from r1 on; "mixed_prime" the other way round.
struct ContractionReport {
    std::vector<Rational> chain_a, mixed, chain_a_prime, mixed_prime;
    Rational dist, dist_prime, bound;
    bool holds = false;
};
ContractionReport contraction_bound(const KneadingMap& Q, std::uint64_t r, std::uint64_t r1, std::uint64_t r2,
                                    const std::vector<Rational>& v);

// Product A_r Theta_r ... A_{s-1} Theta_{s-1}, I_s -> I_r (identity when s = r).
RationalMatrix a_theta_chain(const KneadingMap& Q, std::uint64_t r, std::uint64_t s);
RationalMatrix a_prime_theta_chain(const ResonantSpec& spec, std::uint64_t r, std::uint64_t s);

struct Certificate {
    bool vacuous = false;      // fewer than two threads
    bool sufficient = false;
    Rational delta;            // separation minus 4 * tail when sufficient
    Rational separation;       // min l1 distance of depth-D images with distinct depth-R threads
    Rational tail;             // upper bound on sum_{s >= D} (1 - det A_s)
    std::string note;
};
Certificate separation_certificate(const KneadingMap& Q, std::uint64_t R, std::uint64_t D);

// Upper bound for sum_{s >= D} S_{q_s}/S_{q_{s+1}}: exact terms while the
// levels are available, then a closed-form majorant for the tower. nullopt
// when no majorant is known.
std::optional<Rational> tail_bound(const KneadingMap& Q, std::uint64_t D);

struct PartitionTree {
    struct Level {
        std::uint64_t cells = 0;
        std::vector<std::uint64_t> parent;  // cell of the previous level, empty for the first
    };
    std::vector<Level> levels;

    void validate() const;
};

struct RealizedSpace {
    std::vector<std::uint64_t> b;                     // b(0..r(J+1)-1)
    std::vector<std::uint64_t> r_of;                  // r(1..J+1), r_of[j-1] = r(j)
    std::vector<std::vector<std::uint64_t>> gamma;    // gamma_j, j = 1..J+1
    bool consistent = false;  // composed xi's agree with the tree's parent maps
};
RealizedSpace realize_space(const PartitionTree& tree, std::uint64_t J);

// A random point of the simplex on n coordinates with exact rational entries.
std::vector<Rational> random_simplex_point(std::mt19937_64& rng, std::size_t n);

}  // namespace pcs
