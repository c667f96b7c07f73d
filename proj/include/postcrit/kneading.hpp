#pragma once

#include "postcrit/numbers.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcs {

// Strictly increasing q_0 = 0 < q_1 < ... : either the tower 2^(3^r) - 2 or
// an explicit finite list.
class LevelSequence {
public:
    static LevelSequence tower();
    static LevelSequence list(std::vector<BigInt> values);

    bool is_tower() const { return tower_; }
    std::optional<std::uint64_t> size() const;
    const std::vector<BigInt>& values() const { return values_; }

    // q_r without any cap; HorizonError past the end of a list.
    BigInt at(std::uint64_t r) const;
    // k <= q_r. For the tower this is decided from bit lengths whenever
    // possible, so huge levels are never materialized for small k.
    bool bounds(const BigInt& k, std::uint64_t r) const;

private:
    bool tower_ = true;
    std::vector<BigInt> values_;
};

class BSequence {
public:
    enum class Kind { Finite, Countable, Cantor, List };

    static BSequence finite(std::uint64_t m);
    static BSequence countable();
    static BSequence cantor();
    static BSequence list(std::vector<std::uint64_t> values);

    Kind kind() const { return kind_; }
    std::uint64_t m() const { return m_; }
    const std::vector<std::uint64_t>& values() const { return values_; }
    std::optional<std::uint64_t> size() const;

    std::uint64_t operator()(std::uint64_t r) const;

private:
    Kind kind_ = Kind::Cantor;
    std::uint64_t m_ = 0;
    std::vector<std::uint64_t> values_;
};

class ResonantSpec {
public:
    static constexpr unsigned default_level_cap = 4;

    ResonantSpec(LevelSequence q, BSequence b, unsigned level_cap = default_level_cap);

    static ResonantSpec finite(std::uint64_t m);
    static ResonantSpec countable();
    static ResonantSpec cantor();

    const LevelSequence& levels() const { return q_; }
    const BSequence& bseq() const { return b_; }

    unsigned level_cap() const { return cap_; }
    // Opt in to materializing tower levels beyond the default cap.
    ResonantSpec with_level_cap(unsigned cap) const;

    // q_r; for the tower, r above the level cap is a HorizonError.
    BigInt q(std::uint64_t r) const;
    std::uint64_t b(std::uint64_t r) const { return b_(r); }
    // b(r) - r, the largest element of I_r.
    std::uint64_t top(std::uint64_t r) const { return b_(r) - r; }
    // first index of the block Q^{-1}(q_r): q_{b(r)} + 1 for r >= 1, 0 for r = 0.
    BigInt block_start(std::uint64_t r) const;

    bool at_most_q(const BigInt& k, std::uint64_t r) const { return q_.bounds(k, r); }

    // t with Q(k) = q_t.
    std::uint64_t level_of(const BigInt& k) const;
    // Largest r with q_r <= v.
    std::uint64_t level_floor(const BigInt& v) const;

    std::string describe() const;

private:
    LevelSequence q_;
    BSequence b_;
    unsigned cap_;
};

class KneadingMap {
public:
    enum class Kind { Resonant, Table, Fibonacci, Doubling, Zero };

    static KneadingMap resonant(ResonantSpec spec);
    static KneadingMap table(std::vector<std::uint64_t> values);
    static KneadingMap fibonacci();
    static KneadingMap doubling();
    static KneadingMap zero();

    Kind kind() const;
    std::string name() const;
    const ResonantSpec* spec() const;
    const std::vector<std::uint64_t>* table_values() const;

    // Largest index guaranteed evaluable, or nullopt when every index is.
    std::optional<BigInt> horizon() const;
    // Known to be non-decreasing at every evaluable index.
    bool nondecreasing() const;
    bool diverging() const;

    BigInt value(const BigInt& k) const;
    std::uint64_t at(std::uint64_t k) const;

    // max{i : Q(i) <= v}. Needs a non-decreasing diverging map.
    BigInt last_at_most(const BigInt& v) const;
    // Smallest element of the image of Q that is >= v.
    BigInt next_image_at_least(const BigInt& v) const;

    // Cutting time S_k, memoized. Resonant maps use the block closed form,
    // so astronomically large k are fine there.
    BigInt S(const BigInt& k) const;
    BigInt S(std::uint64_t k) const;

private:
    struct Impl;
    explicit KneadingMap(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

struct CuttingTimes {
    std::vector<BigInt> S;
};

// Plain recursion S_k = S_{k-1} + S_{Q(k)} for k = 0..K.
CuttingTimes cutting_times(const KneadingMap& Q, std::uint64_t K);

enum class Verdict { Admissible, NotAdmissible, Indeterminate };

struct AdmissibilityReport {
    Verdict verdict = Verdict::Admissible;
    std::uint64_t witness = 0;  // k where the verdict was decided (if not Admissible)
    std::string reason;
};

// Checks Q(0)=0, Q(k)<=k-1 and the lexicographic tail condition for
// k = 1..K, comparing at most `window` terms (0 means K). Admissible means
// admissible up to the horizon only.
AdmissibilityReport is_admissible(const KneadingMap& Q, std::uint64_t K, std::uint64_t window = 0);

const char* to_string(Verdict v);

// prod_{r<R} (1 - S_{q_r}/S_{q_{r+1}}).
Rational divergence_product(const ResonantSpec& spec, std::uint64_t R);
std::vector<Rational> divergence_partials(const ResonantSpec& spec, std::uint64_t R);

// q_{r+1} >= q_r + r^2 prod_{s<r} (1 + q_{s+1} - q_s).
bool check_norma(const ResonantSpec& spec, std::uint64_t r);
// prod_{s<r} (1 + q_{s+1} - q_s), an upper bound for S_{q_r}.
BigInt level_growth_bound(const ResonantSpec& spec, std::uint64_t r);

// Names: "finite:M" (or "finite(M)"), "countable", "cantor".
ResonantSpec builtin_spec(const std::string& name);
// Additionally "fibonacci", "doubling", "zero".
KneadingMap builtin_map(const std::string& name);

}  // namespace pcs
