#pragma once

#include "postcrit/kneading.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcs {

// A {0,1} word x_0 x_1 ... (lowest index first) in the odometer of Q.
// Finite-support points have every bit past the word equal to 0 and are
// stored without trailing zeros. Truncated points only know their window;
// every bit inside the window is trusted.
class OdometerPoint {
public:
    enum class Kind { FiniteSupport, Truncated };

    // Throws DomainError if the word violates the odometer constraint.
    OdometerPoint(KneadingMap Q, std::vector<std::uint8_t> bits, Kind kind);
    static OdometerPoint parse(KneadingMap Q, const std::string& word, Kind kind);

    const KneadingMap& map() const { return Q_; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    Kind kind() const { return kind_; }
    bool finite_support() const { return kind_ == Kind::FiniteSupport; }
    std::size_t resolved() const { return bits_.size(); }

    // q(x): least k with x_k = 1.
    std::optional<std::size_t> first_one() const;
    // sigma(x|n) = sum_{k<=n} x_k S_k.
    BigInt sigma(std::size_t n) const;
    // Full sum; finite-support points only.
    BigInt sigma() const;
    // "0" for the empty finite-support word.
    std::string word() const;

    bool operator==(const OdometerPoint& o) const { return kind_ == o.kind_ && bits_ == o.bits_; }

private:
    KneadingMap Q_;
    std::vector<std::uint8_t> bits_;
    Kind kind_;
};

// x_k = 1 forces x_j = 0 for Q(k+1) <= j <= k-1, checked on the window.
bool membership(const std::vector<std::uint8_t>& word, const KneadingMap& Q);

// Greedy expansion of n in the base (S_k).
OdometerPoint expand(const BigInt& n, const KneadingMap& Q);

OdometerPoint successor(const OdometerPoint& x);
OdometerPoint predecessor(const OdometerPoint& x);

// Add-one by local carries on a finite-support word, independent of expand.
// Used to cross-check successor.
OdometerPoint carry_successor(const OdometerPoint& x);

// sum_{i<k} x_i S_i mod S_k; needs Q(k+1) = k.
BigInt classical_projection(const OdometerPoint& x, std::uint64_t k);

}  // namespace pcs
