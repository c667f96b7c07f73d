#pragma once

#include "postcrit/numbers.hpp"

#include <cstddef>
#include <vector>

namespace pcs {

// Dense exact matrix. Rows and columns are labelled by consecutive integers
// starting at row_origin / col_origin, so vertex names survive.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols, BigInt row_origin = 0, BigInt col_origin = 0);

    static RationalMatrix identity(std::size_t n, BigInt origin = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const BigInt& row_origin() const { return row0_; }
    const BigInt& col_origin() const { return col0_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RationalMatrix operator*(const RationalMatrix& o) const;
    std::vector<Rational> apply(const std::vector<Rational>& x) const;
    bool operator==(const RationalMatrix& o) const;

    std::vector<Rational> column_sums() const;
    // Non-negative entries and every column summing to exactly 1.
    bool is_stochastic() const;

    Rational determinant() const;
    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    BigInt row0_ = 0, col0_ = 0;
    std::vector<Rational> a_;
};

// Fraction-free elimination on an integer matrix (row-major, rows x cols).
// Returns the rank; when square, *det receives the determinant.
std::size_t bareiss(std::vector<std::vector<BigInt>> m, BigInt* det = nullptr);

// Rank of a rational matrix given as rows, via per-row clearing of
// denominators and bareiss.
std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows);

Rational l1_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace pcs
