#pragma once

// Matrices over huge index ranges whose columns come in runs: a run of
// identity columns, or a run of equal columns. Transition matrices of the
// kneading diagram have this shape with vertex names up to 2^(3^12), so
// nothing here ever iterates over an index range.

#include "postcrit/matrix.hpp"
#include "postcrit/numbers.hpp"

#include <vector>

namespace pcs {

struct Span {
    BigInt lo, hi;  // inclusive; empty when lo > hi

    bool empty() const { return lo > hi; }
    BigInt size() const { return empty() ? BigInt(0) : BigInt(hi - lo + 1); }
    bool contains(const BigInt& i) const { return lo <= i && i <= hi; }
    bool operator==(const Span& o) const { return lo == o.lo && hi == o.hi; }
};

// Sparse vector, constant on finitely many index intervals, zero elsewhere.
class PiecewiseVector {
public:
    struct Piece {
        BigInt lo, hi;
        Rational value;
        bool operator==(const Piece& o) const { return lo == o.lo && hi == o.hi && value == o.value; }
    };

    PiecewiseVector() = default;
    static PiecewiseVector unit(const BigInt& i);
    static PiecewiseVector constant(const BigInt& lo, const BigInt& hi, const Rational& v);
    // Overlapping pieces add up.
    static PiecewiseVector sum(const std::vector<Piece>& raw);

    const std::vector<Piece>& pieces() const& { return pieces_; }
    std::vector<Piece> pieces() && { return std::move(pieces_); }
    bool is_zero() const { return pieces_.empty(); }
    Rational at(const BigInt& i) const;
    // sum of all coordinates
    Rational total() const;
    bool nonnegative() const;

    PiecewiseVector scaled(const Rational& c) const;
    PiecewiseVector restricted(const BigInt& lo, const BigInt& hi) const;
    PiecewiseVector operator+(const PiecewiseVector& o) const;
    PiecewiseVector operator-(const PiecewiseVector& o) const;
    bool operator==(const PiecewiseVector& o) const { return pieces_ == o.pieces_; }

    // l1 norm
    Rational norm1() const;
    std::vector<Rational> dense(const BigInt& lo, std::size_t n) const;

private:
    std::vector<Piece> pieces_;  // sorted, disjoint, non-zero, maximal
};

class BlockMatrix {
public:
    struct Block {
        BigInt lo, hi;  // column range
        bool identity;
        PiecewiseVector column;  // used when !identity
    };

    BlockMatrix(Span rows, Span cols, std::vector<Block> blocks);

    static BlockMatrix identity(const Span& s);
    static BlockMatrix from_dense(const RationalMatrix& m);

    const Span& rows() const { return rows_; }
    const Span& cols() const { return cols_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    PiecewiseVector apply(const PiecewiseVector& x) const;
    PiecewiseVector column(const BigInt& c) const;
    BlockMatrix operator*(const BlockMatrix& o) const;
    bool operator==(const BlockMatrix& o) const;

    bool is_stochastic() const;
    BigInt rank() const;
    // Throws HorizonError when either side exceeds `limit`.
    RationalMatrix dense(std::size_t limit = 4096) const;

private:
    void canonicalize();

    Span rows_, cols_;
    std::vector<Block> blocks_;
};

}  // namespace pcs
