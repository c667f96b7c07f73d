#include "postcrit/blocks.hpp"

#include "postcrit/errors.hpp"

#include <algorithm>
#include <map>

namespace pcs {

// ---------------------------------------------------------------- vectors

PiecewiseVector PiecewiseVector::unit(const BigInt& i) { return constant(i, i, 1); }

PiecewiseVector PiecewiseVector::constant(const BigInt& lo, const BigInt& hi, const Rational& v)
{
    PiecewiseVector p;
    if (lo <= hi && v != 0)
        p.pieces_.push_back({lo, hi, v});
    return p;
}

PiecewiseVector PiecewiseVector::sum(const std::vector<Piece>& raw)
{
    // sweep over +v at lo and -v at hi+1
    std::map<BigInt, Rational> delta;
    for (const auto& p : raw) {
        if (p.lo > p.hi || p.value == 0)
            continue;
        delta[p.lo] += p.value;
        delta[p.hi + 1] -= p.value;
    }
    PiecewiseVector out;
    Rational acc = 0;
    for (auto it = delta.begin(); it != delta.end(); ++it) {
        acc += it->second;
        auto next = std::next(it);
        if (next == delta.end())
            break;
        if (acc == 0)
            continue;
        BigInt lo = it->first, hi = next->first - 1;
        if (!out.pieces_.empty() && out.pieces_.back().hi + 1 == lo && out.pieces_.back().value == acc)
            out.pieces_.back().hi = hi;
        else
            out.pieces_.push_back({lo, hi, acc});
    }
    return out;
}

Rational PiecewiseVector::at(const BigInt& i) const
{
    for (const auto& p : pieces_)
        if (p.lo <= i && i <= p.hi)
            return p.value;
    return 0;
}

Rational PiecewiseVector::total() const
{
    Rational s = 0;
    for (const auto& p : pieces_)
        s += p.value * Rational(BigInt(p.hi - p.lo + 1));
    return s;
}

Rational PiecewiseVector::norm1() const
{
    Rational s = 0;
    for (const auto& p : pieces_)
        s += abs(p.value) * Rational(BigInt(p.hi - p.lo + 1));
    return s;
}

bool PiecewiseVector::nonnegative() const
{
    for (const auto& p : pieces_)
        if (p.value < 0)
            return false;
    return true;
}

PiecewiseVector PiecewiseVector::scaled(const Rational& c) const
{
    if (c == 0)
        return {};
    PiecewiseVector out = *this;
    for (auto& p : out.pieces_)
        p.value *= c;
    return out;
}

PiecewiseVector PiecewiseVector::restricted(const BigInt& lo, const BigInt& hi) const
{
    PiecewiseVector out;
    for (const auto& p : pieces_) {
        BigInt a = std::max(p.lo, lo), b = std::min(p.hi, hi);
        if (a <= b)
            out.pieces_.push_back({a, b, p.value});
    }
    return out;
}

PiecewiseVector PiecewiseVector::operator+(const PiecewiseVector& o) const
{
    std::vector<Piece> raw = pieces_;
    raw.insert(raw.end(), o.pieces_.begin(), o.pieces_.end());
    return sum(raw);
}

PiecewiseVector PiecewiseVector::operator-(const PiecewiseVector& o) const
{
    return *this + o.scaled(-1);
}

std::vector<Rational> PiecewiseVector::dense(const BigInt& lo, std::size_t n) const
{
    std::vector<Rational> v(n);
    for (const auto& p : pieces_) {
        for (BigInt i = std::max(p.lo, lo); i <= p.hi && i < lo + n; ++i)
            v[BigInt(i - lo).get_ui()] = p.value;
        if (p.lo < lo || p.hi >= lo + n)
            throw DomainError("vector has support outside the requested range");
    }
    return v;
}

// ---------------------------------------------------------------- matrices

BlockMatrix::BlockMatrix(Span rows, Span cols, std::vector<Block> blocks)
    : rows_(std::move(rows)), cols_(std::move(cols)), blocks_(std::move(blocks))
{
    BigInt next = cols_.lo;
    for (const auto& b : blocks_) {
        if (b.lo != next || b.hi < b.lo)
            throw std::logic_error("column blocks must tile the column range");
        if (b.identity) {
            if (b.lo < rows_.lo || b.hi > rows_.hi)
                throw std::logic_error("identity block outside the row range");
        } else if (!b.column.is_zero()) {
            if (b.column.pieces().front().lo < rows_.lo || b.column.pieces().back().hi > rows_.hi)
                throw std::logic_error("column support outside the row range");
        }
        next = b.hi + 1;
    }
    if (next != cols_.hi + 1)
        throw std::logic_error("column blocks must tile the column range");
    canonicalize();
}

void BlockMatrix::canonicalize()
{
    std::vector<Block> out;
    for (auto& b : blocks_) {
        if (!b.identity && b.lo == b.hi && b.column == PiecewiseVector::unit(b.lo)) {
            b.identity = true;
            b.column = {};
        }
        if (!out.empty() && out.back().hi + 1 == b.lo && out.back().identity == b.identity
            && (b.identity || out.back().column == b.column)) {
            out.back().hi = b.hi;
            continue;
        }
        out.push_back(std::move(b));
    }
    blocks_ = std::move(out);
}

BlockMatrix BlockMatrix::identity(const Span& s)
{
    return BlockMatrix(s, s, {{s.lo, s.hi, true, {}}});
}

BlockMatrix BlockMatrix::from_dense(const RationalMatrix& m)
{
    Span rows{m.row_origin(), m.row_origin() + BigInt(std::to_string(m.rows())) - 1};
    Span cols{m.col_origin(), m.col_origin() + BigInt(std::to_string(m.cols())) - 1};
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<PiecewiseVector::Piece> raw;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) {
                BigInt r = m.row_origin() + BigInt(std::to_string(i));
                raw.push_back({r, r, m(i, j)});
            }
        BigInt c = m.col_origin() + BigInt(std::to_string(j));
        blocks.push_back({c, c, false, PiecewiseVector::sum(raw)});
    }
    return BlockMatrix(rows, cols, std::move(blocks));
}

PiecewiseVector BlockMatrix::apply(const PiecewiseVector& x) const
{
    std::vector<PiecewiseVector::Piece> raw;
    std::size_t bi = 0;
    for (const auto& p : x.pieces()) {
        if (p.lo < cols_.lo || p.hi > cols_.hi)
            throw DomainError("vector support outside the column range");
        while (bi < blocks_.size() && blocks_[bi].hi < p.lo)
            ++bi;
        for (std::size_t k = bi; k < blocks_.size() && blocks_[k].lo <= p.hi; ++k) {
            const Block& b = blocks_[k];
            BigInt a = std::max(b.lo, p.lo), e = std::min(b.hi, p.hi);
            if (b.identity) {
                raw.push_back({a, e, p.value});
            } else {
                Rational w = p.value * Rational(BigInt(e - a + 1));
                for (const auto& c : b.column.pieces())
                    raw.push_back({c.lo, c.hi, c.value * w});
            }
        }
    }
    return PiecewiseVector::sum(raw);
}

PiecewiseVector BlockMatrix::column(const BigInt& c) const
{
    return apply(PiecewiseVector::unit(c));
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& o) const
{
    if (!(cols_ == o.rows_))
        throw DomainError("block product: index sets do not match");
    std::vector<Block> out;
    for (const auto& b : o.blocks_) {
        if (!b.identity) {
            out.push_back({b.lo, b.hi, false, apply(b.column)});
            continue;
        }
        // columns b.lo..b.hi of this matrix
        for (const auto& a : blocks_) {
            BigInt lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
            if (lo <= hi)
                out.push_back({lo, hi, a.identity, a.column});
        }
    }
    return BlockMatrix(rows_, o.cols_, std::move(out));
}

bool BlockMatrix::operator==(const BlockMatrix& o) const
{
    if (!(rows_ == o.rows_) || !(cols_ == o.cols_) || blocks_.size() != o.blocks_.size())
        return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto &a = blocks_[i], &b = o.blocks_[i];
        if (a.lo != b.lo || a.hi != b.hi || a.identity != b.identity)
            return false;
        if (!a.identity && !(a.column == b.column))
            return false;
    }
    return true;
}

bool BlockMatrix::is_stochastic() const
{
    for (const auto& b : blocks_)
        if (!b.identity && (!b.column.nonnegative() || b.column.total() != 1))
            return false;
    return true;
}

BigInt BlockMatrix::rank() const
{
    BigInt id_count = 0;
    std::vector<Span> covered;
    std::vector<PiecewiseVector> distinct;
    for (const auto& b : blocks_) {
        if (b.identity) {
            id_count += b.hi - b.lo + 1;
            covered.push_back({b.lo, b.hi});
        } else if (std::find(distinct.begin(), distinct.end(), b.column) == distinct.end()) {
            distinct.push_back(b.column);
        }
    }
    if (distinct.empty())
        return id_count;
    std::sort(covered.begin(), covered.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
    // Rows not hit by an identity column.
    std::vector<Span> free;
    BigInt next = rows_.lo;
    for (const auto& c : covered) {
        if (next < c.lo)
            free.push_back({next, c.lo - 1});
        next = c.hi + 1;
    }
    if (next <= rows_.hi)
        free.push_back({next, rows_.hi});

    std::vector<PiecewiseVector> cut;
    std::vector<BigInt> marks;
    for (const auto& v : distinct) {
        std::vector<PiecewiseVector::Piece> raw;
        for (const auto& f : free)
            for (const auto& p : v.restricted(f.lo, f.hi).pieces())
                raw.push_back(p);
        cut.push_back(PiecewiseVector::sum(raw));
        for (const auto& p : cut.back().pieces()) {
            marks.push_back(p.lo);
            marks.push_back(p.hi + 1);
        }
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    std::vector<std::vector<Rational>> mat;
    for (std::size_t s = 0; s + 1 < marks.size(); ++s) {
        std::vector<Rational> row;
        bool nz = false;
        for (const auto& v : cut) {
            row.push_back(v.at(marks[s]));
            nz = nz || row.back() != 0;
        }
        if (nz)
            mat.push_back(std::move(row));
    }
    return id_count + BigInt(std::to_string(rational_rank(mat)));
}

RationalMatrix BlockMatrix::dense(std::size_t limit) const
{
    BigInt nr = rows_.size(), nc = cols_.size();
    if (nr > limit || nc > limit)
        throw HorizonError("matrix too large for a dense copy");
    RationalMatrix m(nr.get_ui(), nc.get_ui(), rows_.lo, cols_.lo);
    for (const auto& b : blocks_)
        for (BigInt c = b.lo; c <= b.hi; ++c) {
            std::size_t j = BigInt(c - cols_.lo).get_ui();
            if (b.identity) {
                m(BigInt(c - rows_.lo).get_ui(), j) = 1;
            } else {
                for (const auto& p : b.column.pieces())
                    for (BigInt r = p.lo; r <= p.hi; ++r)
                        m(BigInt(r - rows_.lo).get_ui(), j) = p.value;
            }
        }
    return m;
}

}  // namespace pcs
