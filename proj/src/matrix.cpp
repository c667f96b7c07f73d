#include "postcrit/matrix.hpp"

#include "postcrit/errors.hpp"

#include <utility>

namespace pcs {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, BigInt row_origin, BigInt col_origin)
    : rows_(rows), cols_(cols), row0_(std::move(row_origin)), col0_(std::move(col_origin)), a_(rows * cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n, BigInt origin)
{
    RationalMatrix m(n, n, origin, origin);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const
{
    if (cols_ != o.rows_ || col0_ != o.row0_)
        throw DomainError("matrix product: index sets do not match");
    RationalMatrix r(rows_, o.cols_, row0_, o.col0_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0)
                    r(i, j) += a * o(k, j);
        }
    return r;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const
{
    if (x.size() != cols_)
        throw DomainError("matrix-vector product: size mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0)
                y[i] += (*this)(i, j) * x[j];
    return y;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && row0_ == o.row0_ && col0_ == o.col0_ && a_ == o.a_;
}

std::vector<Rational> RationalMatrix::column_sums() const
{
    std::vector<Rational> s(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            s[j] += (*this)(i, j);
    return s;
}

bool RationalMatrix::is_stochastic() const
{
    for (const auto& v : a_)
        if (v < 0)
            return false;
    for (const auto& s : column_sums())
        if (s != 1)
            return false;
    return true;
}

namespace {

std::vector<std::vector<BigInt>> integer_rows(const std::vector<std::vector<Rational>>& rows)
{
    std::vector<std::vector<BigInt>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        BigInt l = 1;
        for (const auto& v : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<BigInt> ir;
        ir.reserve(row.size());
        for (const auto& v : row)
            ir.push_back(v.get_num() * (l / v.get_den()));
        out.push_back(std::move(ir));
    }
    return out;
}

}  // namespace

std::size_t bareiss(std::vector<std::vector<BigInt>> m, BigInt* det)
{
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    BigInt prev = 1;
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    if (det) {
        if (rows != cols)
            throw DomainError("determinant of a non-square matrix");
        *det = (r == rows) ? BigInt(sign * prev) : BigInt(0);
        if (rows == 0)
            *det = 1;
    }
    return r;
}

std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows)
{
    if (rows.empty())
        return 0;
    return bareiss(integer_rows(rows));
}

Rational RationalMatrix::determinant() const
{
    if (rows_ != cols_)
        throw DomainError("determinant of a non-square matrix");
    std::vector<std::vector<Rational>> rows(rows_, std::vector<Rational>(cols_));
    Rational scale = 1;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            rows[i][j] = (*this)(i, j);
    auto ints = integer_rows(rows);
    // each row was multiplied by lcm of its denominators
    for (std::size_t i = 0; i < rows_; ++i) {
        BigInt l = 1;
        for (const auto& v : rows[i])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        scale *= Rational(l);
    }
    BigInt d;
    bareiss(std::move(ints), &d);
    Rational out = Rational(d) / scale;
    out.canonicalize();
    return out;
}

std::size_t RationalMatrix::rank() const
{
    std::vector<std::vector<Rational>> rows(rows_, std::vector<Rational>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            rows[i][j] = (*this)(i, j);
    return rational_rank(rows);
}

Rational l1_distance(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    if (a.size() != b.size())
        throw DomainError("l1 distance: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += abs(a[i] - b[i]);
    return s;
}

}  // namespace pcs
