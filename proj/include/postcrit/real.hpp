#pragma once

// Thin owning wrapper over an mpfr_t. Precision is in bits and results take
// the larger precision of their operands. Rounding is always to nearest.

#include "postcrit/numbers.hpp"

#include <mpfr.h>

#include <string>

namespace pcs {

class Real {
public:
    explicit Real(unsigned prec = 256);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    // Decimal ("3.9", "1e-3") or hex float ("0x1.8p+1").
    static Real parse(const std::string& s, unsigned prec);
    static Real from_double(double v, unsigned prec);
    static Real from_rational(const Rational& q, unsigned prec);
    static Real from_int(long v, unsigned prec);

    unsigned prec() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact hex float, e.g. "0x1.f4p+1".
    std::string hex() const;
    std::string decimal(int digits = 20) const;

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    Real abs() const;
    Real log() const;
    Real sqrt() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }

private:
    mpfr_t v_;
};

// 2^e at the given precision.
Real exp2_int(long e, unsigned prec);

}  // namespace pcs
