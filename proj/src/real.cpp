#include "postcrit/real.hpp"

#include "postcrit/errors.hpp"

#include <algorithm>

namespace pcs {

Real::Real(unsigned prec)
{
    if (prec < MPFR_PREC_MIN || prec > 1u << 20)
        throw DomainError("unsupported precision " + std::to_string(prec));
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    if (this != &o)
        mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(const std::string& s, unsigned prec)
{
    Real r(prec);
    bool hexa = s.find("0x") != std::string::npos || s.find("0X") != std::string::npos;
    if (mpfr_set_str(r.v_, s.c_str(), hexa ? 0 : 10, MPFR_RNDN) != 0)
        throw ParseError("not a real number: '" + s + "'");
    return r;
}

Real Real::from_double(double v, unsigned prec)
{
    Real r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::from_rational(const Rational& q, unsigned prec)
{
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::from_int(long v, unsigned prec)
{
    Real r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

std::string Real::hex() const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Real::decimal(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Real Real::abs() const
{
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::log() const
{
    Real r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const
{
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b)
{
    Real r(wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b)
{
    Real r(wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b)
{
    Real r(wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b)
{
    Real r(wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const
{
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real exp2_int(long e, unsigned prec)
{
    Real r(prec);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
    return r;
}

}  // namespace pcs
