#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pcs {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt pow2(std::uint64_t e);
BigInt isqrt(const BigInt& n);

std::string str(const BigInt& n);
// Canonical "p/q" (or "p" when the denominator is 1).
std::string str(const Rational& q);

BigInt parse_bigint(const std::string& s);
Rational parse_rational(const std::string& s);

// Narrowing with an explicit failure instead of silent truncation.
std::uint64_t to_u64(const BigInt& n, const char* what);

inline Rational ratio(const BigInt& p, const BigInt& q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

}  // namespace pcs
