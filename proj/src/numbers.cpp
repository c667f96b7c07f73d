#include "postcrit/numbers.hpp"

#include "postcrit/errors.hpp"

namespace pcs {

BigInt pow2(std::uint64_t e)
{
    BigInt r;
    mpz_setbit(r.get_mpz_t(), e);
    return r;
}

BigInt isqrt(const BigInt& n)
{
    if (n < 0)
        throw DomainError("isqrt of a negative number");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::string str(const BigInt& n) { return n.get_str(10); }

std::string str(const Rational& q) { return q.get_str(10); }

BigInt parse_bigint(const std::string& s)
{
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw ParseError("not a decimal integer: '" + s + "'");
    return r;
}

Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw ParseError("not a rational 'p/q': '" + s + "'");
    r.canonicalize();
    return r;
}

std::uint64_t to_u64(const BigInt& n, const char* what)
{
    if (n < 0 || !mpz_fits_ulong_p(n.get_mpz_t()))
        throw HorizonError(std::string(what) + " does not fit in 64 bits");
    return n.get_ui();
}

}  // namespace pcs
