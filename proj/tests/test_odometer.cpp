#include "postcrit/errors.hpp"
#include "postcrit/odometer.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>

using namespace pcs;
using namespace pcs::testing;

namespace {

std::vector<std::uint8_t> bits(const std::string& w)
{
    std::vector<std::uint8_t> b;
    for (char c : w)
        b.push_back(c == '1');
    return b;
}

// The constraint read off directly: a 1 at k forbids 1s at Q(k+1) .. k-1.
bool constraint_holds(const std::vector<std::uint8_t>& w, const KneadingMap& Q)
{
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k])
            for (std::size_t j = Q.at(k + 1); j < k; ++j)
                if (w[j])
                    return false;
    return true;
}

std::vector<std::pair<std::string, KneadingMap>> maps()
{
    return {{"fibonacci", KneadingMap::fibonacci()},
            {"doubling", KneadingMap::doubling()},
            {"zero", KneadingMap::zero()},
            {"finite:2", KneadingMap::resonant(builtin_spec("finite:2"))}};
}

}  // namespace

TEST_SUITE("odometer")
{
    TEST_CASE("expansion examples")
    {
        KneadingMap F = KneadingMap::fibonacci();
        CHECK(expand(0, F).bits().empty());
        CHECK(expand(0, F).word() == "0");
        CHECK(expand(4, F).word() == "101");
        CHECK(expand(7, F).word() == "0101");
        CHECK(expand(5, F).word() == "0001");
    }

    TEST_CASE("expansion is the lexicographically least representation")
    {
        for (const auto& [name, Q] : maps()) {
            CAPTURE(name);
            std::vector<std::uint64_t> S;
            for (std::uint64_t k = 0; Q.S(k) <= 500; ++k)
                S.push_back(to_u64(Q.S(k), "S"));
            for (std::uint64_t n = 0; n <= 500; ++n) {
                CAPTURE(n);
                OdometerPoint x = expand(n, Q);
                CHECK(x.bits() == lexmin_representation(n, S));
                CHECK(x.sigma() == n);
            }
        }
    }

    TEST_CASE("every constrained word is the expansion of its value")
    {
        for (const auto& [name, Q] : maps()) {
            CAPTURE(name);
            const std::size_t L = 14;
            std::map<BigInt, int> seen;
            for (std::uint32_t m = 0; m < (1u << L); ++m) {
                std::vector<std::uint8_t> w(L);
                for (std::size_t i = 0; i < L; ++i)
                    w[i] = (m >> i) & 1;
                CHECK(membership(w, Q) == constraint_holds(w, Q));
                if (!constraint_holds(w, Q))
                    continue;
                while (!w.empty() && !w.back())
                    w.pop_back();
                OdometerPoint x(Q, w, OdometerPoint::Kind::FiniteSupport);
                ++seen[x.sigma()];
                CHECK(expand(x.sigma(), Q) == x);
            }
            for (const auto& [n, count] : seen)
                CHECK(count == 1);
            // Every n below S_L has its expansion inside the first L bits.
            for (std::uint64_t n = 0; BigInt(n) < Q.S(L); ++n)
                CHECK(seen.count(BigInt(n)) == 1);
        }
    }

    TEST_CASE("membership")
    {
        KneadingMap F = KneadingMap::fibonacci();
        CHECK(membership({}, F));
        CHECK(membership(bits("0000"), F));
        CHECK_FALSE(membership(bits("11"), F));
        CHECK(membership(bits("101"), F));
        CHECK_THROWS_AS(OdometerPoint::parse(F, "11", OdometerPoint::Kind::FiniteSupport), DomainError);
        CHECK_THROWS_AS(OdometerPoint::parse(F, "1a", OdometerPoint::Kind::FiniteSupport), ParseError);
    }

    TEST_CASE("membership is hereditary")
    {
        KneadingMap F = KneadingMap::fibonacci();
        for (std::uint32_t m = 0; m < (1u << 12); ++m) {
            std::vector<std::uint8_t> w(12);
            for (std::size_t i = 0; i < 12; ++i)
                w[i] = (m >> i) & 1;
            if (!membership(w, F))
                continue;
            for (std::size_t l = 0; l < w.size(); ++l)
                CHECK(membership(std::vector<std::uint8_t>(w.begin(), w.begin() + l), F));
        }
    }

    TEST_CASE("successor and predecessor examples")
    {
        KneadingMap F = KneadingMap::fibonacci();
        auto fin = OdometerPoint::Kind::FiniteSupport;
        CHECK(successor(expand(0, F)).word() == "1");
        CHECK(successor(OdometerPoint::parse(F, "101", fin)).word() == "0001");
        CHECK(predecessor(OdometerPoint::parse(F, "0001", fin)).word() == "101");
        CHECK(predecessor(expand(1, F)) == expand(0, F));
        CHECK_THROWS_AS(predecessor(expand(0, F)), DomainError);
    }

    TEST_CASE("successor, predecessor and the carry rule agree with expand")
    {
        for (const auto& [name, Q] : maps()) {
            CAPTURE(name);
            OdometerPoint x = expand(0, Q);
            for (std::uint64_t n = 0; n < 10000; ++n) {
                OdometerPoint y = successor(x);
                CHECK(y == expand(n + 1, Q));
                CHECK(y.sigma() == x.sigma() + 1);
                if (n < 3000) {
                    CHECK(carry_successor(x) == y);
                    CHECK(predecessor(y) == x);
                }
                x = std::move(y);
            }
        }
    }

    TEST_CASE("truncated points")
    {
        KneadingMap F = KneadingMap::fibonacci();
        auto tr = OdometerPoint::Kind::Truncated;
        OdometerPoint x = OdometerPoint::parse(F, "1000", tr);
        OdometerPoint y = successor(x);
        CHECK(y.kind() == tr);
        CHECK(y.word() == "0100");
        CHECK(predecessor(y) == x);
        // 2 + 5 + 1 = 8 = S_4 lies outside the window.
        CHECK_THROWS_AS(successor(OdometerPoint::parse(F, "0101", tr)), UnresolvedError);
        CHECK_THROWS_AS(successor(OdometerPoint::parse(KneadingMap::doubling(), "1111", tr)), UnresolvedError);
        CHECK_THROWS_AS(predecessor(OdometerPoint::parse(F, "0000", tr)), UnresolvedError);
    }

    TEST_CASE("sigma and q(x)")
    {
        KneadingMap F = KneadingMap::fibonacci();
        OdometerPoint x = OdometerPoint::parse(F, "0101", OdometerPoint::Kind::FiniteSupport);
        CHECK(x.first_one() == 1u);
        CHECK(x.sigma(0) == 0);
        CHECK(x.sigma(1) == 2);
        CHECK(x.sigma(3) == 7);
        CHECK_FALSE(expand(0, F).first_one().has_value());
    }

    TEST_CASE("classical projection on the dyadic odometer")
    {
        KneadingMap D = KneadingMap::doubling();
        CHECK(classical_projection(expand(5, D), 2) == 1);
        for (std::uint64_t n = 0; n < 100; ++n)
            CHECK(classical_projection(expand(n, D), 3) == n % 8);
        for (std::uint64_t j = 1; j < 12; ++j)
            CHECK(D.S(j + 1) % D.S(j) == 0);
        for (std::uint64_t n = 0; n < 2000; ++n) {
            OdometerPoint x = expand(n, D);
            for (std::uint64_t j = 1; j <= 6; ++j)
                CHECK(classical_projection(successor(x), j) == (classical_projection(x, j) + 1) % D.S(j));
        }
        // Q(4) = 2 != 3 for the Fibonacci map.
        CHECK_THROWS_AS(classical_projection(expand(3, KneadingMap::fibonacci()), 3), DomainError);
    }
}
