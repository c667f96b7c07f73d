#include "postcrit/errors.hpp"
#include "postcrit/interval.hpp"

#include <doctest.h>

#include <cmath>

using namespace pcs;

namespace {

constexpr unsigned prec = 256;

Real R(const char* s) { return Real::parse(s, prec); }

std::vector<std::uint64_t> fibonacci_prefix(std::uint64_t K)
{
    std::vector<std::uint64_t> Q;
    KneadingMap F = KneadingMap::fibonacci();
    for (std::uint64_t k = 0; k <= K; ++k)
        Q.push_back(F.at(k));
    return Q;
}

bool contains(const std::pair<Real, Real>& D, const Real& x) { return D.first <= x && x <= D.second; }

}  // namespace

TEST_SUITE("interval")
{
    TEST_CASE("map shapes")
    {
        UnimodalMap f = UnimodalMap::logistic("3.8");
        CHECK_NOTHROW(f.check_shape());
        CHECK(f(f.critical()) == R("0.95"));
        CHECK(UnimodalMap::tent("1.5")(R("0.25")) == R("0.375"));
        CHECK_THROWS_AS(UnimodalMap::logistic("4.5"), DomainError);
        CHECK_THROWS_AS(UnimodalMap::tent("0"), DomainError);
        CHECK_THROWS_AS(UnimodalMap::logistic("2").check_kneading_precondition(), DomainError);
        CHECK_THROWS_AS(d_intervals(UnimodalMap::logistic("3"), 5), DomainError);
    }

    TEST_CASE("the full tent map cuts at every time")
    {
        UnimodalMap t = UnimodalMap::tent("2");
        DnSequence d = d_intervals(t, 8);
        CHECK(d.cutting == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8});
        CHECK(d.degenerate);
        ExtractedKneading k = kneading_from_map(t, 8);
        CHECK(k.Q == std::vector<std::uint64_t>(9, 0));
        for (std::uint64_t i = 0; i <= 8; ++i)
            CHECK(k.S[i] == i + 1);
    }

    TEST_CASE("D_n follows the interval recursion")
    {
        for (const char* lambda : {"3.7", "3.83", "3.95"}) {
            UnimodalMap f = UnimodalMap::logistic(lambda);
            DnSequence d = d_intervals(f, 80);
            const Real& c = f.critical();
            std::pair<Real, Real> D{c, f(c)};
            for (std::uint64_t n = 1; n <= 80; ++n) {
                CAPTURE(n);
                auto got = d.interval(n);
                CHECK(got.first == D.first);
                CHECK(got.second == D.second);
                bool cut = contains(D, c);
                CHECK(d.steps[n - 1].cut == cut);
                if (n == 80)
                    break;
                if (cut) {
                    Real a = d.orbit[n + 1], b = d.orbit[1];
                    D = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
                } else {
                    Real a = f(D.first), b = f(D.second);
                    D = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
                }
            }
            CHECK(d.cutting[0] == 1);
            CHECK(d.cutting[1] == 2);
        }
    }

    TEST_CASE("extracted cutting times satisfy the recursion")
    {
        for (const char* lambda : {"3.7", "3.83", "3.9", "3.99"}) {
            ExtractedKneading k = kneading_from_map(UnimodalMap::logistic(lambda), 12);
            for (std::uint64_t i = 1; i <= 12; ++i) {
                CHECK(k.Q[i] < i);
                CHECK(k.S[i] - k.S[i - 1] == k.S[k.Q[i]]);
            }
            CHECK(kneading_sequence(k.Q) == itinerary(UnimodalMap::logistic(lambda), k.S.back()));
        }
    }

    TEST_CASE("the logistic map at 4 lands on a fixed point")
    {
        UnimodalMap f = UnimodalMap::logistic("4");
        ExtractedKneading k = kneading_from_map(f, 6);
        CHECK(k.degenerate);
        CHECK(k.degenerate_at == 2);
        DnOptions strict;
        strict.strict = true;
        CHECK_THROWS_AS(kneading_from_map(f, 6, strict), DomainError);
    }

    TEST_CASE("too many fragile verdicts")
    {
        DnOptions o;
        o.tol_exp = 0;  // everything is fragile
        o.fragile_budget = 3;
        CHECK_THROWS_AS(kneading_from_map(UnimodalMap::logistic("3.9"), 10, o), PrecisionError);
    }

    TEST_CASE("kneading sequences and their order")
    {
        // Q = 0, 0, 0: 1 then 1 0 forced, then the copy rule.
        CHECK(kneading_sequence({0, 0}) == std::vector<std::uint8_t>{1, 0});
        CHECK(kneading_sequence({0, 0, 0}) == std::vector<std::uint8_t>{1, 0, 0});
        CHECK(kneading_sequence({0, 0, 1}) == std::vector<std::uint8_t>{1, 0, 1, 1});
        CHECK(compare_itineraries({1, 0}, {1, 1}) > 0);
        CHECK(compare_itineraries({0, 0}, {0, 1}) < 0);
        CHECK(compare_itineraries({1, 2}, {1, 0}) < 0);
        CHECK(compare_itineraries({1, 0, 1}, {1, 0, 1}) == 0);
    }

    TEST_CASE("parameter search round trips")
    {
        SearchOptions so;
        ParameterResult tent = find_parameter(Family::Tent, std::vector<std::uint64_t>(9, 0), so);
        CHECK(tent.check.Q == std::vector<std::uint64_t>(9, 0));

        auto target = fibonacci_prefix(10);
        ParameterResult fib = find_parameter(Family::Logistic, target, so);
        CHECK(fib.lo <= fib.param);
        CHECK(fib.param <= fib.hi);
        ExtractedKneading back = kneading_from_map(UnimodalMap(Family::Logistic, fib.param), 10);
        CHECK(back.Q == target);
        DnSequence d = d_intervals(UnimodalMap(Family::Logistic, fib.param), 100);
        CHECK(std::vector<std::uint64_t>(d.cutting.begin(), d.cutting.begin() + 6)
              == std::vector<std::uint64_t>{1, 2, 3, 5, 8, 13});

        CHECK_THROWS_AS(find_parameter(Family::Logistic, {0, 1, 1}, so), DomainError);
    }

    TEST_CASE("doubling prefix round trip")
    {
        std::vector<std::uint64_t> target{0, 0, 1, 2, 3, 4, 5};
        ParameterResult p = find_parameter(Family::Logistic, target, SearchOptions{});
        ExtractedKneading k = kneading_from_map(UnimodalMap(Family::Logistic, p.param), 6);
        CHECK(k.Q == target);
        CHECK(k.S == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32, 64});
    }

    TEST_CASE("projection of finite-support points")
    {
        UnimodalMap f = UnimodalMap::logistic("3.9");
        KneadingMap F = KneadingMap::fibonacci();
        Projection p0 = project_point(f, expand(0, F));
        CHECK(p0.point);
        CHECK(p0.lo == f.critical());
        Projection p3 = project_point(f, expand(3, F));
        CHECK(p3.lo == f(f(f(f.critical()))));
        CHECK(p3.hi == p3.lo);
    }

    TEST_CASE("projection of a truncated point shrinks")
    {
        ParameterResult fib = find_parameter(Family::Logistic, fibonacci_prefix(14), SearchOptions{});
        UnimodalMap f(Family::Logistic, fib.param);
        KneadingMap F = KneadingMap::fibonacci();
        OdometerPoint x = OdometerPoint::parse(F, "1010101010101", OdometerPoint::Kind::Truncated);
        Projection p = project_point(f, x);
        CHECK_FALSE(p.point);
        REQUIRE(p.steps.size() >= 3);
        for (std::size_t i = 1; i < p.steps.size(); ++i) {
            const auto &a = p.steps[i - 1], &b = p.steps[i];
            CHECK(a.lo <= b.lo);
            CHECK(b.hi <= a.hi);
            CHECK(b.hi - b.lo <= a.hi - a.lo);
        }
        // Each interval holds the orbit point at the partial sum.
        for (const auto& s : p.steps) {
            Real y = f.critical();
            for (std::uint64_t i = 0; i < to_u64(s.sigma, "sigma"); ++i)
                y = f(y);
            CHECK(s.lo <= y);
            CHECK(y <= s.hi);
        }
        CHECK(p.hi - p.lo < p.steps.front().hi - p.steps.front().lo);
    }

    TEST_CASE("projection needs the kneading prefix of the word")
    {
        KneadingMap F = KneadingMap::fibonacci();
        OdometerPoint x = OdometerPoint::parse(F, "1010101010101", OdometerPoint::Kind::Truncated);
        CHECK_THROWS(project_point(UnimodalMap::logistic("3.7"), x));
    }

    TEST_CASE("Lyapunov averages")
    {
        // Exact binary iteration reaches 1/2 after about prec steps.
        LyapunovResult t = lyapunov(UnimodalMap::tent("2"), R("0.3"), 200);
        CHECK(t.average == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        LyapunovResult l = lyapunov(UnimodalMap::logistic("4"), R("0.2718281828"), 200000);
        CHECK(std::fabs(l.average - std::log(2.0)) < 0.02);
        CHECK(l.trace.back().first == 200000);
        CHECK(l.trace.front().first == 10);
        LyapunovResult c = lyapunov(UnimodalMap::logistic("3.9"), R("0.5"), 10);
        CHECK(c.hit_critical);
        CHECK(std::isinf(c.average));
    }

    TEST_CASE("hex output replays exactly")
    {
        Real x = R("3.912406999143248102828424");
        CHECK(Real::parse(x.hex(), prec) == x);
        CHECK(Real::parse("0x1.8p+1", 64) == Real::from_int(3, 64));
        CHECK_THROWS_AS(Real::parse("three", 64), ParseError);
    }
}
