#include "postcrit/errors.hpp"
#include "postcrit/json_io.hpp"
#include "postcrit/kneading.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace pcs;
using namespace pcs::testing;

namespace {

std::vector<BigInt> as_big(std::initializer_list<long> v)
{
    std::vector<BigInt> out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

// S_0..S_K by the recursion, reading Q one value at a time.
std::vector<BigInt> recurse_S(const KneadingMap& Q, std::uint64_t K)
{
    std::vector<BigInt> S{1};
    for (std::uint64_t k = 1; k <= K; ++k)
        S.push_back(S[k - 1] + S[Q.at(k)]);
    return S;
}

}  // namespace

TEST_SUITE("kneading")
{
    TEST_CASE("cutting times of the closed-form maps")
    {
        CHECK(cutting_times(KneadingMap::fibonacci(), 6).S == as_big({1, 2, 3, 5, 8, 13, 21}));
        CHECK(cutting_times(KneadingMap::zero(), 5).S == as_big({1, 2, 3, 4, 5, 6}));
        CHECK(cutting_times(KneadingMap::doubling(), 5).S == as_big({1, 2, 4, 8, 16, 32}));
    }

    TEST_CASE("table maps stop at their horizon")
    {
        KneadingMap t = KneadingMap::table({0, 0, 1});
        CHECK(cutting_times(t, 2).S == as_big({1, 2, 4}));
        CHECK_THROWS_AS(cutting_times(t, 3), HorizonError);
        CHECK_THROWS_AS(t.at(3), HorizonError);
    }

    TEST_CASE("memoized and closed-form S agree with the plain recursion")
    {
        for (const auto& name : builtin_spec_names()) {
            KneadingMap Q = KneadingMap::resonant(deep_spec(name));
            auto S = recurse_S(Q, 1200);
            for (std::uint64_t k = 0; k <= 1200; k += 7)
                CHECK(Q.S(k) == S[k]);
            CHECK(cutting_times(Q, 1200).S == S);
        }
        auto S = recurse_S(KneadingMap::fibonacci(), 90);
        for (std::uint64_t k = 0; k <= 90; ++k)
            CHECK(KneadingMap::fibonacci().S(k) == S[k]);
    }

    TEST_CASE("the recursion holds across block boundaries at huge indices")
    {
        for (const auto& name : builtin_spec_names()) {
            ResonantSpec spec = deep_spec(name);
            KneadingMap Q = KneadingMap::resonant(spec);
            for (std::uint64_t r = 1; r <= 4; ++r) {
                for (const BigInt& base : {spec.q(r), spec.block_start(r)}) {
                    for (long d = -1; d <= 2; ++d) {
                        BigInt k = base + d;
                        CHECK(Q.S(k) - Q.S(BigInt(k - 1)) == Q.S(Q.value(k)));
                        CHECK(Q.S(k) > Q.S(BigInt(k - 1)));
                    }
                }
            }
        }
    }

    TEST_CASE("builtin b sequences")
    {
        ResonantSpec f3 = ResonantSpec::finite(3), c = ResonantSpec::cantor(), n = ResonantSpec::countable();
        std::vector<std::uint64_t> b3, bc, bn;
        for (std::uint64_t r = 0; r <= 5; ++r) {
            b3.push_back(f3.b(r));
            bc.push_back(c.b(r));
            bn.push_back(n.b(r));
        }
        CHECK(b3 == std::vector<std::uint64_t>{0, 3, 4, 5, 6, 7});
        CHECK(bc == std::vector<std::uint64_t>{0, 2, 4, 6, 8, 10});
        for (std::uint64_t r = 0; r <= 200; ++r)
            CHECK(n.b(r) == countable_b(r));
        // r = 5: 5 + floor((sqrt(41) - 1) / 2) = 7
        CHECK(n.b(5) == 7);
        CHECK_THROWS_AS(ResonantSpec::finite(0), DomainError);
    }

    TEST_CASE("tower levels and the level cap")
    {
        ResonantSpec s = ResonantSpec::cantor();
        CHECK(s.q(0) == 0);
        CHECK(s.q(1) == 6);
        CHECK(s.q(2) == 510);
        CHECK(s.q(3) == pow2(27) - 2);
        CHECK_THROWS_AS(s.q(5), HorizonError);
        CHECK(s.with_level_cap(6).q(5) == pow2(243) - 2);
    }

    TEST_CASE("resonant blocks")
    {
        KneadingMap Q = KneadingMap::resonant(ResonantSpec::cantor());
        for (std::uint64_t k = 0; k <= 510; ++k)
            CHECK(Q.at(k) == 0);
        CHECK(Q.at(511) == 6);

        // b(r) = r: every block is {q_r + 1, ..., q_{r+1}}.
        ResonantSpec id(LevelSequence::tower(), BSequence::list({0, 1, 2, 3, 4, 5, 6}), 6);
        KneadingMap I = KneadingMap::resonant(id);
        for (std::uint64_t r = 1; r <= 4; ++r) {
            CHECK(I.value(BigInt(id.q(r) + 1)) == id.q(r));
            CHECK(I.value(id.q(r)) == id.q(r - 1));
        }

        ResonantSpec f2 = deep_spec("finite:2");
        KneadingMap F = KneadingMap::resonant(f2);
        for (std::uint64_t r = 1; r <= 3; ++r) {
            BigInt lo = f2.q(f2.b(r)) + 1, hi = f2.q(f2.b(r + 1));
            CHECK(f2.block_start(r) == lo);
            CHECK(F.value(lo) == f2.q(r));
            CHECK(F.value(hi) == f2.q(r));
            CHECK(F.value(BigInt(lo - 1)) == f2.q(r - 1));
            CHECK(F.value(BigInt(hi + 1)) == f2.q(r + 1));
        }
    }

    TEST_CASE("resonant maps are non-decreasing with image {q_r}")
    {
        for (const auto& name : builtin_spec_names()) {
            ResonantSpec spec = deep_spec(name);
            KneadingMap Q = KneadingMap::resonant(spec);
            CHECK(Q.nondecreasing());
            CHECK(Q.diverging());
            std::uint64_t prev = 0;
            for (std::uint64_t k = 0; k <= 3000; ++k) {
                std::uint64_t v = Q.at(k);
                CHECK(v >= prev);
                bool in_image = false;
                for (std::uint64_t r = 0; r <= 3; ++r)
                    in_image = in_image || spec.q(r) == v;
                CHECK(in_image);
                prev = v;
            }
            for (std::uint64_t r = 0; r <= 4; ++r)
                CHECK(Q.next_image_at_least(spec.q(r)) == spec.q(r));
        }
    }

    TEST_CASE("admissibility")
    {
        CHECK(is_admissible(KneadingMap::fibonacci(), 20).verdict == Verdict::Admissible);
        CHECK(is_admissible(KneadingMap::zero(), 20).verdict == Verdict::Admissible);
        CHECK(is_admissible(KneadingMap::resonant(ResonantSpec::cantor()), 600).verdict == Verdict::Admissible);

        auto bad = is_admissible(KneadingMap::table({0, 1, 1}), 2);
        CHECK(bad.verdict == Verdict::NotAdmissible);
        CHECK(bad.witness == 1);

        // Q(3) = 2 compares Q(4), ... = 0, ... with Q(2), ... = 1, ...
        auto lex = is_admissible(KneadingMap::table({0, 0, 1, 2, 0, 0, 0}), 6);
        CHECK(lex.verdict == Verdict::NotAdmissible);
        CHECK(lex.witness == 3);

        // A table of zeros never breaks the tie inside its own prefix.
        CHECK(is_admissible(KneadingMap::table({0, 0, 0, 0, 0}), 4).verdict == Verdict::Indeterminate);
    }

    TEST_CASE("divergence product")
    {
        ResonantSpec c = ResonantSpec::cantor();
        CHECK(divergence_product(c, 1) == ratio(6, 7));
        CHECK(divergence_product(c, 2) == ratio(6, 7) * ratio(504, 511));
        ResonantSpec unit(LevelSequence::list(as_big({0, 1, 2, 3})), BSequence::list({0, 1, 2, 3}));
        CHECK(divergence_product(unit, 1) == ratio(1, 2));
        for (const auto& name : builtin_spec_names()) {
            auto p = divergence_partials(builtin_spec(name), 4);
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK(p[i] > 0);
                if (i)
                    CHECK(p[i] <= p[i - 1]);
            }
        }
        CHECK_THROWS_AS(divergence_product(c, 0), DomainError);
    }

    TEST_CASE("growth inequality")
    {
        ResonantSpec tower = ResonantSpec::cantor();
        CHECK(check_norma(tower, 2));
        CHECK(check_norma(tower, 3));
        ResonantSpec slow(LevelSequence::list(as_big({0, 1, 2, 3, 4})), BSequence::list({0, 1, 2, 3, 4}));
        CHECK_FALSE(check_norma(slow, 3));
        ResonantSpec ten(LevelSequence::list(as_big({0, 10, 10000})), BSequence::list({0, 1, 2}));
        CHECK(check_norma(ten, 1) == (10000 - 10 >= 1 * 11));
    }

    TEST_CASE("level growth bounds S at the levels")
    {
        for (const auto& name : builtin_spec_names()) {
            ResonantSpec spec = deep_spec(name);
            KneadingMap Q = KneadingMap::resonant(spec);
            for (std::uint64_t r = 0; r <= 4; ++r)
                CHECK(Q.S(spec.q(r)) <= level_growth_bound(spec, r));
        }
    }

    TEST_CASE("spec JSON round trip")
    {
        for (const auto& name : builtin_spec_names()) {
            ResonantSpec s = builtin_spec(name);
            ResonantSpec t = spec_from_json(spec_to_json(s));
            for (std::uint64_t r = 0; r <= 20; ++r)
                CHECK(s.b(r) == t.b(r));
            CHECK(t.describe() == s.describe());
        }
        Json j = Json::parse(R"({"q": [0, "6", 510], "b": [0, 2, 4]})");
        ResonantSpec s = spec_from_json(j);
        CHECK(s.q(2) == 510);
        CHECK_THROWS_AS(s.q(3), HorizonError);
        CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"q": "squares", "b": [0]})")), ParseError);
        CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"b": [0]})")), ParseError);
        CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), ParseError);
    }
}
