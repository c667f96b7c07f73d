#include "postcrit/json_io.hpp"
#include "postcrit/kneading.hpp"
#include "postcrit/simplex.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using namespace pcs;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args)
{
    std::string cmd = std::string(POSTCRIT_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("odometer successor")
    {
        Run r = cli("odometer succ --word 101 --map fibonacci");
        CHECK(r.code == 0);
        Json j = Json::parse(r.out);
        CHECK(j["word"] == "0001");
        CHECK(j["sigma"] == "5");
    }

    TEST_CASE("determinants from a spec file equal the library values")
    {
        Run r = cli("simplex dets --spec " + data("cantor.json") + " --depth 3");
        REQUIRE(r.code == 0);
        Json j = Json::parse(r.out);
        KneadingMap Q = KneadingMap::resonant(ResonantSpec::cantor());
        REQUIRE(j["dets"].size() == 3);
        for (std::uint64_t r = 1; r <= 3; ++r)
            CHECK(j["dets"][r - 1].get<std::string>() == str(det_a(Q, r).matrix_det));
    }

    TEST_CASE("exit codes")
    {
        CHECK(cli("simplex dets --spec /nonexistent.json").code == 1);
        CHECK(cli("simplex dets --spec " + data("broken.json")).code == 1);
        CHECK(cli("odometer frobnicate").code == 1);
        CHECK(cli("interval knead --param 4.5 --prec 12").code == 1);

        Run dom = cli("interval knead --family logistic --param 2");
        CHECK(dom.code == 2);
        Json e = Json::parse(dom.out);
        CHECK(e["error"] == "domain");
        CHECK(e.contains("message"));

        Run hz = cli("knead times --spec " + data("short.json") + " --horizon 600");
        CHECK(hz.code == 2);
        CHECK(Json::parse(hz.out)["error"] == "horizon");

        CHECK(cli("odometer pred --word 0 --map fibonacci").code == 2);
        CHECK(cli("odometer succ --word 0101 --map fibonacci --truncated").code == 2);
    }

    TEST_CASE("every subcommand answers")
    {
        const std::string cantor = " --spec " + data("cantor.json");
        for (const std::string& args : {
                 std::string("knead times --map fibonacci --horizon 6"),
                 std::string("knead admissible --map fibonacci --horizon 20"),
                 "knead product" + cantor + " --depth 2",
                 "knead norma" + cantor + " --depth 3",
                 std::string("odometer expand --n 7 --map fibonacci"),
                 std::string("odometer member --word 101 --map fibonacci"),
                 std::string("odometer classical --word 101 --k 2 --map doubling"),
                 std::string("bratteli stage --map fibonacci --level 5"),
                 std::string("bratteli heights --map fibonacci --level 5"),
                 std::string("bratteli matrix --map fibonacci --level 5"),
                 std::string("bratteli product-rank --map finite:2 --r 1"),
                 "simplex intertwine" + cantor + " --depth 2 --deep 13",
                 "simplex threads" + cantor + " --depth 4",
                 "simplex realize --tree " + data("binary_tree.json") + " --depth 2",
                 std::string("simplex certify --map finite:2 --depth 1 --to 3"),
                 std::string("simplex contract --map finite:3 --r 1 --depth 2 --to 4 --deep 13"),
                 std::string("interval knead --family tent --param 2 --horizon 8"),
                 std::string("interval project --family logistic --param 3.9 --map fibonacci --word 001"),
                 std::string("interval lyapunov --family tent --param 2 --x0 0.3 --n 100"),
             }) {
            CAPTURE(args);
            Run r = cli(args);
            CHECK(r.code == 0);
            CHECK(Json::accept(r.out));
        }
    }

    TEST_CASE("selected answers")
    {
        Json t = Json::parse(cli("knead times --map fibonacci --horizon 6").out);
        CHECK(t["S"] == Json::array({"1", "2", "3", "5", "8", "13", "21"}));
        Json m = Json::parse(cli("odometer member --word 11 --map fibonacci").out);
        CHECK(m["member"] == false);
        Json c = Json::parse(cli("odometer classical --word 101 --k 2 --map doubling").out);
        CHECK(c["residue"] == "1");
        Json k = Json::parse(cli("interval knead --family tent --param 2 --horizon 8").out);
        CHECK(k["Q"] == Json::array({"0", "0", "0", "0", "0", "0", "0", "0", "0"}));
        Json pr = Json::parse(cli("bratteli product-rank --map finite:2 --r 1").out);
        CHECK(pr["rank"] == "2");
    }

    TEST_CASE("output is deterministic")
    {
        const std::string args = "simplex contract --map cantor --r 1 --depth 2 --to 4 --seed 9 --deep 13";
        Run a = cli(args), b = cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        Run c = cli("simplex contract --map cantor --r 1 --depth 2 --to 4 --seed 10 --deep 13");
        CHECK(c.out != a.out);
    }

    TEST_CASE("text format")
    {
        Run r = cli("odometer succ --word 101 --map fibonacci --format text");
        CHECK(r.code == 0);
        CHECK(r.out.find("word: 0001") != std::string::npos);
    }
}
