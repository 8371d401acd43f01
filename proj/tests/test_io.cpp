#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "helpers.hpp"
#include "re100/econ.hpp"
#include "re100/profile_io.hpp"
#include "re100/serialize.hpp"

using namespace re100;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("re100_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int counter() {
        static int n = 0;
        return n++;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_fixture(const std::string& path, int rows,
                   const std::string& tamper_cell = "", int tamper_row = -1) {
    std::ofstream out(path);
    out << "timestamp,demand,pv,wt\n";
    testing::Rng rng(7);
    for (int t = 0; t < rows; ++t) {
        if (t == tamper_row) {
            out << t << "," << tamper_cell << "\n";
            continue;
        }
        out << t << "," << 0.8 + 0.4 * rng.uniform() << "," << rng.uniform() << ","
            << 0.2 + rng.uniform() << "\n";
    }
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("ingest a full-year fixture") {
    TempDir dir;
    auto path = dir.file("year.csv");
    write_fixture(path, 8760);
    auto set = ingest_occto(path, "tohoku", "2018");
    CHECK(set.steps() == 8760);
    CHECK(set.generations.size() == 2);
    CHECK(set.generations[0].first == "pv");
    CHECK(set.generations[1].first == "wt");
    CHECK(set.region == "tohoku");
    double sum = 0.0;
    for (double v : set.demand.values()) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("leap years keep their native length") {
    TempDir dir;
    auto path = dir.file("leap.csv");
    write_fixture(path, 8784);
    auto set = ingest_occto(path, "tohoku", "2016");
    CHECK(set.steps() == 8784);
}

TEST_CASE("negative cells are rejected with their location") {
    TempDir dir;
    auto path = dir.file("bad.csv");
    write_fixture(path, 48, "-0.25,0.5,0.5", 10);
    CHECK_THROWS_WITH_AS(ingest_occto(path, "r", "y"), doctest::Contains("row 12"),
                         IngestError);
}

TEST_CASE("short gaps interpolate, long gaps fail") {
    TempDir dir;
    auto short_gap = dir.file("short.csv");
    {
        std::ofstream out(short_gap);
        out << "timestamp,demand,pv\n";
        for (int t = 0; t < 24; ++t) {
            if (t >= 6 && t <= 8)
                out << t << ",,0.5\n";  // 3 missing demand hours
            else
                out << t << ",1.0,0.5\n";
        }
    }
    IngestReport report;
    auto set = ingest_occto(short_gap, "r", "y", &report);
    CHECK(set.steps() == 24);
    REQUIRE(report.notes.size() == 1);
    CHECK(report.notes[0].find("interpolated 3") != std::string::npos);
    // Interpolation between equal neighbors reproduces the level.
    CHECK(set.demand.values()[6] == doctest::Approx(set.demand.values()[5]));

    auto long_gap = dir.file("long.csv");
    {
        std::ofstream out(long_gap);
        out << "timestamp,demand,pv\n";
        for (int t = 0; t < 24; ++t) {
            if (t >= 6 && t <= 9)
                out << t << ",,0.5\n";  // 4 missing hours
            else
                out << t << ",1.0,0.5\n";
        }
    }
    CHECK_THROWS_AS(ingest_occto(long_gap, "r", "y"), IngestError);
}

TEST_CASE("gaps crossing the wrap interpolate circularly") {
    TempDir dir;
    auto path = dir.file("wrap.csv");
    {
        std::ofstream out(path);
        out << "timestamp,demand,pv\n";
        for (int t = 0; t < 24; ++t) {
            bool missing = t == 23 || t == 0;  // the series is periodic
            if (missing)
                out << t << ",nan,0.5\n";
            else
                out << t << "," << (t == 22 ? 2.0 : 1.0) << ",0.5\n";
        }
    }
    IngestReport report;
    auto set = ingest_occto(path, "r", "y", &report);
    REQUIRE(report.notes.size() == 1);
    // neighbors are hour 22 (value 2) and hour 1 (value 1): thirds in between
    double total = 21.0 * 1.0 + 2.0 + 5.0 / 3.0 + 4.0 / 3.0;
    CHECK(set.demand.values()[23] == doctest::Approx((5.0 / 3.0) / total));
    CHECK(set.demand.values()[0] == doctest::Approx((4.0 / 3.0) / total));
}

TEST_CASE("malformed tables are rejected") {
    TempDir dir;
    auto ragged = dir.file("ragged.csv");
    write_fixture(ragged, 24, "0.5,0.5", 5);  // one cell short
    CHECK_THROWS_AS(ingest_occto(ragged, "r", "y"), IngestError);

    auto nonnum = dir.file("nonnum.csv");
    write_fixture(nonnum, 24, "abc,0.5,0.5", 5);
    CHECK_THROWS_WITH_AS(ingest_occto(nonnum, "r", "y"), doctest::Contains("non-numeric"),
                         IngestError);

    auto headerless = dir.file("head.csv");
    {
        std::ofstream out(headerless);
        out << "time,load,pv\n0,1,1\n1,1,1\n";
    }
    CHECK_THROWS_AS(ingest_occto(headerless, "r", "y"), IngestError);
}

TEST_CASE("export then ingest is byte-stable") {
    TempDir dir;
    auto raw = dir.file("raw.csv");
    write_fixture(raw, 240);
    auto set = ingest_occto(raw, "r", "y");

    auto first = dir.file("first.csv");
    export_occto(set, first);
    auto reread = ingest_occto(first, "r", "y");
    auto second = dir.file("second.csv");
    export_occto(reread, second);

    CHECK(read_file(first) == read_file(second));
    // And a file in the documented (exported) format round-trips exactly.
    auto third = dir.file("third.csv");
    export_occto(ingest_occto(second, "r", "y"), third);
    CHECK(read_file(second) == read_file(third));
}

TEST_CASE("production function text round-trips") {
    auto d = testing::random_demand(72, 21);
    auto g = testing::random_generation(72, 22);
    auto pf = partial_sum_hull(d, g);
    auto text = to_text(pf);
    auto parsed = production_function_from_text(text);
    // 15 significant digits: one parse is print-stable, values match to 1e-14.
    CHECK(to_text(parsed) == text);
    REQUIRE(parsed.segments().size() == pf.segments().size());
    for (std::size_t k = 0; k < pf.segments().size(); ++k) {
        CHECK(parsed.segments()[k].slope ==
              doctest::Approx(pf.segments()[k].slope).epsilon(1e-14));
        CHECK(parsed.segments()[k].intercept ==
              doctest::Approx(pf.segments()[k].intercept).epsilon(1e-14));
        CHECK(parsed.segments()[k].interval == pf.segments()[k].interval);
    }
    REQUIRE(parsed.vertices().size() == pf.vertices().size());
    for (double x : {1.0, 1.5, 2.0, 3.0})
        CHECK(parsed.eval(x) == doctest::Approx(pf.eval(x)).epsilon(1e-13));
}

TEST_CASE("bottleneck reports round-trip through text") {
    auto d = testing::random_demand(48, 41);
    auto g = testing::random_generation(48, 42);
    auto report = partial_sum_hull(d, g).bottleneck_at(1.4);
    auto parsed = bottleneck_report_from_text(to_text(report));
    CHECK(parsed.interval == report.interval);
    CHECK(parsed.x_s == doctest::Approx(report.x_s).epsilon(1e-14));
    CHECK(parsed.dem_sum == doctest::Approx(report.dem_sum).epsilon(1e-14));
    CHECK(parsed.gen_sum == doctest::Approx(report.gen_sum).epsilon(1e-14));
    CHECK(parsed.degenerate == report.degenerate);
    CHECK(to_text(parsed) == to_text(report));
}

TEST_CASE("cost function text embeds its source") {
    auto d = testing::random_demand(48, 31);
    auto g = testing::random_generation(48, 32);
    auto pf = partial_sum_hull(d, g);
    TechCosts costs;
    costs.c_g = 3.2;
    costs.c_s = 77.0;
    auto text = to_text(legendre(pf), costs);
    TechCosts parsed_costs;
    auto cf = cost_function_from_text(text, &parsed_costs);
    CHECK(parsed_costs.c_g == 3.2);
    CHECK(parsed_costs.c_s == 77.0);
    auto reference = legendre(pf);
    REQUIRE(cf.regions().size() == reference.regions().size());
    for (std::size_t k = 0; k < cf.regions().size(); ++k) {
        CHECK(cf.regions()[k].vertex.x_g ==
              doctest::Approx(reference.regions()[k].vertex.x_g).epsilon(1e-14));
        CHECK(cf.regions()[k].vertex.x_s ==
              doctest::Approx(reference.regions()[k].vertex.x_s).epsilon(1e-14));
    }
}

TEST_CASE("lp model and solution fixtures round-trip") {
    Profile d({0.25, 0.25, 0.25, 0.25}, ProfileKind::demand, "d");
    Profile g({0.1, 0.4, 0.1, 0.4}, ProfileKind::generation, "g");
    TechCosts costs;
    costs.c_g = 1.0;
    costs.c_s = 5.0;
    auto model = build(LpVariant::simplest, d, g, costs);
    auto text = to_text(model);
    auto parsed = lp_model_from_text(text);
    CHECK(to_text(parsed) == text);

    auto solution = solve(model);
    auto sol_text = to_text(solution);
    auto sol_parsed = lp_solution_from_text(sol_text);
    CHECK(sol_parsed.status == solution.status);
    CHECK(sol_parsed.objective == solution.objective);
    CHECK(sol_parsed.x == solution.x);

    // The parsed model solves to the same optimum.
    auto resolved = solve(parsed);
    CHECK(resolved.objective == doctest::Approx(solution.objective).epsilon(1e-12));
}

TEST_CASE("frozen lp fixture stays parseable") {
    // Guards the documented format against accidental drift.
    const std::string fixture =
        "re100 lpmodel 1\n"
        "meta variant simplest\n"
        "meta t_steps 2\n"
        "vars 10\n"
        "x_g 1\nx_s 5\nx1[1] 0\nx2[1] 0\nx3[1] 0\ns[1] 0\nx1[2] 0\nx2[2] 0\nx3[2] 0\ns[2] 0\n"
        "demand 2\n0.5\n0.5\n"
        "generation 2\n1\n0\n"
        "rows 8\n"
        "gen[1] <= 0 3 2 1 3 1 0 -1\n"
        "demand[1] = 0.5 2 2 1 4 1\n"
        "balance[1] = 0 4 3 1 4 -1 9 1 5 -1\n"
        "soc[1] <= 0 2 5 1 1 -1\n"
        "gen[2] <= 0 3 6 1 7 1 0 -0\n"
        "demand[2] = 0.5 2 6 1 8 1\n"
        "balance[2] = 0 4 7 1 8 -1 5 1 9 -1\n"
        "soc[2] <= 0 2 9 1 1 -1\n"
        "end lpmodel\n";
    auto model = lp_model_from_text(fixture);
    CHECK(model.t_steps == 2);
    CHECK(model.rows.size() == 8);
    auto sol = solve(model);
    CHECK(sol.status == LpSolution::Status::optimal);
    // x_g = 1, storage shifts half the demand: L = 1 + 5 * 0.5
    CHECK(sol.objective == doctest::Approx(3.5).epsilon(1e-7));
}

}  // TEST_SUITE
