// End-to-end checks of the installed command line: runs the built binary
// (path in RE100_CLI) inside a temp directory and inspects files and exit
// codes.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "re100/serialize.hpp"

namespace {

std::string cli_path() {
    const char* env = std::getenv("RE100_CLI");
    return env ? env : "";
}

struct Run {
    int exit_code = -1;
    std::string output;
};

Run run_cli(const std::string& args) {
    Run result;
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) result.output += buf.data();
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("re100_cli_" + std::to_string(::getpid()) + "_" + std::to_string(next()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int next() {
        static int n = 0;
        return n++;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

const std::string kBlockInput =
    "--synth-demand uniform --synth-gen block:on_start=1,on_end=2 --steps 4";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("prodfn writes the structured file and plot") {
    if (cli_path().empty()) return;  // driven through ctest
    TempDir dir;
    auto out = dir.file("pf.txt");
    auto plot = dir.file("pf.svg");
    auto run = run_cli("prodfn " + kBlockInput + " --out " + out + " --plot " + plot);
    CHECK(run.exit_code == 0);

    auto pf = re100::production_function_from_text(re100::read_file(out));
    REQUIRE(pf.segments().size() == 1);
    CHECK(pf.segments()[0].slope == doctest::Approx(0.0));
    CHECK(pf.segments()[0].intercept == doctest::Approx(0.5));

    auto svg = re100::read_file(plot);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);

    // header carries tool version and invocation
    auto text = re100::read_file(out);
    CHECK(text.find("# re100 1.0.0") != std::string::npos);
    CHECK(text.find("# cmd: ") != std::string::npos);
}

TEST_CASE("prodfn is deterministic across runs") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto a = dir.file("a.txt"), b = dir.file("b.txt");
    std::string input = "--synth-demand seeded-noise-mix --synth-gen "
                        "seeded-noise-mix:noise=0.5 --steps 72 --seed 9";
    CHECK(run_cli("prodfn " + input + " --out " + a).exit_code == 0);
    CHECK(run_cli("prodfn " + input + " --out " + b).exit_code == 0);
    // identical apart from the cmd header line
    auto strip = [](const std::string& text) {
        std::string out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("# cmd:", 0) != 0) out += line + "\n";
        return out;
    };
    CHECK(strip(re100::read_file(a)) == strip(re100::read_file(b)));
}

TEST_CASE("costfn emits the worked contour") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto csv = dir.file("alt.csv");
    {
        // the worked instance: single deficit hour with G = 0.1, D = 0.25
        std::ofstream out(csv);
        out << "timestamp,demand,pv\n0,0.25,0.1\n1,0.25,0.4\n2,0.25,0.1\n3,0.25,0.4\n";
    }
    auto pf = dir.file("pf.txt");
    CHECK(run_cli("prodfn --data " + csv + " --out " + pf).exit_code == 0);
    auto table = dir.file("contours.tsv");
    auto run = run_cli("costfn --pf " + pf + " --contour 10 --contour 20 --table " + table);
    CHECK(run.exit_code == 0);
    auto text = re100::read_file(table);
    CHECK(text.find("ray-up") != std::string::npos);

    // homogeneity: the 20-contour is exactly twice the 10-contour
    std::istringstream in(text);
    std::string line;
    std::vector<std::array<double, 3>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("source", 0) == 0) continue;
        std::istringstream ls(line);
        std::string src, note;
        double level, c_g, c_s;
        ls >> src >> level >> c_g >> c_s;
        rows.push_back({level, c_g, c_s});
    }
    REQUIRE(rows.size() % 2 == 0);
    std::size_t half = rows.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        CHECK(rows[half + i][0] == doctest::Approx(2.0 * rows[i][0]));
        CHECK(rows[half + i][1] == doctest::Approx(2.0 * rows[i][1]));
        CHECK(rows[half + i][2] == doctest::Approx(2.0 * rows[i][2]));
    }
}

TEST_CASE("pv-ratio mixes two generation sources") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto csv = dir.file("two_sources.csv");
    {
        // complementary blocks: an even mix is uniform, so no storage needed
        std::ofstream out(csv);
        out << "timestamp,demand,pv,wt\n0,0.25,0.5,0\n1,0.25,0.5,0\n2,0.25,0,0.5\n"
               "3,0.25,0,0.5\n";
    }
    auto mixed = run_cli("prodfn --data " + csv + " --pv-ratio 0.5");
    CHECK(mixed.exit_code == 0);
    CHECK(mixed.output.find("x_s(1) = 0") != std::string::npos);
    auto pv_only = run_cli("prodfn --data " + csv + " --pv-ratio 1");
    CHECK(pv_only.output.find("x_s(1) = 0.5") != std::string::npos);
    // ambiguous without a ratio or source choice
    CHECK(run_cli("prodfn --data " + csv).exit_code == 1);
    CHECK(run_cli("prodfn --data " + csv + " --source wt").exit_code == 0);
}

TEST_CASE("costfn overlays several production functions") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto pf_a = dir.file("a.txt"), pf_b = dir.file("b.txt"), plot = dir.file("c.svg");
    CHECK(run_cli("prodfn " + kBlockInput + " --out " + pf_a).exit_code == 0);
    CHECK(run_cli("prodfn --synth-demand seeded-noise-mix --synth-gen seeded-noise-mix "
                  "--steps 48 --seed 2 --out " + pf_b).exit_code == 0);
    auto run = run_cli("costfn --pf " + pf_a + " --pf " + pf_b + " --plot " + plot);
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("2 source(s)") != std::string::npos);
    CHECK(re100::read_file(plot).find("polyline") != std::string::npos);
}

TEST_CASE("gd-curve writes boundary, points and plot") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto table = dir.file("gd.tsv");
    auto points = dir.file("cloud.tsv");
    auto plot = dir.file("gd.svg");
    auto run = run_cli("gd-curve --synth-demand seeded-noise-mix --synth-gen "
                       "seeded-noise-mix --steps 48 --seed 3 --table " + table +
                       " --points " + points + " --plot " + plot);
    CHECK(run.exit_code == 0);
    CHECK(re100::read_file(table).find("G\tD") != std::string::npos);
    CHECK(re100::read_file(plot).find("D = G") != std::string::npos);
}

TEST_CASE("lp compare holds the dominance inequality") {
    if (cli_path().empty()) return;
    auto run = run_cli("lp --synth-demand seeded-noise-mix --synth-gen seeded-noise-mix "
                       "--steps 24 --seed 12");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("dominance: L(ST1&ST2) <= min(L(ST1), L(ST2)) holds") !=
          std::string::npos);
}

TEST_CASE("bottleneck sweep emits one report per grid point") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto table = dir.file("bn.tsv");
    auto run = run_cli("bottleneck " + kBlockInput + " --xg-sweep 1:3:5 --table " + table);
    CHECK(run.exit_code == 0);
    auto text = re100::read_file(table);
    int data_lines = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line.rfind("x_g", 0) != 0) ++data_lines;
    CHECK(data_lines == 5);
    CHECK(text.find("\t3\t4\t") != std::string::npos);  // the deficit block binds
}

TEST_CASE("oracle subcommand certifies the block value") {
    if (cli_path().empty()) return;
    auto run = run_cli("oracle " + kBlockInput + " --quantity interval-max --xg 1.5");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("interval-enumeration") != std::string::npos);
    CHECK(run.output.find("value:       0.5") != std::string::npos);
    CHECK(run.output.find("fingerprint:") != std::string::npos);
}

TEST_CASE("calibrate reports the grid point closest to the target") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto table = dir.file("grid.tsv");
    auto run = run_cli("calibrate --synth-demand seeded-noise-mix --synth-gen "
                       "seeded-noise-mix --steps 24 --seed 4 --cg-grid 2:8:3 "
                       "--c1e-grid 100:900:3 --target 10 --table " + table);
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("closest to target") != std::string::npos);
    int data_lines = 0;
    std::istringstream in(re100::read_file(table));
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line.rfind("c_g", 0) != 0) ++data_lines;
    CHECK(data_lines == 9);
}

TEST_CASE("exit codes distinguish failure classes") {
    if (cli_path().empty()) return;
    // validation: unknown synth pattern
    CHECK(run_cli("prodfn --synth-demand nope --synth-gen uniform --steps 8").exit_code == 1);
    // validation: missing input
    CHECK(run_cli("prodfn").exit_code == 1);
    // infeasible: lossy storage below the cycle-balance bound
    TempDir dir;
    auto csv = dir.file("two.csv");
    {
        std::ofstream out(csv);
        out << "timestamp,demand,pv\n0,0.5,1\n1,0.5,0\n";
    }
    auto infeasible = run_cli("lp --data " + csv + " --variant lossy --e1c 0.8 --e1d 1.0 "
                              "--fix-xg 1.05");
    CHECK(infeasible.exit_code == 2);
    // resource: full-year LP is beyond the desk-scale solver
    auto resource = run_cli("lp --synth-demand uniform --synth-gen uniform --steps 900 "
                            "--variant simplest");
    CHECK(resource.exit_code == 3);
}

TEST_CASE("config file sets defaults, flags override") {
    if (cli_path().empty()) return;
    TempDir dir;
    auto config = dir.file("re100.conf");
    {
        // comma-holding values need quotes in the key=value file
        std::ofstream out(config);
        out << "[prodfn]\nsteps=4\nsynth-demand=uniform\n"
               "synth-gen=\"block:on_start=1,on_end=2\"\n";
    }
    auto a = dir.file("a.txt");
    CHECK(run_cli("--config " + config + " prodfn --out " + a).exit_code == 0);
    auto pf = re100::production_function_from_text(re100::read_file(a));
    CHECK(pf.steps() == 4);

    auto b = dir.file("b.txt");
    CHECK(run_cli("--config " + config + " prodfn --steps 8 --out " + b).exit_code == 0);
    CHECK(re100::production_function_from_text(re100::read_file(b)).steps() == 8);
}

}  // TEST_SUITE
