#include "kemeny/documents.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch()
{
    auto dir = fs::temp_directory_path() / ("kemeny_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

Run run(const std::string& args)
{
    const auto dir = scratch();
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string(KEMENY_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    return Run{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

fs::path write_doc(const std::string& name, const std::string& text)
{
    const auto path = scratch() / name;
    std::ofstream(path) << text;
    return path;
}

const std::string data_dir = KEMENY_DATA_DIR;

} // namespace

TEST_CASE("report for the three-state example")
{
    const auto r = run(data_dir + "/chain_a.json --report");
    CHECK(r.status == 0);
    CHECK(r.out.find("commute    1/2 pi'C pi = 1.35") != std::string::npos);
    CHECK(r.out.find("geometric  R^2 - d^2   = 1.35") != std::string::npos);
    CHECK(r.out.find("spectral   sum 1/(1-l) = 1.35") != std::string::npos);
    CHECK(r.out.find("(1.35, 1.35, 1.35)") != std::string::npos);
    CHECK(r.out.find("1.18585") != std::string::npos);
    CHECK(r.out.find("0.237171") != std::string::npos);
}

TEST_CASE("result document with Monte Carlo and embedding blocks")
{
    const auto out = scratch() / "result.json";
    const auto r = run(data_dir + "/chain_a.json --out " + out.string() +
                       " --emit-embedding --mc-samples 100000 --seed 42");
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.contains("mc"));
    CHECK(j["mc"]["seed"] == 42);
    const double mean = j["mc"]["kemeny"]["mean"];
    const double se = j["mc"]["kemeny"]["std_error"];
    CHECK(std::abs(mean - 1.35) < 4.0 * se);
    CHECK(j["embedding"]["vertices"].size() == 3);
    CHECK(j["embedding"]["vertices"][0].size() == 2);
    CHECK(j["kemeny"]["deviation"]["geometric_vs_commute"].get<double>() < 1e-9);

    const auto doc = kemeny::result_document_from_json(j);
    for (const auto& [name, ok] : kemeny::verify_result_document(doc)) {
        CAPTURE(name);
        CHECK(ok);
    }
}

TEST_CASE("exit codes name the failing condition")
{
    const auto path = run(data_dir + "/path3.json");
    CHECK(path.status == 3);
    CHECK(path.err.find("Inadmissible(aperiodic)") != std::string::npos);

    const auto loop = write_doc("loop.json", R"({"transition_matrix": [[0.5,0.25,0.25],[0.5,0,0.5],[0.5,0.5,0]]})");
    const auto l = run(loop.string());
    CHECK(l.status == 3);
    CHECK(l.err.find("Inadmissible(loop-free)") != std::string::npos);

    const auto blocks = write_doc("blocks.json",
                                  R"({"transition_matrix": [[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]})");
    const auto b = run(blocks.string());
    CHECK(b.status == 3);
    CHECK(b.err.find("Inadmissible(irreducible)") != std::string::npos);

    const auto nonrev = write_doc("nonrev.json",
                                  R"({"transition_matrix": [[0,0.9,0.1],[0.1,0,0.9],[0.9,0.1,0]]})");
    const auto n = run(nonrev.string());
    CHECK(n.status == 3);
    CHECK(n.err.find("Inadmissible(reversible)") != std::string::npos);

    const auto garbage = write_doc("garbage.json", "{ nope");
    const auto g = run(garbage.string());
    CHECK(g.status == 2);
    CHECK(g.err.find("ParseError") != std::string::npos);

    const auto missing = run((scratch() / "does_not_exist.json").string());
    CHECK(missing.status == 2);

    const auto sloppy = write_doc("sloppy.json", R"({"transition_matrix": [[0,0.5,0.4],[0.5,0,0.5],[0.5,0.5,0]]})");
    CHECK(run(sloppy.string()).status == 2);
}

TEST_CASE("initial distribution is accepted with a warning")
{
    const auto doc = write_doc("init.json", R"({
        "states": ["a", "b", "c"],
        "transition_matrix": [[0, 0.5, 0.5], [0.5, 0, 0.5], [0.5, 0.5, 0]],
        "initial_distribution": [1, 0, 0]})");
    const auto r = run(doc.string() + " --report");
    CHECK(r.status == 0);
    CHECK(r.err.find("initial_distribution is ignored") != std::string::npos);
}

TEST_CASE("tolerance override reaches the pipeline")
{
    // An absurdly tight agreement tolerance must surface as a numerical failure.
    const auto r = run(data_dir + "/chain_a.json --tol-cross 1e-300");
    CHECK(r.status == 4);
    CHECK(r.err.find("NumericalFailure") != std::string::npos);
}
