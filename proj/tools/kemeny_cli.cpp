// Reads a chain document, runs the full Kemeny pipeline and prints a report
// and/or writes a JSON result document.
//
// Exit status: 0 success, 2 parse error, 3 inadmissible chain, 4 numerical
// failure. Diagnostics go to stderr as "error: <Category>: <message>".

#include "kemeny/documents.hpp"
#include "kemeny/kemeny.hpp"
#include "kemeny/mc_oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum ExitCode { kOk = 0, kParse = 2, kInadmissible = 3, kNumerical = 4 };

int fail(ExitCode code, const std::string& category, const std::string& message)
{
    std::cerr << "error: " << category << ": " << message << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kemeny's constant of a reversible Markov chain by four routes"};
    std::string input;
    bool report = false;
    std::string out_path;
    bool emit_embedding = false;
    std::size_t mc_samples = 0;
    std::uint64_t seed = 1;
    double tol_cross = kemeny::kTolCross;

    app.add_option("input", input, "chain document (JSON)")->required();
    app.add_flag("--report", report, "print the human-readable report");
    app.add_option("--out", out_path, "write the result document to this path");
    app.add_flag("--emit-embedding", emit_embedding, "include simplex vertex coordinates");
    app.add_option("--mc-samples", mc_samples, "Monte Carlo samples for the Kemeny estimate (0 = off)");
    app.add_option("--seed", seed, "Monte Carlo seed");
    app.add_option("--tol-cross", tol_cross, "tolerance for route agreement")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? kOk : kParse;
    }
    if (out_path.empty())
        report = true;

    using kemeny::ErrorKind;
    try {
        const auto doc = kemeny::load_chain_document(input);
        if (doc.initial_distribution)
            std::cerr << "warning: initial_distribution is ignored; no reported quantity depends on it\n";

        const auto chain = kemeny::build_chain(doc.states, doc.transition_matrix);
        kemeny::Tolerances tol;
        tol.cross = tol_cross;
        const auto full = kemeny::full_report(chain, tol);

        auto result = kemeny::make_result_document(full, doc.name);
        if (emit_embedding)
            result.embedding = kemeny::make_embedding_block(full);
        if (mc_samples > 0) {
            const auto est = kemeny::estimate_kemeny(chain, full.pi, mc_samples, seed);
            result.mc = kemeny::make_mc_block(full, est, seed);
        }

        if (report)
            std::cout << kemeny::render_report(result);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out)
                return fail(kParse, "ParseError", "cannot write '" + out_path + "'");
            out << kemeny::to_json(result).dump(2) << "\n";
        }
        return kOk;
    } catch (const kemeny::InadmissibleError& e) {
        return fail(kInadmissible, "Inadmissible(" + e.condition() + ")", e.what());
    } catch (const kemeny::Error& e) {
        switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::NonStochasticRow:
        case ErrorKind::NegativeEntry:
            return fail(kParse, "ParseError(" + std::string(to_string(e.kind())) + ")", e.what());
        case ErrorKind::SelfLoop:
            return fail(kInadmissible, "Inadmissible(loop-free)", e.what());
        case ErrorKind::TooSmall:
            return fail(kInadmissible, "Inadmissible(too-small)", e.what());
        default:
            return fail(kNumerical, "NumericalFailure(" + std::string(to_string(e.kind())) + ")", e.what());
        }
    }
}
