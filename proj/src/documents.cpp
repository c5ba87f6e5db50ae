#include "kemeny/documents.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace kemeny {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what)
{
    throw Error(ErrorKind::ParseError, what);
}

double parse_decimal(std::string_view text)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        parse_fail("not a number: '" + std::string(text) + "'");
    return value;
}

double entry_value(const json& j)
{
    double value = 0.0;
    if (j.is_number())
        value = j.get<double>();
    else if (j.is_string())
        value = parse_probability(j.get<std::string>());
    else
        parse_fail("matrix entries must be numbers or strings");
    if (!std::isfinite(value))
        parse_fail("matrix entries must be finite");
    return value;
}

json vector_json(const Vector& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index k = 0; k < m.cols(); ++k)
            row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Vector vector_from(const json& j)
{
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Matrix matrix_from(const json& j)
{
    const auto rows = j.get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Index>(rows.size());
    const Index m = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
    Matrix out(n, m);
    for (Index i = 0; i < n; ++i) {
        if (static_cast<Index>(rows[i].size()) != m)
            parse_fail("ragged matrix");
        for (Index k = 0; k < m; ++k)
            out(i, k) = rows[i][k];
    }
    return out;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt_dev(double v)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

std::string fmt_vec(const Vector& v)
{
    std::string out = "(";
    for (Index i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += fmt(v(i));
    }
    return out + ")";
}

} // namespace

double parse_probability(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_decimal(text);
    const double num = parse_decimal(text.substr(0, slash));
    const double den = parse_decimal(text.substr(slash + 1));
    if (den == 0.0)
        parse_fail("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

ChainDocument parse_chain_document(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        parse_fail("chain document must be a JSON object");

    ChainDocument doc;
    if (j.contains("name") && j["name"].is_string())
        doc.name = j["name"].get<std::string>();
    if (j.contains("description") && j["description"].is_string())
        doc.description = j["description"].get<std::string>();

    if (!j.contains("transition_matrix") || !j["transition_matrix"].is_array())
        parse_fail("missing 'transition_matrix' array");
    const json& rows = j["transition_matrix"];
    const auto n = static_cast<Index>(rows.size());
    if (n == 0)
        parse_fail("'transition_matrix' is empty");
    doc.transition_matrix.resize(n, n);
    for (Index x = 0; x < n; ++x) {
        const json& row = rows[static_cast<std::size_t>(x)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n)
            parse_fail("'transition_matrix' must be square; row " + std::to_string(x) + " has the wrong length");
        for (Index y = 0; y < n; ++y)
            doc.transition_matrix(x, y) = entry_value(row[static_cast<std::size_t>(y)]);
    }

    if (j.contains("states")) {
        if (!j["states"].is_array())
            parse_fail("'states' must be an array");
        for (const auto& s : j["states"]) {
            if (s.is_string())
                doc.states.push_back(s.get<std::string>());
            else if (s.is_number_integer())
                doc.states.push_back(std::to_string(s.get<long long>()));
            else
                parse_fail("state labels must be strings or integers");
        }
        if (static_cast<Index>(doc.states.size()) != n)
            parse_fail("'states' has " + std::to_string(doc.states.size()) + " labels for a " +
                       std::to_string(n) + "-state matrix");
    } else {
        doc.states = default_labels(n);
    }

    if (j.contains("initial_distribution")) {
        const json& init = j["initial_distribution"];
        if (!init.is_array())
            parse_fail("'initial_distribution' must be an array");
        std::vector<double> values;
        for (const auto& v : init)
            values.push_back(entry_value(v));
        doc.initial_distribution = std::move(values);
    }
    return doc;
}

ChainDocument load_chain_document(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        parse_fail("cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_chain_document(buffer.str());
}

ResultDocument make_result_document(const FullReport& report, std::string name)
{
    ResultDocument doc;
    doc.name = std::move(name);
    doc.states = report.chain.states();
    doc.admissibility = report.admissibility;
    doc.pi = report.pi.values();
    doc.hitting_times = report.H.matrix();
    doc.commute_times = report.C.matrix();
    doc.kemeny = report.kemeny;
    doc.geometry = report.geometry;
    doc.diagnostics = report.diagnostics;
    doc.tolerances = report.tolerances;
    return doc;
}

EmbeddingBlock make_embedding_block(const FullReport& report)
{
    const Matrix& V = report.embedding.V;
    EmbeddingBlock block;
    for (Index x = 0; x < V.cols(); ++x)
        block.vertices.emplace_back(V.col(x).data(), V.col(x).data() + V.rows());
    const Vector gamma = V * report.geometry.gamma_hat;
    const Vector ell = V * report.geometry.ell_hat;
    block.circumcenter.assign(gamma.data(), gamma.data() + gamma.size());
    block.lemoine.assign(ell.data(), ell.data() + ell.size());
    return block;
}

McBlock make_mc_block(const FullReport& report, const McEstimate& est, std::uint64_t seed)
{
    McBlock block;
    block.seed = seed;
    block.kemeny = est;
    block.deviation = std::abs(est.mean - report.kemeny.commute);
    block.z_score = est.std_error > 0.0 ? block.deviation / est.std_error : 0.0;
    return block;
}

json to_json(const ResultDocument& doc)
{
    const auto& K = doc.kemeny;
    const auto& G = doc.geometry;
    const auto& D = doc.diagnostics;
    json j;
    j["version"] = doc.version;
    if (!doc.name.empty())
        j["name"] = doc.name;
    j["states"] = doc.states;
    j["admissibility"] = {{"irreducible", doc.admissibility.irreducible},
                          {"aperiodic", doc.admissibility.aperiodic},
                          {"reversible", doc.admissibility.reversible},
                          {"loop_free", doc.admissibility.loop_free}};
    j["pi"] = vector_json(doc.pi);
    j["hitting_times"] = matrix_json(doc.hitting_times);
    j["commute_times"] = matrix_json(doc.commute_times);
    j["kemeny"] = {{"per_state", vector_json(K.per_state)},
                   {"commute", K.commute},
                   {"geometric", K.geometric},
                   {"spectral", K.spectral},
                   {"spread", K.spread},
                   {"agreement", K.agreement},
                   {"deviation",
                    {{"geometric_vs_commute", std::abs(K.geometric - K.commute)},
                     {"spectral_vs_commute", std::abs(K.spectral - K.commute)},
                     {"per_state_vs_commute", (K.per_state.array() - K.commute).abs().maxCoeff()}}}};
    j["geometry"] = {{"gamma_hat", vector_json(G.gamma_hat)},
                     {"R", G.R},
                     {"R_squared", G.R_squared},
                     {"circumcenter_residual", G.circumcenter_residual},
                     {"ell_hat", vector_json(G.ell_hat)},
                     {"lemoine_facet_total", G.lemoine_facet_total},
                     {"lemoine_facet_deviation", std::abs(G.lemoine_facet_total - 1.0)},
                     {"center_distance", G.center_distance},
                     {"center_distance_squared", G.center_distance_squared},
                     {"identity_deviation", std::abs(G.R_squared - G.center_distance_squared - K.commute)},
                     {"circumcenter_inside", G.circumcenter_inside}};
    j["diagnostics"] = {{"stationary_residual", D.stationary_residual},
                        {"detailed_balance", D.detailed_balance},
                        {"moore_penrose", D.moore_penrose},
                        {"gram", D.gram},
                        {"kernel", D.kernel},
                        {"recursion", D.recursion},
                        {"commute_routes", D.commute_routes},
                        {"embedding", D.embedding}};
    j["tolerances"] = {{"stoch", doc.tolerances.stoch},
                       {"solve", doc.tolerances.solve},
                       {"cross", doc.tolerances.cross}};
    if (doc.embedding) {
        j["embedding"] = {{"vertices", doc.embedding->vertices},
                          {"circumcenter", doc.embedding->circumcenter},
                          {"lemoine", doc.embedding->lemoine}};
    }
    if (doc.mc) {
        const auto& mc = *doc.mc;
        j["mc"] = {{"seed", mc.seed},
                   {"kemeny",
                    {{"mean", mc.kemeny.mean},
                     {"std_error", mc.kemeny.std_error},
                     {"samples", mc.kemeny.samples},
                     {"variance_defined", mc.kemeny.variance_defined}}},
                   {"deviation", mc.deviation},
                   {"z_score", mc.z_score}};
    }
    return j;
}

ResultDocument result_document_from_json(const json& j)
{
    try {
        ResultDocument doc;
        doc.version = j.at("version").get<std::string>();
        doc.name = j.value("name", std::string{});
        doc.states = j.at("states").get<std::vector<std::string>>();
        const auto& adm = j.at("admissibility");
        doc.admissibility.irreducible = adm.at("irreducible").get<bool>();
        doc.admissibility.aperiodic = adm.at("aperiodic").get<bool>();
        doc.admissibility.reversible = adm.at("reversible").get<bool>();
        doc.admissibility.loop_free = adm.at("loop_free").get<bool>();
        doc.pi = vector_from(j.at("pi"));
        doc.hitting_times = matrix_from(j.at("hitting_times"));
        doc.commute_times = matrix_from(j.at("commute_times"));

        const auto& k = j.at("kemeny");
        doc.kemeny.per_state = vector_from(k.at("per_state"));
        doc.kemeny.commute = k.at("commute").get<double>();
        doc.kemeny.geometric = k.at("geometric").get<double>();
        doc.kemeny.spectral = k.at("spectral").get<double>();
        doc.kemeny.spread = k.at("spread").get<double>();
        doc.kemeny.agreement = k.at("agreement").get<double>();

        const auto& g = j.at("geometry");
        doc.geometry.gamma_hat = vector_from(g.at("gamma_hat"));
        doc.geometry.R = g.at("R").get<double>();
        doc.geometry.R_squared = g.at("R_squared").get<double>();
        doc.geometry.circumcenter_residual = g.at("circumcenter_residual").get<double>();
        doc.geometry.ell_hat = vector_from(g.at("ell_hat"));
        doc.geometry.lemoine_facet_total = g.at("lemoine_facet_total").get<double>();
        doc.geometry.center_distance = g.at("center_distance").get<double>();
        doc.geometry.center_distance_squared = g.at("center_distance_squared").get<double>();
        doc.geometry.circumcenter_inside = g.at("circumcenter_inside").get<bool>();

        const auto& d = j.at("diagnostics");
        doc.diagnostics.stationary_residual = d.at("stationary_residual").get<double>();
        doc.diagnostics.detailed_balance = d.at("detailed_balance").get<double>();
        doc.diagnostics.moore_penrose = d.at("moore_penrose").get<double>();
        doc.diagnostics.gram = d.at("gram").get<double>();
        doc.diagnostics.kernel = d.at("kernel").get<double>();
        doc.diagnostics.recursion = d.at("recursion").get<double>();
        doc.diagnostics.commute_routes = d.at("commute_routes").get<double>();
        doc.diagnostics.embedding = d.at("embedding").get<double>();

        const auto& t = j.at("tolerances");
        doc.tolerances.stoch = t.at("stoch").get<double>();
        doc.tolerances.solve = t.at("solve").get<double>();
        doc.tolerances.cross = t.at("cross").get<double>();

        if (j.contains("embedding")) {
            const auto& e = j["embedding"];
            doc.embedding = EmbeddingBlock{e.at("vertices").get<std::vector<std::vector<double>>>(),
                                           e.at("circumcenter").get<std::vector<double>>(),
                                           e.at("lemoine").get<std::vector<double>>()};
        }
        if (j.contains("mc")) {
            const auto& m = j["mc"];
            McBlock mc;
            mc.seed = m.at("seed").get<std::uint64_t>();
            mc.kemeny.mean = m.at("kemeny").at("mean").get<double>();
            mc.kemeny.std_error = m.at("kemeny").at("std_error").get<double>();
            mc.kemeny.samples = m.at("kemeny").at("samples").get<std::size_t>();
            mc.kemeny.variance_defined = m.at("kemeny").at("variance_defined").get<bool>();
            mc.deviation = m.at("deviation").get<double>();
            mc.z_score = m.at("z_score").get<double>();
            doc.mc = mc;
        }
        return doc;
    } catch (const json::exception& e) {
        parse_fail(std::string("malformed result document: ") + e.what());
    }
}

std::map<std::string, bool> verify_result_document(const ResultDocument& doc)
{
    std::map<std::string, bool> v;
    const auto n = static_cast<Index>(doc.states.size());
    const double solve = doc.tolerances.solve;
    const double cross = doc.tolerances.cross;
    const bool shapes = doc.pi.size() == n && doc.hitting_times.rows() == n && doc.hitting_times.cols() == n &&
                        doc.commute_times.rows() == n && doc.commute_times.cols() == n &&
                        doc.kemeny.per_state.size() == n && doc.geometry.gamma_hat.size() == n &&
                        doc.geometry.ell_hat.size() == n;
    v["shapes"] = shapes;
    if (!shapes)
        return v;

    const auto& a = doc.admissibility;
    v["admissible"] = a.irreducible && a.aperiodic && a.reversible && a.loop_free;
    v["pi_distribution"] = (doc.pi.array() > 0.0).all() && std::abs(doc.pi.sum() - 1.0) < solve;

    const Matrix& H = doc.hitting_times;
    const Matrix& C = doc.commute_times;
    v["hitting_diagonal"] = (H.diagonal().array() == 0.0).all();
    v["commute_from_hitting"] = (H + H.transpose() - C).cwiseAbs().maxCoeff() < cross;

    const double K = doc.kemeny.commute;
    const double K_recomputed = 0.5 * doc.pi.dot(C * doc.pi);
    const Vector per_state = H * doc.pi;
    v["kemeny_commute"] = std::abs(K_recomputed - K) < cross;
    v["kemeny_constancy"] = (per_state.array() - K).abs().maxCoeff() < cross &&
                            (per_state - doc.kemeny.per_state).cwiseAbs().maxCoeff() < cross;
    v["kemeny_spectral"] = std::abs(doc.kemeny.spectral - K) < cross;

    const auto& G = doc.geometry;
    const double gamma_residual = (C * G.gamma_hat - Vector::Constant(n, 2.0 * G.R_squared)).cwiseAbs().maxCoeff();
    v["circumcenter"] = gamma_residual < solve && std::abs(G.gamma_hat.sum() - 1.0) < solve &&
                        std::abs(G.R * G.R - G.R_squared) < cross;
    const Vector diff = G.gamma_hat - G.ell_hat;
    const double dist2 = -0.5 * diff.dot(C * diff);
    v["center_distance"] = std::abs(dist2 - G.center_distance_squared) < cross;
    v["kemeny_geometric"] = std::abs(G.R_squared - dist2 - K) < cross && std::abs(doc.kemeny.geometric - K) < cross;
    v["lemoine"] = (G.ell_hat - doc.pi).cwiseAbs().maxCoeff() == 0.0 &&
                   std::abs((G.ell_hat.array().square() / doc.pi.array()).sum() - 1.0) < cross;
    v["inside_flag"] = G.circumcenter_inside == (G.gamma_hat.array() >= 0.0).all();
    v["radius_bound"] = G.R_squared >= K - cross;

    if (doc.embedding) {
        const auto& vertices = doc.embedding->vertices;
        bool ok = static_cast<Index>(vertices.size()) == n;
        double worst = 0.0;
        for (Index x = 0; ok && x < n; ++x) {
            for (Index y = 0; y < n; ++y) {
                if (vertices[x].size() != vertices[y].size()) {
                    ok = false;
                    break;
                }
                double d = 0.0;
                for (std::size_t i = 0; i < vertices[x].size(); ++i)
                    d += (vertices[x][i] - vertices[y][i]) * (vertices[x][i] - vertices[y][i]);
                worst = std::max(worst, std::abs(d - C(x, y)));
            }
        }
        v["embedding"] = ok && worst < cross;
    }
    if (doc.mc) {
        const auto& mc = *doc.mc;
        v["mc_within_4_stderr"] = std::abs(mc.kemeny.mean - K) <= 4.0 * mc.kemeny.std_error;
    }
    return v;
}

std::string render_report(const ResultDocument& doc)
{
    const auto& K = doc.kemeny;
    const auto& G = doc.geometry;
    std::ostringstream os;
    os << "Kemeny analysis";
    if (!doc.name.empty())
        os << " of " << doc.name;
    os << " (" << doc.states.size() << " states)\n\n";

    os << "admissibility: irreducible=" << doc.admissibility.irreducible
       << " aperiodic=" << doc.admissibility.aperiodic << " reversible=" << doc.admissibility.reversible
       << " loop-free=" << doc.admissibility.loop_free << "\n";
    os << "stationary distribution pi = " << fmt_vec(doc.pi) << "\n\n";

    os << "commute times:\n";
    for (std::size_t x = 0; x < doc.states.size(); ++x)
        for (std::size_t y = x + 1; y < doc.states.size(); ++y)
            os << "  c(" << doc.states[x] << ", " << doc.states[y]
               << ") = " << fmt(doc.commute_times(static_cast<Index>(x), static_cast<Index>(y))) << "\n";

    os << "\nKemeny's constant\n";
    os << "  per state  K_x        = " << fmt_vec(K.per_state) << "  spread " << fmt_dev(K.spread) << "\n";
    os << "  commute    1/2 pi'C pi = " << fmt(K.commute) << "\n";
    os << "  geometric  R^2 - d^2   = " << fmt(K.geometric) << "  deviation "
       << fmt_dev(std::abs(K.geometric - K.commute)) << "\n";
    os << "  spectral   sum 1/(1-l) = " << fmt(K.spectral) << "  deviation "
       << fmt_dev(std::abs(K.spectral - K.commute)) << "\n";
    os << "  agreement across routes  " << fmt_dev(K.agreement) << "\n";

    os << "\nsimplex geometry\n";
    os << "  circumcenter gamma_hat = " << fmt_vec(G.gamma_hat) << (G.circumcenter_inside ? "  (inside)" : "  (outside)")
       << "\n";
    os << "  circumradius R         = " << fmt(G.R) << "  (R^2 = " << fmt(G.R_squared) << ")\n";
    os << "  Lemoine point ell_hat  = " << fmt_vec(G.ell_hat) << "\n";
    os << "  |gamma - ell|          = " << fmt(G.center_distance) << "  (squared " << fmt(G.center_distance_squared)
       << ")\n";
    os << "  facet total at ell     = " << fmt(G.lemoine_facet_total) << "  deviation "
       << fmt_dev(std::abs(G.lemoine_facet_total - 1.0)) << "\n";

    const auto& D = doc.diagnostics;
    os << "\nresiduals: stationary " << fmt_dev(D.stationary_residual) << ", Moore-Penrose " << fmt_dev(D.moore_penrose)
       << ", Gram " << fmt_dev(D.gram) << ", recursion " << fmt_dev(D.recursion) << ", commute routes "
       << fmt_dev(D.commute_routes) << ", embedding " << fmt_dev(D.embedding) << "\n";

    if (doc.mc) {
        const auto& mc = *doc.mc;
        os << "\nMonte Carlo (" << mc.kemeny.samples << " samples, seed " << mc.seed << ")\n";
        os << "  K estimate = " << fmt(mc.kemeny.mean) << " +/- " << fmt(mc.kemeny.std_error)
           << "  (z = " << fmt(mc.z_score) << ")\n";
    }
    if (doc.embedding) {
        os << "\nembedding vertices:\n";
        for (std::size_t x = 0; x < doc.embedding->vertices.size(); ++x) {
            const auto& v = doc.embedding->vertices[x];
            os << "  v(" << doc.states[x] << ") = "
               << fmt_vec(Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()))) << "\n";
        }
    }
    return os.str();
}

} // namespace kemeny
