#pragma once

// Experiment configuration (flat key = value files), the five batch commands
// and their CSV / JSON artifacts.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlas.hpp"
#include "norms.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "rates.hpp"
#include "smolyak.hpp"
#include "test_functions.hpp"

namespace hypercross {

inline constexpr const char* kManifestSchema = "hypercross/1";

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command = "convergence"; // interpolate | convergence | grid | norms | atlas
    std::string function = "hat_tensor"; // hat_tensor | korobov | trigpoly | constant
    int dim = 2;
    double s = 3.0;          // korobov decay exponent
    int trig_level = 4;      // trigpoly: frequencies reproduced by the isotropic cross at this level
    int trig_terms = 8;
    Space space = Space::B;
    std::vector<double> r{1.5, 1.5};
    double p = 2.0;
    double q = 2.0;
    double theta = inf;
    int L = 2;
    std::vector<double> eta; // empty = derived
    int m = 6;
    int m_min = 4;
    int m_max = 9;
    int jmax = 6;
    int jref = 7;
    QuadratureMode quadrature = QuadratureMode::tensor_grid;
    std::int64_t resolution = 0; // 0 = automatic
    std::uint64_t seed = 1;
    double tolerance = 0.2;
    int threads = 1;
    std::string width = "rho_lin";
    std::string error = "auto";  // auto | parseval | quadrature
    std::string check = "sharp"; // when the tolerance decides the exit status: sharp | always | never

    bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string format_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& key, const std::string& s)
{
    if (s == "inf" || s == "infinity") return inf;
    std::istringstream is(s);
    is.imbue(std::locale::classic());
    double v = 0.0;
    is >> v;
    require(!is.fail() && is.eof(), "config: bad number for '" + key + "': " + s);
    return v;
}

inline long long parse_int(const std::string& key, const std::string& s)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == s.size() && !s.empty(), "config: bad integer for '" + key + "': " + s);
    return v;
}

inline std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<double> parse_list(const std::string& key, const std::string& s)
{
    std::vector<double> out;
    if (trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    return out;
}

inline std::string format_list(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
}

inline Space parse_space(const std::string& s)
{
    if (s == "W") return Space::W;
    if (s == "F") return Space::F;
    if (s == "B") return Space::B;
    throw contract_violation("config: space must be W, F or B");
}

inline QuadratureMode parse_quadrature(const std::string& s)
{
    if (s == "tensor_grid") return QuadratureMode::tensor_grid;
    if (s == "monte_carlo") return QuadratureMode::monte_carlo;
    if (s == "dense_max") return QuadratureMode::dense_max;
    throw contract_violation("config: unknown quadrature mode " + s);
}

inline WidthKind parse_width(const std::string& s)
{
    for (WidthKind w : {WidthKind::rho_lin, WidthKind::rho, WidthKind::lambda, WidthKind::gelfand, WidthKind::kolmogorov})
        if (s == to_string(w)) return w;
    throw contract_violation("config: unknown width kind " + s);
}

inline ErrorMethod parse_error_method(const std::string& s)
{
    if (s == "auto") return ErrorMethod::automatic;
    if (s == "parseval") return ErrorMethod::parseval;
    if (s == "quadrature") return ErrorMethod::quadrature;
    throw contract_violation("config: error must be auto, parseval or quadrature");
}

/// JSON number, or the string "inf" for infinite values.
inline nlohmann::json jnum(double v)
{
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

inline nlohmann::json jlist(const std::vector<double>& v)
{
    auto a = nlohmann::json::array();
    for (double x : v) a.push_back(jnum(x));
    return a;
}

} // namespace detail

/// Ordered (key, value) view of a config; this is the file format.
inline std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c)
{
    using detail::format_double;
    return {
        {"command", c.command},
        {"function", c.function},
        {"dim", std::to_string(c.dim)},
        {"s", format_double(c.s)},
        {"trig_level", std::to_string(c.trig_level)},
        {"trig_terms", std::to_string(c.trig_terms)},
        {"space", to_string(c.space)},
        {"r", detail::format_list(c.r)},
        {"p", format_double(c.p)},
        {"q", format_double(c.q)},
        {"theta", format_double(c.theta)},
        {"L", std::to_string(c.L)},
        {"eta", detail::format_list(c.eta)},
        {"m", std::to_string(c.m)},
        {"m_min", std::to_string(c.m_min)},
        {"m_max", std::to_string(c.m_max)},
        {"jmax", std::to_string(c.jmax)},
        {"jref", std::to_string(c.jref)},
        {"quadrature", to_string(c.quadrature)},
        {"resolution", std::to_string(c.resolution)},
        {"seed", std::to_string(c.seed)},
        {"tolerance", format_double(c.tolerance)},
        {"threads", std::to_string(c.threads)},
        {"width", c.width},
        {"error", c.error},
        {"check", c.check},
    };
}

inline void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& raw)
{
    using namespace detail;
    const std::string v = trim(raw);
    auto as_int = [&] { return static_cast<int>(parse_int(key, v)); };
    if (key == "command") {
        require(v == "interpolate" || v == "convergence" || v == "grid" || v == "norms" || v == "atlas",
                "config: unknown command " + v);
        c.command = v;
    } else if (key == "function") {
        require(v == "hat_tensor" || v == "korobov" || v == "trigpoly" || v == "constant", "config: unknown function " + v);
        c.function = v;
    } else if (key == "dim")
        c.dim = as_int();
    else if (key == "s")
        c.s = parse_double(key, v);
    else if (key == "trig_level")
        c.trig_level = as_int();
    else if (key == "trig_terms")
        c.trig_terms = as_int();
    else if (key == "space")
        c.space = parse_space(v);
    else if (key == "r")
        c.r = parse_list(key, v);
    else if (key == "p")
        c.p = parse_double(key, v);
    else if (key == "q")
        c.q = parse_double(key, v);
    else if (key == "theta")
        c.theta = parse_double(key, v);
    else if (key == "L")
        c.L = as_int();
    else if (key == "eta")
        c.eta = parse_list(key, v);
    else if (key == "m")
        c.m = as_int();
    else if (key == "m_min")
        c.m_min = as_int();
    else if (key == "m_max")
        c.m_max = as_int();
    else if (key == "jmax")
        c.jmax = as_int();
    else if (key == "jref")
        c.jref = as_int();
    else if (key == "quadrature")
        c.quadrature = parse_quadrature(v);
    else if (key == "resolution")
        c.resolution = parse_int(key, v);
    else if (key == "seed") {
        const long long s = parse_int(key, v);
        require(s >= 0, "config: seed must be nonnegative");
        c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "tolerance")
        c.tolerance = parse_double(key, v);
    else if (key == "threads")
        c.threads = as_int();
    else if (key == "width") {
        parse_width(v);
        c.width = v;
    } else if (key == "error") {
        parse_error_method(v);
        c.error = v;
    } else if (key == "check") {
        require(v == "sharp" || v == "always" || v == "never", "config: check must be sharp, always or never");
        c.check = v;
    } else
        throw contract_violation("config: unknown key '" + key + "'");
}

/// "key=value" override.
inline void apply_assignment(ExperimentConfig& c, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    require(eq != std::string::npos, "config: expected key=value, got '" + assignment + "'");
    set_config_value(c, detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

inline std::string to_config_text(const ExperimentConfig& c)
{
    std::string out;
    for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
    return out;
}

/// Parses key = value lines; '#' starts a comment. Unset keys keep their defaults.
inline ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {})
{
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (detail::trim(line).empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, "config line " + std::to_string(lineno) + ": expected key = value");
        set_config_value(base, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

/// Writes a whole file or throws io_error naming the path.
inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) throw io_error("write failed for " + path.string());
}

inline void prepare_output_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw io_error("cannot create output directory " + dir.string());
}

// ---------------------------------------------------------------------------

inline TestFunction make_function(const ExperimentConfig& c, const std::string& kind)
{
    if (kind == "hat_tensor") return TestFunction::hat_tensor(c.dim);
    if (kind == "korobov") return TestFunction::korobov(c.dim, c.s);
    if (kind == "constant") return TestFunction::constant(c.dim);
    require(kind == "trigpoly", "make_function: unknown function " + kind);
    const IndexSet set = build_index_set(std::vector<double>(static_cast<std::size_t>(c.dim), 1.0), c.trig_level, c.dim);
    return TestFunction::random_cross_trigpoly(set, c.L, c.trig_terms, c.seed);
}

inline TestFunction make_function(const ExperimentConfig& c) { return make_function(c, c.function); }

inline QuadratureSpec quadrature_spec(const ExperimentConfig& c)
{
    QuadratureSpec q;
    q.mode = c.quadrature;
    q.seed = c.seed;
    if (c.resolution > 0) q.resolution = {c.resolution};
    return q;
}

inline ConvergenceSpec convergence_spec(const ExperimentConfig& c)
{
    require(static_cast<int>(c.r.size()) == c.dim, "config: r must have dim entries");
    ConvergenceSpec s;
    s.space = c.space;
    s.r = c.r;
    s.p = c.p;
    s.q = c.q;
    s.theta = c.space == Space::W ? 2.0 : c.theta;
    s.L = c.L;
    s.eta = c.eta;
    s.m_min = c.m_min;
    s.m_max = c.m_max;
    s.quad = quadrature_spec(c);
    s.error = detail::parse_error_method(c.error);
    s.threads = c.threads;
    return s;
}

inline NormSpec norm_spec(const ExperimentConfig& c)
{
    require(static_cast<int>(c.r.size()) == c.dim, "config: r must have dim entries");
    NormSpec n;
    n.space = c.space;
    n.r = c.r;
    n.p = c.p;
    n.theta = c.theta;
    n.L = c.L;
    n.jmax = c.jmax;
    n.resolution = c.resolution;
    return n;
}

inline AtlasQuery atlas_query(const ExperimentConfig& c)
{
    require(!c.r.empty(), "config: r must be nonempty");
    return AtlasQuery{c.p, c.q, c.space == Space::W ? 2.0 : c.theta, c.r.front(), multiplicity(c.r), c.space,
                      detail::parse_width(c.width)};
}

inline nlohmann::json atlas_json(const AtlasEntry& e)
{
    nlohmann::json j;
    j["region"] = e.region;
    j["status"] = to_string(e.status);
    j["alpha"] = e.has_rate ? detail::jnum(e.alpha) : nlohmann::json(nullptr);
    j["beta"] = e.has_rate ? detail::jnum(e.beta) : nlohmann::json(nullptr);
    j["citation"] = e.citation;
    j["bounds"] = e.bounds;
    j["rate_form"] = "((log n)^(mu-1)/n)^alpha (log n)^((mu-1) beta)";
    return j;
}

/// Fully resolved manifest: the config with every default spelled out.
inline nlohmann::json manifest(const ExperimentConfig& c)
{
    nlohmann::json j;
    j["schema"] = kManifestSchema;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_entries(c)) cfg[k] = v;
    j["config"] = cfg;
    j["seed"] = c.seed;
    j["tolerance"] = detail::jnum(c.tolerance);
    return j;
}

struct CommandResult {
    int exit_code = 0;
    std::string summary; // printed on stdout
};

namespace detail {

inline std::ostringstream csv_stream()
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
    return os;
}

inline nlohmann::json params_json(const RecoveryParams& rp)
{
    nlohmann::json j;
    j["r"] = jlist(rp.r);
    j["p"] = jnum(rp.p);
    j["q"] = jnum(rp.q);
    j["theta"] = jnum(rp.theta);
    j["L"] = rp.L;
    j["eta"] = jlist(rp.eta);
    j["m"] = rp.m;
    j["mu"] = rp.mu();
    return j;
}

inline nlohmann::json function_json(const TestFunction& f)
{
    nlohmann::json j;
    j["kind"] = to_string(f.kind());
    j["name"] = f.name();
    j["dim"] = f.dim();
    auto ms = nlohmann::json::array();
    for (const auto& m : f.memberships())
        ms.push_back({{"space", to_string(m.space)}, {"r", jnum(m.r)}, {"p", jnum(m.p)}, {"theta", jnum(m.theta)}});
    j["memberships"] = ms;
    return j;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

} // namespace detail

inline CommandResult cmd_interpolate(const ExperimentConfig& c, const std::filesystem::path& out)
{
    const TestFunction f = make_function(c);
    ConvergenceSpec cs = convergence_spec(c);
    const RecoveryParams rp = sweep_params(cs, c.m);
    const IndexSet set = build_index_set(rp);
    const SparseGrid grid(set);
    const SampleStore store = f.samples(grid);
    const TrigPoly approx = smolyak_coefficients(rp, store);

    double node_residual = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        node_residual = std::max(node_residual, std::abs(approx.evaluate(grid.nodes()[i].x) - store.values()[i]));
    const ErrorMethod em = cs.error == ErrorMethod::automatic ? (c.q == 2.0 ? ErrorMethod::parseval : ErrorMethod::quadrature) : cs.error;
    require(em != ErrorMethod::parseval || c.q == 2.0, "interpolate: parseval error needs q = 2");
    const double err = em == ErrorMethod::parseval ? parseval_error(f, approx) : lq_error(f, approx, c.q, cs.quad);

    auto os = detail::csv_stream();
    for (int i = 0; i < c.dim; ++i) os << 'k' << (i + 1) << ',';
    os << "re,im\n";
    for (const auto& [k, v] : approx) {
        for (auto ki : k) os << ki << ',';
        os << v.real() << ',' << v.imag() << '\n';
    }
    write_file(out / "interpolant.csv", os.str());

    auto j = manifest(c);
    j["params"] = detail::params_json(rp);
    j["function"] = detail::function_json(f);
    j["results"] = {{"n_nodes", grid.size()},
                    {"n_coefficients", approx.size()},
                    {"error", detail::jnum(err)},
                    {"error_method", to_string(em)},
                    {"max_node_residual", detail::jnum(node_residual)}};
    write_file(out / "report.json", detail::dump(j));
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(17) << "nodes=" << grid.size() << " coefficients=" << approx.size() << " error=" << err
      << " max_node_residual=" << node_residual << '\n';
    return {0, s.str()};
}

/// Whether the tolerance decides the exit status.
inline bool tolerance_checked(const ExperimentConfig& c, const RateReport& rep)
{
    if (rep.exact || c.check == "never") return false;
    if (c.check == "always") return true;
    return rep.atlas.status == RateStatus::sharp;
}

inline CommandResult cmd_convergence(const ExperimentConfig& c, const std::filesystem::path& out)
{
    const TestFunction f = make_function(c);
    const ConvergenceSpec cs = convergence_spec(c);
    const RateReport rep = run_convergence(f, cs);

    auto os = detail::csv_stream();
    os << "m,n_nodes,error,alpha_rolling\n";
    for (const auto& pt : rep.points) os << pt.m << ',' << pt.n_nodes << ',' << pt.error << ',' << pt.alpha_rolling << '\n';
    write_file(out / "convergence.csv", os.str());

    const bool checked = tolerance_checked(c, rep);
    const bool pass = !checked || std::abs(rep.alpha_hat - rep.alpha_theory) <= c.tolerance;

    auto j = manifest(c);
    j["params"] = detail::params_json(sweep_params(cs, c.m_min));
    j["params"].erase("m");
    j["params"]["m_min"] = c.m_min;
    j["params"]["m_max"] = c.m_max;
    j["function"] = detail::function_json(f);
    j["quadrature"] = {{"mode", to_string(cs.quad.mode)}, {"resolution", c.resolution}, {"seed", cs.quad.seed}};
    nlohmann::json r;
    r["status"] = rep.status();
    r["error_method"] = to_string(rep.error_method);
    r["alpha_hat"] = detail::jnum(rep.alpha_hat);
    r["alpha_stderr"] = detail::jnum(rep.alpha_stderr);
    r["alpha_hat_n"] = detail::jnum(rep.alpha_hat_n);
    r["alpha_theory"] = detail::jnum(rep.alpha_theory);
    r["beta_theory"] = detail::jnum(rep.beta_theory);
    r["tolerance_checked"] = checked;
    r["pass"] = pass;
    auto pts = nlohmann::json::array();
    for (const auto& pt : rep.points)
        pts.push_back({{"m", pt.m}, {"n_nodes", pt.n_nodes}, {"error", detail::jnum(pt.error)}, {"alpha_rolling", detail::jnum(pt.alpha_rolling)}});
    r["points"] = pts;
    j["results"] = r;
    j["atlas"] = atlas_json(rep.atlas);
    write_file(out / "report.json", detail::dump(j));

    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(6) << "status=" << rep.status() << " alpha_hat=" << rep.alpha_hat << " stderr=" << rep.alpha_stderr
      << " alpha=" << rep.alpha_theory << " beta=" << rep.beta_theory << " atlas=" << rep.atlas.region
      << (checked ? (pass ? " tolerance=pass" : " tolerance=FAIL") : " tolerance=unchecked") << '\n';
    return {pass ? 0 : 2, s.str()};
}

inline CommandResult cmd_grid(const ExperimentConfig& c, const std::filesystem::path& out)
{
    std::vector<double> eta = c.eta;
    if (eta.empty()) eta.assign(static_cast<std::size_t>(c.dim), 1.0);
    require(static_cast<int>(eta.size()) == c.dim, "grid: eta must have dim entries");
    const int mu = multiplicity(eta);

    const IndexSet set = build_index_set(eta, c.m, c.dim);
    const SparseGrid grid(set);
    auto nodes = detail::csv_stream();
    grid.write_csv(nodes);
    write_file(out / "grid_nodes.csv", nodes.str());

    auto os = detail::csv_stream();
    os << "m,index_set_size,grid_size,ratio\n";
    for (int m = c.m_min; m <= c.m_max; ++m) {
        const IndexSet sm = build_index_set(eta, m, c.dim);
        const auto n = sparse_grid_size(sm);
        const double scale = std::pow(static_cast<double>(std::max(m, 1)), mu - 1) * std::ldexp(1.0, m);
        os << m << ',' << sm.size() << ',' << n << ',' << static_cast<double>(n) / scale << '\n';
    }
    write_file(out / "grid_counts.csv", os.str());

    auto j = manifest(c);
    j["eta"] = detail::jlist(eta);
    j["mu"] = mu;
    j["results"] = {{"m", c.m}, {"index_set_size", set.size()}, {"grid_size", grid.size()}};
    write_file(out / "report.json", detail::dump(j));
    return {0, "m=" + std::to_string(c.m) + " grid_size=" + std::to_string(grid.size()) + "\n"};
}

/// Catalog members that declare membership at the requested parameters.
inline std::vector<TestFunction> norm_catalog(const ExperimentConfig& c, std::vector<std::string>* skipped = nullptr)
{
    std::vector<TestFunction> fs;
    const double rmax = c.r.empty() ? 0.0 : *std::max_element(c.r.begin(), c.r.end());
    for (const std::string kind : {"constant", "trigpoly", "korobov", "hat_tensor"}) {
        TestFunction f = make_function(c, kind);
        if (f.belongs_to(c.space, rmax, c.p, c.space == Space::W ? 2.0 : c.theta))
            fs.push_back(std::move(f));
        else if (skipped)
            skipped->push_back(f.name());
    }
    return fs;
}

inline CommandResult cmd_norms(const ExperimentConfig& c, const std::filesystem::path& out)
{
    const NormSpec spec = norm_spec(c);
    std::vector<std::string> skipped;
    const auto fs = norm_catalog(c, &skipped);
    require(!fs.empty(), "norms: no catalog function belongs to the requested space");
    ReferenceOptions ro;
    ro.jref = c.jref;

    auto os = detail::csv_stream();
    os << "function,discrete,discrete_next,relative_change,reference,ratio,in_domain\n";
    auto rows = nlohmann::json::array();
    double lo = inf, hi = 0.0, worst_change = 0.0;
    bool in_domain = true;
    std::string note;
    for (const auto& f : fs) {
        const NormResult a = discrete_norm(f, spec);
        NormSpec next = spec;
        ++next.jmax;
        const NormResult b = discrete_norm(f, next);
        const NormResult ref = reference_norm(f, spec.space, spec.r, spec.p, spec.theta, ro);
        const double change = (a.value == 0.0 && b.value == 0.0) ? 0.0 : std::abs(b.value - a.value) / std::max(a.value, b.value);
        const double ratio = a.value / ref.value;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        worst_change = std::max(worst_change, change);
        in_domain = in_domain && a.in_domain;
        if (!a.in_domain) note = a.note;
        os << f.name() << ',' << a.value << ',' << b.value << ',' << change << ',' << ref.value << ',' << ratio << ','
           << (a.in_domain ? 1 : 0) << '\n';
        rows.push_back({{"function", f.name()},
                        {"discrete", detail::jnum(a.value)},
                        {"discrete_next", detail::jnum(b.value)},
                        {"relative_change", detail::jnum(change)},
                        {"reference", detail::jnum(ref.value)},
                        {"reference_note", ref.note},
                        {"ratio", detail::jnum(ratio)}});
    }
    write_file(out / "norms.csv", os.str());

    auto j = manifest(c);
    j["rows"] = rows;
    j["skipped"] = skipped;
    j["results"] = {{"ratio_min", detail::jnum(lo)},
                    {"ratio_max", detail::jnum(hi)},
                    {"spread", detail::jnum(lo > 0.0 ? hi / lo : inf)},
                    {"max_relative_change", detail::jnum(worst_change)},
                    {"in_domain", in_domain},
                    {"domain_note", note},
                    {"reference_cutoffs", "sharp dyadic frequency cutoffs"}};
    write_file(out / "report.json", detail::dump(j));

    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(6) << "functions=" << fs.size() << " ratio_min=" << lo << " ratio_max=" << hi
      << " max_relative_change=" << worst_change << (in_domain ? "" : " OUT_OF_DOMAIN: " + note) << '\n';
    return {0, s.str()};
}

inline std::string format_atlas(const AtlasEntry& e)
{
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(17);
    if (e.status == RateStatus::open) {
        s << "open";
        if (e.region != "open") s << " region=" << e.region;
        if (!e.bounds.empty()) s << " bounds=\"" << e.bounds << '"';
        s << " citation=\"" << e.citation << "\"\n";
        return s.str();
    }
    s << "alpha=" << e.alpha << " beta=" << e.beta << " status=" << to_string(e.status) << " region=" << e.region
      << " citation=\"" << e.citation << "\"\n";
    return s.str();
}

inline CommandResult cmd_atlas(const ExperimentConfig& c, const std::filesystem::path* out)
{
    const AtlasQuery q = atlas_query(c);
    const AtlasEntry e = atlas_lookup(q);
    if (out) {
        auto j = manifest(c);
        j["query"] = {{"p", detail::jnum(q.p)}, {"q", detail::jnum(q.q)}, {"theta", detail::jnum(q.theta)},
                      {"r", detail::jnum(q.r)}, {"mu", q.mu}, {"space", to_string(q.space)}, {"width", to_string(q.kind)}};
        j["atlas"] = atlas_json(e);
        write_file(*out / "atlas.json", detail::dump(j));
    }
    return {0, format_atlas(e)};
}

/// Runs the configured command. Throws contract_violation or io_error.
inline CommandResult run_command(const ExperimentConfig& c, const std::filesystem::path& out, bool write_outputs = true)
{
    if (c.command == "atlas") {
        if (!write_outputs) return cmd_atlas(c, nullptr);
        prepare_output_dir(out);
        return cmd_atlas(c, &out);
    }
    prepare_output_dir(out);
    write_file(out / "config.txt", to_config_text(c));
    if (c.command == "interpolate") return cmd_interpolate(c, out);
    if (c.command == "convergence") return cmd_convergence(c, out);
    if (c.command == "grid") return cmd_grid(c, out);
    if (c.command == "norms") return cmd_norms(c, out);
    throw contract_violation("unknown command " + c.command);
}

} // namespace hypercross
