#include "freenoise/chebyshev.hpp"
#include "freenoise/error.hpp"
#include "freenoise/freefock.hpp"
#include "freenoise/matmodel.hpp"
#include "freenoise/process.hpp"
#include "freenoise/spectral.hpp"
#include "freenoise/trace.hpp"
#include "freenoise/words.hpp"
#include "suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace freenoise;

namespace {

constexpr const char* kCsvVersion = "# freenoise-csv v1";

// ---------------------------------------------------------------------------
// Output

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Rounds every float in the tree to 12 significant digits so the JSON dump
// prints at most that many.
void round_floats(json& j) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isfinite(v)) {
            j = v == 0.0 ? 0.0 : std::stod(fmt12(v));
        } else {
            j = nullptr;
        }
    } else if (j.is_structured()) {
        for (auto& child : j) {
            round_floats(child);
        }
    }
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

struct Output {
    json config = json::object();
    json result;
    Table table;
};

std::string csv_cell(const json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_number_float()) {
        return fmt12(v.get<double>());
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    }
    return v.dump();
}

void emit(Output out, const std::string& format) {
    round_floats(out.config);
    round_floats(out.result);
    if (format == "csv") {
        std::cout << kCsvVersion << "\n# config: " << out.config.dump() << "\n";
        for (std::size_t i = 0; i < out.table.columns.size(); ++i) {
            std::cout << (i ? "," : "") << out.table.columns[i];
        }
        std::cout << "\n";
        for (const auto& row : out.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::cout << (i ? "," : "") << csv_cell(row[i]);
            }
            std::cout << "\n";
        }
    } else {
        json doc{{"config", out.config}, {"result", out.result}};
        std::cout << doc.dump(2) << "\n";
    }
    std::cout.flush();
}

// ---------------------------------------------------------------------------
// Shared option groups

struct Globals {
    std::string format = "json";
    std::uint64_t seed = 1;
};

struct DensityOptions {
    std::string kind = "lebesgue";
    std::string config_path;
    double H = 0.5, N = 0, gamma = 0, scale = 1, C1 = 1, C2 = 1, u_max = 0, tol = 1e-9;
    std::vector<std::pair<std::string, CLI::Option*>> numeric;
    CLI::Option* kind_opt = nullptr;

    void attach(CLI::App* app) {
        kind_opt = app->add_option("--density", kind, "lebesgue|fbm|poly|powerlaw|exp")
                       ->check(CLI::IsMember({"lebesgue", "fbm", "poly", "powerlaw", "exp", "exponential"}));
        app->add_option("--density-config", config_path, "key=value file (kind, H, N, gamma, scale, C1, C2, u_max, tol)")
            ->check(CLI::ExistingFile);
        numeric = {
            {"H", app->add_option("--H", H, "Hurst index for fbm")},
            {"N", app->add_option("--N", N, "order for poly: m = scale (1+u^2)^N")},
            {"gamma", app->add_option("--gamma", gamma, "exponent for powerlaw: m = scale |u|^gamma")},
            {"scale", app->add_option("--scale", scale, "density scale")},
            {"C1", app->add_option("--C1", C1, "exp: m = C1 e^{C2 |u|}")},
            {"C2", app->add_option("--C2", C2, "exp: m = C1 e^{C2 |u|}")},
            {"u_max", app->add_option("--u-max", u_max, "frequency cutoff override (0 = automatic)")},
            {"tol", app->add_option("--tol", tol, "quadrature tolerance")},
        };
    }

    // File first, then command-line values on top.
    SpectralDensity resolve() const {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str() + "\n";
        }
        if (config_path.empty() || kind_opt->count() > 0) {
            text += "kind=" + kind + "\n";
        }
        const double values[] = {H, N, gamma, scale, C1, C2, u_max, tol};
        for (std::size_t i = 0; i < numeric.size(); ++i) {
            if (numeric[i].second->count() > 0) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", values[i]);
                text += numeric[i].first + "=" + buf + "\n";
            }
        }
        return parse_density_config(text);
    }
};

json density_json(const SpectralDensity& d) {
    json j = d.to_json();
    j["name"] = d.name();
    return j;
}

FockElement parse_fock(const std::string& text, const std::string& what) {
    try {
        return fock_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw ValidationError(what + ": expected a JSON list of {word, re, im}: " + e.what());
    }
}

json rational_json(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------
// Subcommands. Each one fills `out` or throws.

struct LinearizeArgs {
    unsigned m = 0, n = 0;
};

Output run_linearize(const LinearizeArgs& a) {
    Output out;
    out.config = {{"subcommand", "linearize"}, {"m", a.m}, {"n", a.n}, {"tolerances", {{"arithmetic", "exact"}}}};
    const ChebPoly p = linearize(a.m, a.n);
    out.result = p.labels();
    out.table.columns = {"index", "coefficient"};
    for (const auto& [deg, c] : p.terms()) {
        out.table.rows.push_back({deg, to_string(c)});
    }
    return out;
}

struct TraceArgs {
    std::string word = "1";
    std::string beta = "1";
    std::string engine = "all";
    std::string basis = "u";
    std::size_t cap = kDefaultDegreeCap;
    double agree_tol = 1e-12;
};

Output run_trace(const TraceArgs& a) {
    const Word alpha = Word::parse(a.word);
    const Word beta = Word::parse(a.beta);
    const bool monomial = a.basis == "monomial";
    if (monomial && !beta.empty()) {
        throw ValidationError("--beta applies to the u basis only");
    }
    Output out;
    out.config = {{"subcommand", "trace"}, {"word", alpha.str()},       {"beta", beta.str()},
                  {"engine", a.engine},    {"basis", a.basis},          {"cap", a.cap},
                  {"radius", 2},           {"tolerances", {{"agreement", a.agree_tol}}}};

    std::vector<TraceEngine> engines;
    if (a.engine == "all") {
        if (!monomial) {
            engines.push_back(TraceEngine::Reduction);
        }
        engines.push_back(TraceEngine::Pairing);
        engines.push_back(TraceEngine::Fock);
    } else if (a.engine == "reduction") {
        if (monomial) {
            throw ValidationError("the reduction engine traces U words; use --basis u");
        }
        engines.push_back(TraceEngine::Reduction);
    } else if (a.engine == "pairing") {
        engines.push_back(TraceEngine::Pairing);
    } else {
        engines.push_back(TraceEngine::Fock);
    }

    const std::vector<Letter> letters = alpha.letters();
    std::vector<TraceResult> results;
    for (TraceEngine e : engines) {
        TraceResult r;
        r.engine = e;
        switch (e) {
            case TraceEngine::Reduction:
                r.exact = trace_reduction(beta, alpha);
                break;
            case TraceEngine::Pairing:
                r.exact = monomial ? trace_pairings(letters) : trace_pairings_u(beta, alpha);
                break;
            case TraceEngine::Fock: {
                const OperatorExpr expr = monomial ? OperatorExpr::monomial(letters)
                                                   : OperatorExpr::u_word(beta).adjoint() * OperatorExpr::u_word(alpha);
                r.value = trace_fock(expr, a.cap);
                break;
            }
        }
        if (r.exact) {
            r.value = to_double(*r.exact);
        }
        results.push_back(r);
    }

    double spread = 0.0;
    for (const auto& r : results) {
        spread = std::max(spread, std::abs(r.value - results.front().value));
    }
    json list = json::array();
    out.table.columns = {"engine", "value", "exact"};
    for (const auto& r : results) {
        const json exact = r.exact ? rational_json(*r.exact) : json(nullptr);
        list.push_back({{"engine", to_string(r.engine)}, {"value", r.value}, {"exact", exact}});
        out.table.rows.push_back({to_string(r.engine), r.value, exact});
    }
    out.result = {{"engines", list}, {"max_difference", spread}, {"agree", spread <= a.agree_tol}};
    return out;
}

struct MomentArgs {
    unsigned k_max = 10;
    std::string radius = "2";
};

Output run_moments(const MomentArgs& a) {
    SemicircleLaw law{parse_rational(a.radius)};
    if (law.radius <= 0) {
        throw ValidationError("radius must be positive");
    }
    Output out;
    out.config = {{"subcommand", "moments"},
                  {"k_max", a.k_max},
                  {"radius", to_string(law.radius)},
                  {"tolerances", {{"quadrature", 1e-14}}}};
    out.table.columns = {"k", "exact", "value", "quadrature", "pairings", "difference"};
    json list = json::array();
    double worst = 0.0;
    for (unsigned k = 0; k <= a.k_max; ++k) {
        const Rational exact = semicircle_moment(k, law);
        const double value = to_double(exact);
        const double quad_value = moment_quadrature(k, law);
        const std::vector<Letter> letters(k, 0);
        const Rational pairs = trace_pairings(letters, law);
        const double diff = std::abs(quad_value - value);
        worst = std::max(worst, diff);
        list.push_back({{"k", k},
                        {"exact", to_string(exact)},
                        {"value", value},
                        {"quadrature", quad_value},
                        {"pairings", to_string(pairs)},
                        {"difference", diff}});
        out.table.rows.push_back({k, to_string(exact), value, quad_value, to_string(pairs), diff});
    }
    out.result = {{"moments", list}, {"max_quadrature_difference", worst}};
    return out;
}

struct VageArgs {
    std::string seq = "2n";
    int d = 2;
    int p = 1;
    std::size_t trials = 200;
};

Output run_vage(const VageArgs& a, std::uint64_t seed) {
    const WeightSequence seq = WeightSequence::parse(a.seq);
    Output out;
    out.config = {{"subcommand", "vage"}, {"seq", seq.name()}, {"d", a.d},   {"p", a.p},
                  {"q", a.p + a.d},       {"trials", a.trials}, {"seed", seed},
                  {"tolerances", {{"zeta", 1e-14}, {"violation", 1e-12}}}};
    const VageConstant c = vage_constant(a.d, seq);
    json res{{"gap", c.gap},
             {"weight_sum", c.weight_sum},
             {"b_squared", c.b_squared},
             {"b", c.b},
             {"nuclearity_index", nuclearity_index(seq)}};
    out.table.columns = {"d", "weight_sum", "b_squared", "b", "trials", "violations", "max_ratio"};
    std::vector<json> row{c.gap, c.weight_sum, c.b_squared, c.b, a.trials, nullptr, nullptr};
    if (a.trials > 0) {
        const VageTrials t = vage_trials(a.p, a.p + a.d, seq, a.trials, seed);
        res["trials"] = {{"count", t.trials}, {"violations", t.violations}, {"max_ratio", t.max_ratio}};
        row[5] = t.violations;
        row[6] = t.max_ratio;
    }
    out.result = res;
    out.table.rows.push_back(row);
    return out;
}

struct GridArgs {
    std::vector<double> t{1.0};
    std::vector<double> s{1.0};
};

Output run_kernel(const DensityOptions& dopt, const GridArgs& a) {
    const SpectralDensity dens = dopt.resolve();
    Output out;
    out.config = {{"subcommand", "kernel"}, {"density", density_json(dens)}, {"t", a.t}, {"s", a.s},
                  {"tolerances", {{"quadrature", dens.tol}}}};
    out.table.columns = {"t", "s", "K", "K_r", "difference", "error_estimate", "tail", "u_max"};
    json list = json::array();
    for (double t : a.t) {
        for (double s : a.s) {
            const IntegralResult k = kernel_detail(dens, t, s);
            // Second route through r(t) + r(s) - r(t - s).
            const double kr =
                (r_function(dens, t) + r_function(dens, s) - r_function(dens, t - s)) / (2.0 * std::numbers::pi);
            const double diff = std::abs(k.value - kr);
            list.push_back({{"t", t},
                            {"s", s},
                            {"K", k.value},
                            {"K_r", kr},
                            {"difference", diff},
                            {"error_estimate", k.error_estimate},
                            {"tail", k.tail},
                            {"u_max", k.u_max}});
            out.table.rows.push_back({t, s, k.value, kr, diff, k.error_estimate, k.tail, k.u_max});
        }
    }
    out.result = list;
    return out;
}

Output run_rfun(const DensityOptions& dopt, const std::vector<double>& ts) {
    const SpectralDensity dens = dopt.resolve();
    Output out;
    out.config = {{"subcommand", "rfun"}, {"density", density_json(dens)}, {"t", ts},
                  {"tolerances", {{"quadrature", dens.tol}}}};
    out.table.columns = {"t", "r", "error_estimate", "tail", "u_max"};
    json list = json::array();
    for (double t : ts) {
        const IntegralResult r = r_function_detail(dens, t);
        list.push_back({{"t", t}, {"r", r.value}, {"error_estimate", r.error_estimate}, {"tail", r.tail},
                        {"u_max", r.u_max}});
        out.table.rows.push_back({t, r.value, r.error_estimate, r.tail, r.u_max});
    }
    out.result = list;
    return out;
}

struct TmArgs {
    std::size_t n_max = 10;
    std::vector<double> t{0.5};
};

Output run_tmcoeff(const DensityOptions& dopt, const TmArgs& a) {
    const SpectralDensity dens = dopt.resolve();
    if (a.n_max == 0) {
        throw ValidationError("--n-max must be positive");
    }
    double t_max = 0.0;
    for (double t : a.t) {
        t_max = std::max(t_max, std::abs(t));
    }
    const CoefficientEvaluator coarse(dens, a.n_max, t_max);
    const CoefficientEvaluator fine(dens, a.n_max, t_max, 2.0, 30);
    Output out;
    out.config = {{"subcommand", "tmcoeff"}, {"density", density_json(dens)}, {"n_max", a.n_max}, {"t", a.t},
                  {"u_max", coarse.u_max()},  {"nodes", coarse.node_count()},
                  {"tolerances", {{"quadrature", dens.tol}}}};
    out.table.columns = {"t", "n", "tm", "alpha", "refined_difference"};
    json list = json::array();
    double worst = 0.0;
    for (double t : a.t) {
        const auto tm = coarse.tm(t), al = coarse.alpha(t);
        const auto tm2 = fine.tm(t), al2 = fine.alpha(t);
        for (std::size_t i = 0; i < a.n_max; ++i) {
            const double diff = std::max(std::abs(tm[i] - tm2[i]), std::abs(al[i] - al2[i]));
            worst = std::max(worst, diff);
            list.push_back({{"t", t}, {"n", i + 1}, {"tm", tm[i]}, {"alpha", al[i]}, {"refined_difference", diff}});
            out.table.rows.push_back({t, i + 1, tm[i], al[i], diff});
        }
    }
    out.result = {{"coefficients", list}, {"max_refined_difference", worst}};
    if (worst > dens.tol) {
        throw QuadratureNonConvergence("coarse and refined grids differ by " + fmt12(worst) + " > tol " +
                                       fmt12(dens.tol));
    }
    return out;
}

struct ProcessArgs {
    std::size_t n_max = 200;
    int p = 0;  // 0: smallest admissible level
    std::size_t cap = kDefaultDegreeCap;

    ProcessConfig config(const SpectralDensity& dens, double t_max) const {
        ProcessConfig cfg;
        cfg.density = dens;
        cfg.n_max = n_max;
        cfg.degree_cap = cap;
        cfg.p = p != 0 ? p : (dens.polynomial_class() ? static_cast<int>(dens.growth_order()) + 3 : 1);
        cfg.t_max = t_max;
        return cfg;
    }

    void attach(CLI::App* app) {
        app->add_option("--n-max", n_max, "Hermite truncation");
        app->add_option("--p", p, "weight level (default: N + 3, or 1 for exp)");
        app->add_option("--cap", cap, "Fock degree cap");
    }
};

json process_json(const ProcessConfig& cfg) {
    return {{"density", density_json(cfg.density)}, {"n_max", cfg.n_max}, {"p", cfg.p}, {"cap", cfg.degree_cap},
            {"t_max", cfg.t_max}};
}

struct DerivArgs {
    double t = 0.7;
    std::vector<double> steps{1e-2, 1e-3, 1e-4};
    std::string f = R"([{"word":"1","re":1,"im":0},{"word":"z0","re":0.5,"im":0}])";
};

Output run_derivative(const DensityOptions& dopt, const ProcessArgs& pa, const DerivArgs& a) {
    const SpectralDensity dens = dopt.resolve();
    double t_max = std::abs(a.t);
    for (double h : a.steps) {
        t_max = std::max(t_max, std::abs(a.t + h));
    }
    const ProcessConfig cfg = pa.config(dens, t_max);
    const FockElement f = parse_fock(a.f, "--f");
    const FreeProcess proc(cfg);
    const DerivativeCheck chk = derivative_check(proc, a.t, f, a.steps);
    Output out;
    out.config = {{"subcommand", "derivative-check"}, {"process", process_json(cfg)}, {"t", a.t},
                  {"steps", a.steps},                {"f", to_json(f)},
                  {"weights", proc.weights().name()},
                  {"tolerances", {{"quadrature", dens.tol}}}};
    out.table.columns = {"h", "error"};
    for (std::size_t i = 0; i < chk.steps.size(); ++i) {
        out.table.rows.push_back({chk.steps[i], chk.errors[i]});
    }
    out.result = {{"level", -chk.level}, {"steps", chk.steps}, {"errors", chk.errors}, {"slope", chk.slope}};
    return out;
}

struct IntegrateArgs {
    double a = 0.0, b = 1.0;
    unsigned first_level = 2;
    unsigned levels = 12;
    int q = 0;
    std::string integrand = "constant";
    std::string y = R"([{"word":"1","re":1,"im":0}])";
    std::string f = R"([{"word":"1","re":1,"im":0}])";
    double contraction = 0.6;
};

Output run_integrate(const DensityOptions& dopt, const ProcessArgs& pa, const IntegrateArgs& a, int& exit_code) {
    const SpectralDensity dens = dopt.resolve();
    const ProcessConfig cfg = pa.config(dens, std::max(std::abs(a.a), std::abs(a.b)));
    const FockElement y = parse_fock(a.y, "--y");
    const FockElement f = parse_fock(a.f, "--f");
    const FreeProcess proc(cfg);
    IntegrandPath path = a.integrand == "zero"       ? IntegrandPath::zero()
                         : a.integrand == "constant" ? IntegrandPath::constant(y)
                                                     : IntegrandPath::process(proc, y);
    IntegralOptions opts;
    opts.first_level = a.first_level;
    opts.last_level = a.levels;
    opts.q = a.q != 0 ? a.q : cfg.p + 2;
    opts.contraction = a.contraction;
    const IntegralReport rep = stochastic_integral(proc, path, f, a.a, a.b, opts);

    Output out;
    out.config = {{"subcommand", "integrate"},
                  {"process", process_json(cfg)},
                  {"a", a.a},
                  {"b", a.b},
                  {"integrand", path.name},
                  {"y", to_json(y)},
                  {"f", to_json(f)},
                  {"first_level", opts.first_level},
                  {"levels", opts.last_level},
                  {"q", opts.q},
                  {"weights", proc.weights().name()},
                  {"tolerances", {{"quadrature", dens.tol}, {"contraction", opts.contraction}}}};
    out.table.columns = {"level", "tags", "mesh", "norm", "distance", "ratio", "max_vage_ratio"};
    json levels = json::array();
    for (const auto& l : rep.levels) {
        levels.push_back({{"level", l.level},
                          {"tags", l.tags},
                          {"mesh", l.mesh},
                          {"norm", l.norm},
                          {"distance", l.distance},
                          {"ratio", l.ratio},
                          {"max_vage_ratio", l.max_vage_ratio}});
        out.table.rows.push_back({l.level, l.tags, l.mesh, l.norm, l.distance, l.ratio, l.max_vage_ratio});
    }
    out.result = {{"vage_b", rep.vage_b},
                  {"levels", levels},
                  {"converged", rep.converged},
                  {"integral", to_json(rep.result.pruned(1e-15))}};
    if (!rep.converged) {
        exit_code = 3;
        std::cerr << "error: Riemann sums are not Cauchy at level -" << opts.q << "\n";
    }
    return out;
}

struct SimulateArgs {
    EnsembleConfig ens;
    std::string word = "z0 z1 z0 z1";
    std::string basis = "monomial";
};

Output run_simulate(SimulateArgs a, std::uint64_t seed) {
    a.ens.seed = seed;
    const Word w = Word::parse(a.word);
    const Rational radius = parse_rational(fmt12(a.ens.radius));
    TraceEstimate est;
    Rational exact;
    if (a.basis == "u") {
        est = estimate_u_trace(a.ens, Word{}, w);
        exact = trace_reduction(Word{}, w);
    } else {
        const auto letters = w.letters();
        est = estimate_trace(a.ens, letters);
        exact = trace_pairings(letters, SemicircleLaw{radius});
    }
    const double ex = to_double(exact);
    Output out;
    out.config = {{"subcommand", "simulate"}, {"dim", a.ens.dim},       {"samples", a.ens.samples},
                  {"generators", a.ens.generators}, {"radius", a.ens.radius}, {"seed", seed},
                  {"word", w.str()},        {"basis", a.basis},         {"tolerances", json::object()}};
    const json z = est.standard_error > 0.0 ? json((est.mean - ex) / est.standard_error) : json(nullptr);
    out.result = {{"mean", est.mean}, {"se", est.standard_error}, {"exact", ex}, {"exact_rational", to_string(exact)},
                  {"z_score", z}};
    out.table.columns = {"word", "mean", "se", "exact", "z_score"};
    out.table.rows.push_back({w.str(), est.mean, est.standard_error, ex, z});
    return out;
}

Output run_selftest(const std::vector<int>& only, int& exit_code) {
    Output out;
    out.config = {{"subcommand", "selftest"}, {"criteria", only.empty() ? json("all") : json(only)}};
    out.table.columns = {"id", "name", "pass", "seconds", "detail"};
    std::size_t failed = 0;
    const auto results = acceptance::run_suite(only, [&](const acceptance::CriterionResult& r) {
        // Progress goes to stderr so stdout stays one document.
        std::cerr << acceptance::format_line(r) << std::endl;
        failed += r.pass ? 0 : 1;
    });
    json list = json::array();
    for (const auto& r : results) {
        list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        out.table.rows.push_back({r.id, r.name, r.pass, r.seconds, r.detail});
    }
    out.result = {{"criteria", list}, {"passed", results.size() - failed}, {"total", results.size()}};
    exit_code = failed == 0 ? 0 : 1;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"freenoise: free stochastic calculus toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", g.seed, "global seed");

    LinearizeArgs lin;
    auto* c_lin = app.add_subcommand("linearize", "U_m U_n as a sum of U's");
    c_lin->add_option("m", lin.m)->required();
    c_lin->add_option("n", lin.n)->required();

    TraceArgs tr;
    auto* c_tr = app.add_subcommand("trace", "tau(U_beta^* U_word) or tau of a monomial, by several engines");
    c_tr->add_option("--word", tr.word, "word such as \"z0^2 z1\"; \"1\" is the identity");
    c_tr->add_option("--beta", tr.beta, "left word (u basis)");
    c_tr->add_option("--engine", tr.engine, "trace engine")->check(CLI::IsMember({"reduction", "pairing", "fock", "all"}));
    c_tr->add_option("--basis", tr.basis, "u: Chebyshev word U_alpha; monomial: X letters")
        ->check(CLI::IsMember({"u", "monomial"}));
    c_tr->add_option("--cap", tr.cap, "Fock degree cap");

    MomentArgs mo;
    auto* c_mo = app.add_subcommand("moments", "semicircle moments: exact, quadrature, pairings");
    c_mo->add_option("--k-max", mo.k_max, "largest moment order");
    c_mo->add_option("--radius", mo.radius, "rational radius, e.g. 2 or 1/2");

    VageArgs va;
    auto* c_va = app.add_subcommand("vage", "tensor-product constant B_d and random trials");
    c_va->add_option("--seq", va.seq, "2n, 2^n or a comma-separated table");
    c_va->add_option("--d", va.d, "level gap q - p");
    c_va->add_option("--p", va.p, "level p for the trials");
    c_va->add_option("--trials", va.trials, "random pairs checked (0 skips)");

    DensityOptions d_ker, d_rf, d_tm, d_dc, d_in;
    GridArgs ker;
    auto* c_ker = app.add_subcommand("kernel", "covariance kernel K(t, s) on a grid");
    d_ker.attach(c_ker);
    c_ker->add_option("--t", ker.t, "comma-separated times")->delimiter(',');
    c_ker->add_option("--s", ker.s, "comma-separated times")->delimiter(',');

    std::vector<double> rf_t{1.0};
    auto* c_rf = app.add_subcommand("rfun", "r(t) = 2 int (1 - cos tu) m(u)/u^2 du");
    d_rf.attach(c_rf);
    c_rf->add_option("--t", rf_t, "comma-separated times")->delimiter(',');

    TmArgs tm;
    auto* c_tm = app.add_subcommand("tmcoeff", "(T_m h~_n)(t) and alpha_n(t)");
    d_tm.attach(c_tm);
    c_tm->add_option("--n-max", tm.n_max, "largest Hermite index");
    c_tm->add_option("--t", tm.t, "comma-separated times")->delimiter(',');

    ProcessArgs p_dc, p_in;
    DerivArgs dc;
    auto* c_dc = app.add_subcommand("derivative-check", "difference quotients of X(t) against W(t)");
    d_dc.attach(c_dc);
    p_dc.attach(c_dc);
    c_dc->add_option("--t", dc.t, "time");
    c_dc->add_option("--steps", dc.steps, "comma-separated step sizes")->delimiter(',');
    c_dc->add_option("--f", dc.f, "test vector as JSON [{word, re, im}, ...]");

    IntegrateArgs in;
    auto* c_in = app.add_subcommand("integrate", "dyadic Riemann sums of int Y (x) W f");
    d_in.attach(c_in);
    p_in.attach(c_in);
    c_in->add_option("--a", in.a, "left end");
    c_in->add_option("--b", in.b, "right end");
    c_in->add_option("--first-level", in.first_level, "coarsest level, 2^k cells");
    c_in->add_option("--levels", in.levels, "finest refinement level");
    c_in->add_option("--q", in.q, "integral level (default p + 2)");
    c_in->add_option("--integrand", in.integrand, "Y(t): zero, constant Y, or X(t) g")->check(CLI::IsMember({"zero", "constant", "process"}));
    c_in->add_option("--y", in.y, "Y (constant) or g in Y(t) = X(t) g, JSON");
    c_in->add_option("--f", in.f, "test vector, JSON");
    c_in->add_option("--contraction", in.contraction, "ratio bound for three consecutive levels");

    SimulateArgs si;
    auto* c_si = app.add_subcommand("simulate", "GUE Monte Carlo estimate of a trace");
    c_si->add_option("--dim", si.ens.dim, "matrix size");
    c_si->add_option("--samples", si.ens.samples, "independent matrix families");
    c_si->add_option("--generators", si.ens.generators, "GUE matrices per family");
    c_si->add_option("--radius", si.ens.radius, "semicircle radius");
    c_si->add_option("--word", si.word, "monomial letters or U word, e.g. \"z0 z1 z0 z1\"");
    c_si->add_option("--basis", si.basis, "monomial: H letters; u: p_n(H) = U_n(H / radius)")->check(CLI::IsMember({"u", "monomial"}));

    std::vector<int> st_ids;
    auto* c_st = app.add_subcommand("selftest", "run the acceptance criteria");
    c_st->add_option("ids", st_ids, "criterion ids (default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* sub = nullptr;
        for (const auto* s : app.get_subcommands()) {
            sub = s;
        }
        std::cerr << (sub ? sub->help() : app.help());
        return 2;
    }

    int exit_code = 0;
    try {
        Output out;
        if (*c_lin) {
            out = run_linearize(lin);
        } else if (*c_tr) {
            out = run_trace(tr);
        } else if (*c_mo) {
            out = run_moments(mo);
        } else if (*c_va) {
            out = run_vage(va, g.seed);
        } else if (*c_ker) {
            out = run_kernel(d_ker, ker);
        } else if (*c_rf) {
            out = run_rfun(d_rf, rf_t);
        } else if (*c_tm) {
            out = run_tmcoeff(d_tm, tm);
        } else if (*c_dc) {
            out = run_derivative(d_dc, p_dc, dc);
        } else if (*c_in) {
            out = run_integrate(d_in, p_in, in, exit_code);
        } else if (*c_si) {
            out = run_simulate(si, g.seed);
        } else if (*c_st) {
            out = run_selftest(st_ids, exit_code);
        }
        out.config["format"] = g.format;
        out.config["seed"] = g.seed;
        emit(std::move(out), g.format);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
