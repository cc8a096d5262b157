#pragma once
//
// Module      : cli
// Description : experiment configs, the command dispatcher and report files
//
// Reports are JSON objects
//
//   {"command":..,"config":{..},"results":{..},
//    "certificates":{"tails":..,"slack":..},"violations":[..],"timestamp":..}
//
// and sweep commands also write a CSV table (17 significant digits, '.'
// decimal point regardless of locale).
//

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apgabor.hpp"
#include "io.hpp"

namespace apgabor {

inline const std::vector<std::string>&
command_names()
{
    static const std::vector<std::string> names = {"bessel",   "frame-bounds", "analyze",     "synthesize",
                                                   "sandwich", "subspace",     "oracle-check"};
    return names;
}

struct experiment_config
{
    std::string                 command;
    std::string                 window = "gaussian:sigma=1";
    double                      alpha  = 1.0;
    double                      beta   = 1.0;
    std::int64_t                K      = 10;
    std::optional<std::int64_t> L;  // chosen from the window when absent
    std::int64_t                P      = 20;
    std::int64_t                grid   = 256;
    std::string                 input;
    std::string                 output;  // empty: report goes to stdout
    std::string                 csv;
    std::uint64_t               seed     = 42;
    std::int64_t                trials   = 100;
    std::int64_t                n_terms  = 6;
    double                      T        = 200.0;
    double                      dt       = 1e-3;
    double                      tol      = 1e-6;
    double                      rtol     = 1e-2;
    std::vector<double>         mu;
    std::vector<std::int64_t>   F;
    bool                        timestamp = true;

    void
    validate() const
    {
        bool known = false;
        for (const auto& c : command_names())
            known = known || c == command;
        if (!known)
            throw argument_error("unknown command '" + command + "'");
        detail::require(alpha > 0.0 && std::isfinite(alpha), "--alpha must be positive");
        detail::require(beta > 0.0 && std::isfinite(beta), "--beta must be positive");
        detail::require(K >= 1 && P >= 1 && grid >= 1, "--K, --P and --grid must be >= 1");
        detail::require(!L || *L >= 1, "--L must be >= 1");
        detail::require(trials >= 1 && n_terms >= 1, "--trials and --terms must be >= 1");
        detail::require(T > 0.0 && dt > 0.0, "--T and --dt must be positive");
        detail::require(tol >= 0.0 && rtol > 0.0, "--tol must be nonnegative and --rtol positive");
    }
};

inline json
to_json(const experiment_config& c)
{
    json j = {{"command", c.command}, {"window", c.window}, {"alpha", c.alpha}, {"beta", c.beta},
              {"K", c.K},             {"P", c.P},           {"grid", c.grid},   {"input", c.input},
              {"seed", c.seed},       {"trials", c.trials}, {"terms", c.n_terms}, {"T", c.T},
              {"dt", c.dt},           {"tol", c.tol},       {"rtol", c.rtol},   {"mu", c.mu},
              {"F", c.F}};
    j["L"] = c.L ? json(*c.L) : json("auto");
    return j;
}

namespace detail {

inline std::string
csv_number(double v)
{
    // snprintf honours LC_NUMERIC; std::to_chars does not
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

inline std::string
utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm           tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json
read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw argument_error("cannot open input file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw argument_error("malformed JSON in '" + path + "': " + e.what());
    }
}

// cap used when the window's ℓ-tail cannot reach 1e-8 at a sane cost
inline constexpr std::int64_t ell_cap = 10000;

struct ell_choice
{
    std::int64_t L;
    bool         capped;
};

inline ell_choice
choose_ell(const experiment_config& c, const gabor_system& sys)
{
    if (c.L)
        return {*c.L, false};
    try {
        return {default_ell_truncation(sys, c.K, 1e-8, ell_cap), false};
    } catch (const precision_error&) {
        return {ell_cap, true};
    }
}

class report
{
public:
    explicit report(const experiment_config& c)
    {
        doc_["command"]      = c.command;
        doc_["config"]       = to_json(c);
        doc_["results"]      = json::object();
        doc_["certificates"] = {{"tails", json::object()}, {"slack", json::object()}};
        doc_["violations"]   = json::array();
        if (c.timestamp)
            doc_["timestamp"] = utc_timestamp();
    }

    json& results() { return doc_["results"]; }
    json& tails() { return doc_["certificates"]["tails"]; }
    json& slack() { return doc_["certificates"]["slack"]; }

    void violation(const std::string& what) { doc_["violations"].push_back(what); }
    bool violated() const { return !doc_["violations"].empty(); }

    const json& document() const { return doc_; }

private:
    json doc_;
};

inline void
write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw argument_error("cannot write '" + path + "'");
    out << text;
}

inline trig_polynomial
input_polynomial(const experiment_config& c)
{
    if (c.input.empty())
        return generate_random_polynomial(c.seed, c.n_terms, -5.0, 5.0, 0.1);
    auto j = read_json_file(c.input);
    if (j.contains("results") && j["results"].contains("f"))
        j = j["results"]["f"];
    return trig_polynomial_from_json(j);
}

//
// per-command bodies; each fills the report and returns the CSV table
// (empty when the command has none)
//

inline std::string
run_bessel(const experiment_config& c, report& rep)
{
    const window psi = parse_window(c.window);

    const auto w = wiener_norm(psi, c.K, 10000);
    const auto b = bessel_condition_sup(psi, c.alpha, c.grid, c.P);

    rep.results()["window_flags"] = {{"W", psi.flags().in_W},   {"W0", psi.flags().in_W0},
                                     {"L1", psi.flags().in_L1}, {"FW0", psi.flags().in_FW0}};
    rep.results()["wiener"]            = to_json(w);
    rep.results()["bessel_condition"]  = to_json(b);
    rep.tails()["wiener"]              = w.tail;
    rep.tails()["bessel_condition"]    = b.max_tail;

    if (psi.has_abs_decay()) {
        const gabor_system  sys(psi, c.alpha, c.beta);
        std::vector<double> residues;
        for (std::int64_t i = 0; i < c.grid; ++i)
            residues.push_back(sys.residue_period() * double(i) / double(c.grid));
        const auto s = schur_bessel_bound(sys, residues, c.P, choose_ell(c, sys).L);
        rep.results()["schur"] = {{"bound", s.bound}, {"row_sum", s.row_sum}, {"col_sum", s.col_sum},
                                  {"bessel_constant_bound", s.row_sum * s.col_sum}};
    } else {
        rep.results()["schur"] = "unavailable: transform not absolutely summable";
    }

    std::string csv = "lambda,periodized_sum\n";
    for (std::int64_t i = 0; i < c.grid; ++i) {
        const double lambda = two_pi / c.alpha * double(i) / double(c.grid);
        csv += csv_number(lambda) + "," + csv_number(periodized_spectral_sum(psi, lambda, two_pi / c.alpha, c.P)) +
               "\n";
    }
    return csv;
}

inline std::string
run_frame_bounds(const experiment_config& c, report& rep)
{
    const gabor_system sys(parse_window(c.window), c.alpha, c.beta);
    const auto         ell = choose_ell(c, sys);
    const auto         fb  = frame_bounds(sys, c.grid, c.K, ell.L);

    rep.results()                      = to_json(fb);
    rep.results()["ell_truncation_capped"] = ell.capped;
    rep.slack()["certified"]          = fb.certified_slack;
    rep.slack()["grid_variation"]     = fb.grid_variation;
    rep.tails()["ell"]                = fb.certified_slack;

    std::string csv = "lambda,eig_min,eig_max\n";
    for (const auto& row : fb.sweep)
        csv += csv_number(row.lambda) + "," + csv_number(row.eig_min) + "," + csv_number(row.eig_max) + "\n";
    return csv;
}

inline std::string
run_analyze(const experiment_config& c, report& rep)
{
    const gabor_system sys(parse_window(c.window), c.alpha, c.beta);
    const auto         f   = input_polynomial(c);
    const auto         fam = make_analysis_family(f, sys, c.tol);
    const double       n2  = std::pow(ap_norm(f), 2);
    const double       S   = bessel_total(fam);

    rep.results()["f"]            = to_json(f);
    rep.results()["family"]       = to_json(fam);
    rep.results()["bessel_total"] = S;
    rep.results()["norm2"]        = n2;
    rep.results()["ratio"]        = n2 > 0.0 ? S / n2 : 0.0;
    rep.tails()["ell"]            = fam.tail_bound;
    return {};
}

inline std::string
run_synthesize(const experiment_config& c, report& rep)
{
    if (c.input.empty())
        throw argument_error("synthesize needs --input with an analysis family");
    auto j = read_json_file(c.input);
    if (j.contains("results") && j["results"].contains("family"))
        j = j["results"]["family"];
    const auto fam = analysis_family_from_json(j);

    const gabor_system sys(parse_window(fam.window_spec.empty() ? c.window : fam.window_spec), fam.alpha,
                           fam.beta);
    const auto g = gabor_synthesis(fam, sys, c.P);

    rep.results()["f"]     = to_json(g);
    rep.results()["norm2"] = std::pow(ap_norm(g), 2);
    rep.tails()["family"]  = fam.tail_bound;
    return {};
}

inline std::string
run_sandwich(const experiment_config& c, report& rep)
{
    const gabor_system sys(parse_window(c.window), c.alpha, c.beta);
    const auto         ell = choose_ell(c, sys);
    const auto         fb  = frame_bounds(sys, c.grid, c.K, ell.L);
    const double       widen = fb.certified_slack + fb.grid_variation + c.tol;

    rep.results()["frame_bounds"] = to_json(fb);
    rep.slack()["certified"]      = fb.certified_slack;
    rep.slack()["grid_variation"] = fb.grid_variation;
    rep.slack()["tol"]            = c.tol;
    rep.slack()["total"]          = widen;

    if (!(fb.A - widen > 0.0))
        rep.violation("lower frame bound not certified positive: A = " + format_number(fb.A) +
                      ", slack = " + format_number(widen) + ", A - slack = " + format_number(fb.A - widen));

    random_source rng(c.seed);
    double        lo = std::numeric_limits<double>::infinity();
    double        hi = -lo;
    double        max_tail = 0.0;
    std::string   csv = "trial,S,norm2,ratio,lower,upper\n";
    json          trials = json::array();

    for (std::int64_t t = 0; t < c.trials; ++t) {
        const auto f = random_polynomial(rng, rng.integer(1, c.n_terms), -5.0, 5.0, 0.1);
        const auto r = frame_sandwich_check(f, sys, fb, c.tol);

        lo       = std::min(lo, r.ratio());
        hi       = std::max(hi, r.ratio());
        max_tail = std::max(max_tail, r.tail);
        for (const auto& v : r.violations)
            rep.violation("trial " + std::to_string(t) + ": " + v);
        trials.push_back(to_json(r));
        csv += std::to_string(t) + "," + csv_number(r.energy) + "," + csv_number(r.norm2) + "," +
               csv_number(r.ratio()) + "," + csv_number(r.lower) + "," + csv_number(r.upper) + "\n";
    }

    rep.results()["trials"]    = trials;
    rep.results()["min_ratio"] = lo;
    rep.results()["max_ratio"] = hi;
    rep.tails()["ell"]         = max_tail;
    return csv;
}

inline std::string
run_subspace(const experiment_config& c, report& rep)
{
    const gabor_system sys(parse_window(c.window), c.alpha, c.beta);
    std::vector<double> mu = c.mu;
    if (mu.empty())
        for (int j = 0; j <= 50; ++j)
            mu.push_back(j + 0.5);
    const spectrum_set M(mu);

    const std::int64_t L = c.L ? *c.L : std::max<std::int64_t>(64, detail::choose_ell(c, sys).L);
    const auto         sb = subspace_frame_bounds(M, sys, L);
    rep.results()["subspace"] = to_json(sb);
    rep.tails()["ell"]        = sb.tails;

    std::string csv = "mu,diagonal_sum";
    std::optional<modulation_energies> fm;
    if (!c.F.empty()) {
        fm = finite_modulation_failure(M, sys, c.F);
        rep.results()["finite_modulation"] = {{"values", fm->values}, {"log_values", fm->log_values}};
        csv += ",finite_energy";
    }
    csv += "\n";
    for (std::size_t j = 0; j < mu.size(); ++j) {
        csv += csv_number(mu[j]) + "," + csv_number(sb.sums[j]);
        if (fm)
            csv += "," + csv_number(fm->values[j]);
        csv += "\n";
    }
    return csv;
}

inline std::string
run_oracle_check(const experiment_config& c, report& rep)
{
    const window      psi = parse_window(c.window);
    const ap_sequence a   = c.input.empty() ? ap_sequence::exponential(0.5)
                                            : ap_sequence_from_json(read_json_file(c.input));
    const double mu = c.mu.empty() ? 0.5 / c.alpha : c.mu.front();

    const auto      K        = periodization_oracle_min_K(psi, c.alpha, c.T);
    const auto      o        = periodization_oracle(a, psi, c.alpha, mu, c.T, c.dt, K);
    const complex_t expected = psi.fourier(mu) * a.coefficient(reduce_phase(mu * c.alpha)) / c.alpha;
    const double    err      = std::abs(o.value - expected);
    const double    rel      = std::abs(expected) > 0.0 ? err / std::abs(expected) : err;

    rep.results()["oracle"]         = {{"re", o.value.real()}, {"im", o.value.imag()}};
    rep.results()["closed_form"]    = {{"re", expected.real()}, {"im", expected.imag()}};
    rep.results()["relative_error"] = rel;
    rep.results()["K"]              = K;
    rep.results()["radius"]         = o.radius;
    rep.tails()["time"]             = o.truncation_bound;

    if (!(rel < c.rtol))
        rep.violation("oracle mismatch: relative error " + format_number(rel) + " >= rtol " +
                      format_number(c.rtol) + " (oracle " + format_number(std::abs(o.value)) +
                      ", closed form " + format_number(std::abs(expected)) + ")");
    return {};
}

}  // namespace detail

//
// runs one experiment; the report goes to c.output (stdout when empty) and the
// CSV table, if any, to c.csv. Returns 0, or 2 when the report lists violations
//
inline int
run(const experiment_config& c, std::ostream& out = std::cout)
{
    c.validate();
    detail::report rep(c);

    std::string csv;
    if (c.command == "bessel")
        csv = detail::run_bessel(c, rep);
    else if (c.command == "frame-bounds")
        csv = detail::run_frame_bounds(c, rep);
    else if (c.command == "analyze")
        csv = detail::run_analyze(c, rep);
    else if (c.command == "synthesize")
        csv = detail::run_synthesize(c, rep);
    else if (c.command == "sandwich")
        csv = detail::run_sandwich(c, rep);
    else if (c.command == "subspace")
        csv = detail::run_subspace(c, rep);
    else
        csv = detail::run_oracle_check(c, rep);

    const std::string text = rep.document().dump(2) + "\n";
    if (c.output.empty())
        out << text;
    else
        detail::write_text(c.output, text);
    if (!c.csv.empty() && !csv.empty())
        detail::write_text(c.csv, csv);

    return rep.violated() ? 2 : 0;
}

//
// command line: apgabor <command> [--flag value ...] [--config file.toml]
// config file keys are flag names; flags given on the command line win
//
inline void
add_options(CLI::App& app, experiment_config& c)
{
    app.add_option("command", c.command, "computation to run")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--window", c.window, "window spec, e.g. gaussian:sigma=1, triangle, rect:a=0,b=1");
    app.add_option("--alpha", c.alpha, "time step");
    app.add_option("--beta", c.beta, "frequency step");
    app.add_option("--K", c.K, "fiber truncation |k| <= K");
    app.add_option("--L", c.L, "modulation truncation |l| <= L (default: from the window)");
    app.add_option("--P", c.P, "lattice truncation |p| <= P");
    app.add_option("--grid", c.grid, "number of lambda grid points");
    app.add_option("--input", c.input, "input JSON (polynomial, sequence or family)");
    app.add_option("--output", c.output, "report path (default stdout)");
    app.add_option("--csv", c.csv, "CSV table path");
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--trials", c.trials, "number of random trials");
    app.add_option("--terms", c.n_terms, "maximum terms per random polynomial");
    app.add_option("--T", c.T, "half length of the averaging window");
    app.add_option("--dt", c.dt, "quadrature step");
    app.add_option("--tol", c.tol, "analysis tail tolerance");
    app.add_option("--rtol", c.rtol, "relative tolerance for oracle-check");
    app.add_option("--mu", c.mu, "frequencies (subspace set, or oracle frequency)")->delimiter(',');
    app.add_option("--F", c.F, "finite modulation set")->delimiter(',');
    app.add_flag("!--no-timestamp", c.timestamp, "omit the timestamp field");
    app.set_config("--config", "", "TOML/INI config file, keys are flag names");
}

// parse + run with the exit code convention 0 ok, 2 violation, 1 usage error
inline int
main_entry(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Gabor analysis on almost periodic functions", "apgabor"};
    experiment_config c;
    add_options(app, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "apgabor: " << e.what() << "\n";
        return 1;
    }

    try {
        return run(c, out);
    } catch (const argument_error& e) {
        err << "apgabor: " << e.what() << "\n";
        return 1;
    } catch (const unsupported_window_error& e) {
        err << "apgabor: " << e.what() << "\n";
        return 1;
    } catch (const precision_error& e) {
        err << "apgabor: " << e.what() << "\n";
        return 1;
    } catch (const invariant_violation& e) {
        err << "apgabor: invariant violation: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace apgabor
