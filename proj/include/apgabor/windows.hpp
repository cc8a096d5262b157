#pragma once
//
// Module      : windows
// Description : window catalog with closed-form Fourier transforms, certified
//               decay bounds, Wiener amalgam norms and periodized spectral sums
//
// Fourier convention: ψ̂(ω) = ∫ ψ(t) e^{-iωt} dt.
//

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "ap_core.hpp"

namespace apgabor {

// class membership: ψ ∈ W, ψ ∈ W₀, ψ ∈ L¹, ψ̂ ∈ W₀
struct window_flags
{
    bool in_W   = false;
    bool in_W0  = false;
    bool in_L1  = false;
    bool in_FW0 = false;
};

////////////////////////////////////////////////////////////////////////////////
//
// window: immutable bundle of closed forms and decay certificates
//
////////////////////////////////////////////////////////////////////////////////

class window
{
public:
    using value_fn = std::function<complex_t(double)>;
    using real_fn  = std::function<double(double)>;

    // Σ_{|k|>K} sup_{x∈[0,1]} |ψ(x−k)|
    using time_decay_fn = std::function<double(std::int64_t)>;

    // upper bound of Σ_{|p|>P} |ψ̂(λ+γp)|^q for q = 2 (freq_decay) or 1 (abs_decay)
    using lattice_tail_fn = std::function<double(double, double, std::int64_t)>;

    struct definition
    {
        std::string     spec;
        value_fn        eval;
        value_fn        fourier;
        time_decay_fn   time_decay;
        lattice_tail_fn freq_decay;
        lattice_tail_fn abs_decay;        // empty when Σ_p |ψ̂| diverges
        real_fn         log_abs_fourier;  // optional, defaults to log|ψ̂|
        window_flags    flags;
    };

    explicit window(definition def)
        : def_(std::move(def))
    {
        detail::require(bool(def_.eval) && bool(def_.fourier) && bool(def_.time_decay) &&
                            bool(def_.freq_decay),
                        "window: eval, fourier, time_decay and freq_decay are required");
    }

    const std::string& spec() const { return def_.spec; }
    const window_flags& flags() const { return def_.flags; }

    complex_t operator()(double t) const { return def_.eval(t); }
    complex_t fourier(double omega) const { return def_.fourier(omega); }

    double
    log_abs_fourier(double omega) const
    {
        if (def_.log_abs_fourier)
            return def_.log_abs_fourier(omega);
        return std::log(std::abs(def_.fourier(omega)));
    }

    double
    time_decay(std::int64_t K) const
    {
        detail::require(K >= 0, "time_decay: K must be nonnegative");
        return def_.time_decay(K);
    }

    double
    freq_decay(double lambda, double gamma, std::int64_t P) const
    {
        detail::require(gamma > 0.0, "freq_decay: gamma must be positive");
        detail::require(P >= 0, "freq_decay: P must be nonnegative");
        return def_.freq_decay(lambda, gamma, P);
    }

    bool has_abs_decay() const { return bool(def_.abs_decay); }

    double
    abs_decay(double lambda, double gamma, std::int64_t P) const
    {
        if (!def_.abs_decay)
            throw unsupported_window_error("window '" + def_.spec +
                                           "': Σ|ψ̂(λ+γp)| has no decay certificate");
        detail::require(gamma > 0.0, "abs_decay: gamma must be positive");
        return def_.abs_decay(lambda, gamma, P);
    }

private:
    definition def_;
};

namespace detail {

//
// bound of Σ_{|p|>P} g(|λ+γp|) for g nonincreasing on [0,∞) with tail integral
// G(x) = ∫_x^∞ g; each side is bounded by g(x0) + G(x0)/γ where x0 is the
// distance of its first lattice point from the origin
//
template <typename g_fn, typename G_fn>
double
lattice_tail(g_fn g, G_fn G, double lambda, double gamma, std::int64_t P)
{
    auto side = [&](double x0) {
        if (x0 >= 0.0)
            return g(x0) + G(x0) / gamma;
        // lattice points straddle the origin
        return 2.0 * (g(0.0) + G(0.0) / gamma);
    };
    const double first = gamma * double(P + 1);
    return side(first + lambda) + side(first - lambda);
}

// Σ_{m≥m0} e^{-m²/(2σ²)}
inline double
gaussian_integer_tail(double m0, double sigma)
{
    const double s2 = 2.0 * sigma * sigma;
    return std::exp(-m0 * m0 / s2) +
           sigma * std::sqrt(std::numbers::pi / 2.0) * std::erfc(m0 / (sigma * std::sqrt(2.0)));
}

inline std::string
format_number(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

////////////////////////////////////////////////////////////////////////////////
//
// built-in windows
//
////////////////////////////////////////////////////////////////////////////////

// ψ(t) = e^{-t²/(2σ²)}, ψ̂(ω) = σ√(2π) e^{-σ²ω²/2}
inline window
gaussian(double sigma = 1.0)
{
    detail::require(sigma > 0.0 && std::isfinite(sigma), "gaussian: sigma must be positive");

    const double amp = sigma * std::sqrt(two_pi);
    const double s2  = sigma * sigma;

    window::definition d;
    d.spec = "gaussian:sigma=" + detail::format_number(sigma);
    d.eval = [s2](double t) -> complex_t { return std::exp(-t * t / (2.0 * s2)); };
    d.fourier = [amp, s2](double w) -> complex_t { return amp * std::exp(-s2 * w * w / 2.0); };
    d.log_abs_fourier = [amp, s2](double w) { return std::log(amp) - s2 * w * w / 2.0; };

    // interval suprema are e^{-(k-1)²/2σ²} for k > K and e^{-k²/2σ²} for k < -K
    d.time_decay = [sigma](std::int64_t K) {
        return detail::gaussian_integer_tail(double(K), sigma) +
               detail::gaussian_integer_tail(double(K + 1), sigma);
    };

    // |ψ̂|² = 2πσ² e^{-σ²ω²}
    d.freq_decay = [amp, sigma, s2](double lambda, double gamma, std::int64_t P) {
        auto g = [&](double x) { return amp * amp * std::exp(-s2 * x * x); };
        auto G = [&](double x) {
            return amp * amp * std::sqrt(std::numbers::pi) / (2.0 * sigma) * std::erfc(sigma * x);
        };
        return detail::lattice_tail(g, G, lambda, gamma, P);
    };
    d.abs_decay = [amp, sigma, s2](double lambda, double gamma, std::int64_t P) {
        auto g = [&](double x) { return amp * std::exp(-s2 * x * x / 2.0); };
        auto G = [&](double x) { return std::numbers::pi * std::erfc(sigma * x / std::sqrt(2.0)); };
        return detail::lattice_tail(g, G, lambda, gamma, P);
    };
    d.flags = {true, true, true, true};
    return window(std::move(d));
}

// hat function max(0, 1−|t|), ψ̂(ω) = (sin(ω/2)/(ω/2))²
inline window
triangle()
{
    window::definition d;
    d.spec = "triangle";
    d.eval = [](double t) -> complex_t { return std::max(0.0, 1.0 - std::abs(t)); };
    d.fourier = [](double w) -> complex_t {
        const double s = detail::sinc(w / 2.0);
        return s * s;
    };
    d.log_abs_fourier = [](double w) { return 2.0 * std::log(std::abs(detail::sinc(w / 2.0))); };

    // supported in [-1, 1]: only k = 0, 1 contribute
    d.time_decay = [](std::int64_t) { return 0.0; };

    // |ψ̂| ≤ min(1, 4/ω²)
    d.freq_decay = [](double lambda, double gamma, std::int64_t P) {
        auto g = [](double x) { return x <= 2.0 ? 1.0 : 16.0 / (x * x * x * x); };
        auto G = [](double x) {
            return x <= 2.0 ? (2.0 - x) + 2.0 / 3.0 : 16.0 / (3.0 * x * x * x);
        };
        return detail::lattice_tail(g, G, lambda, gamma, P);
    };
    d.abs_decay = [](double lambda, double gamma, std::int64_t P) {
        auto g = [](double x) { return x <= 2.0 ? 1.0 : 4.0 / (x * x); };
        auto G = [](double x) { return x <= 2.0 ? (2.0 - x) + 2.0 : 4.0 / x; };
        return detail::lattice_tail(g, G, lambda, gamma, P);
    };
    d.flags = {true, true, true, false};
    return window(std::move(d));
}

// indicator of [a, b), ψ̂(ω) = (e^{-iωa} − e^{-iωb})/(iω)
inline window
rectangle(double a = 0.0, double b = 1.0)
{
    detail::require(std::isfinite(a) && std::isfinite(b) && a < b, "rectangle: need a < b");

    const double width = b - a;
    const double mid   = 0.5 * (a + b);

    window::definition d;
    d.spec = "rect:a=" + detail::format_number(a) + ",b=" + detail::format_number(b);
    d.eval = [a, b](double t) -> complex_t { return (t >= a && t < b) ? 1.0 : 0.0; };
    d.fourier = [width, mid](double w) -> complex_t {
        return std::polar(width * detail::sinc(w * width / 2.0), -w * mid);
    };
    d.log_abs_fourier = [width](double w) {
        return std::log(width) + std::log(std::abs(detail::sinc(w * width / 2.0)));
    };

    // interval [-k, 1-k] meets (a, b) in positive measure iff -b < k < 1-a
    d.time_decay = [a, b](std::int64_t K) {
        const auto   kmin  = static_cast<std::int64_t>(std::floor(-b)) + 1;
        const auto   kmax  = static_cast<std::int64_t>(std::ceil(1.0 - a)) - 1;
        std::int64_t count = 0;
        if (kmax > K)
            count += kmax - std::max(kmin, K + 1) + 1;
        if (kmin < -K)
            count += std::min(kmax, -K - 1) - kmin + 1;
        return double(std::max<std::int64_t>(count, 0));
    };

    // |ψ̂| ≤ min(b−a, 2/|ω|); Σ|ψ̂| diverges so there is no abs_decay
    d.freq_decay = [width](double lambda, double gamma, std::int64_t P) {
        const double xc = 2.0 / width;
        auto g = [=](double x) { return x <= xc ? width * width : 4.0 / (x * x); };
        auto G = [=](double x) { return x <= xc ? width * width * (xc - x) + 2.0 * width : 4.0 / x; };
        return detail::lattice_tail(g, G, lambda, gamma, P);
    };
    d.flags = {true, false, true, false};
    return window(std::move(d));
}

// M_ω ψ: t ↦ e^{iωt} ψ(t), with transform ψ̂(· − ω)
inline window
modulated(const window& base, double omega)
{
    window::definition d;
    d.spec = "mod:omega=" + detail::format_number(omega) + "|" + base.spec();
    d.eval = [base, omega](double t) { return std::polar(1.0, omega * t) * base(t); };
    d.fourier = [base, omega](double w) { return base.fourier(w - omega); };
    d.log_abs_fourier = [base, omega](double w) { return base.log_abs_fourier(w - omega); };
    d.time_decay = [base](std::int64_t K) { return base.time_decay(K); };
    d.freq_decay = [base, omega](double lambda, double gamma, std::int64_t P) {
        return base.freq_decay(lambda - omega, gamma, P);
    };
    if (base.has_abs_decay())
        d.abs_decay = [base, omega](double lambda, double gamma, std::int64_t P) {
            return base.abs_decay(lambda - omega, gamma, P);
        };
    d.flags = base.flags();
    return window(std::move(d));
}

//
// parse "gaussian:sigma=1.0", "triangle", "rect:a=0,b=1"
//
inline window
parse_window(const std::string& text)
{
    const auto  colon = text.find(':');
    std::string name  = text.substr(0, colon);

    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::istringstream in(text.substr(colon + 1));
        std::string        item;
        while (std::getline(in, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw argument_error("window spec '" + text + "': expected key=value, got '" + item + "'");
            std::istringstream num(item.substr(eq + 1));
            num.imbue(std::locale::classic());
            double v;
            if (!(num >> v) || !num.eof())
                throw argument_error("window spec '" + text + "': bad number in '" + item + "'");
            params[item.substr(0, eq)] = v;
        }
    }

    auto take = [&](const std::string& key, double fallback) {
        auto it = params.find(key);
        if (it == params.end())
            return fallback;
        double v = it->second;
        params.erase(it);
        return v;
    };

    window result = [&] {
        if (name == "gaussian")
            return gaussian(take("sigma", 1.0));
        if (name == "triangle")
            return triangle();
        if (name == "rect" || name == "rectangle") {
            const double a = take("a", 0.0);
            return rectangle(a, take("b", 1.0));
        }
        throw argument_error("unknown window '" + name + "'");
    }();

    if (!params.empty())
        throw argument_error("window spec '" + text + "': unknown parameter '" +
                             params.begin()->first + "'");
    return result;
}

////////////////////////////////////////////////////////////////////////////////
//
// operations
//
////////////////////////////////////////////////////////////////////////////////

// f ∗ ψ = Σ c_j ψ̂(λ_j) e_{λ_j}
inline trig_polynomial
convolve(const trig_polynomial& f, const window& psi)
{
    std::vector<trig_term> out(f.terms().begin(), f.terms().end());
    for (auto& t : out)
        t.coeff *= psi.fourier(t.freq);
    return trig_polynomial(std::move(out));
}

struct wiener_estimate
{
    double       value    = 0.0;  // grid_sum + tail
    double       grid_sum = 0.0;  // Σ_{|k|≤K} grid max of |ψ(x−k)|
    double       tail     = 0.0;  // time_decay(K)
    std::int64_t K        = 0;
    std::int64_t samples  = 0;
};

//
// ∥ψ∥_W = Σ_k ess sup_{x∈[0,1]} |ψ(x−k)|, estimated on an equispaced grid of
// [δ, 1−δ] (δ = 1e-12, so isolated endpoint values do not count) plus the
// certified tail beyond |k| = K
//
inline wiener_estimate
wiener_norm(const window& psi, std::int64_t K, std::int64_t samples_per_interval)
{
    detail::require(K >= 1, "wiener_norm: K must be >= 1");
    detail::require(samples_per_interval >= 2, "wiener_norm: need at least 2 samples per interval");

    constexpr double edge = 1e-12;
    const double     step = (1.0 - 2.0 * edge) / double(samples_per_interval - 1);

    double sum = 0.0;
    for (std::int64_t k = -K; k <= K; ++k) {
        double sup = 0.0;
        for (std::int64_t i = 0; i < samples_per_interval; ++i)
            sup = std::max(sup, std::abs(psi(edge + step * double(i) - double(k))));
        sum += sup;
    }

    const double tail = psi.time_decay(K);
    return {sum + tail, sum, tail, K, samples_per_interval};
}

// Σ_{|p|≤P} |ψ̂(λ+γp)|² + freq_decay(λ, γ, P)
inline double
periodized_spectral_sum(const window& psi, double lambda, double gamma, std::int64_t P)
{
    detail::require(gamma > 0.0 && std::isfinite(gamma), "periodized_spectral_sum: gamma must be positive");
    detail::require(P >= 1, "periodized_spectral_sum: P must be >= 1");

    double s = 0.0;
    for (std::int64_t p = -P; p <= P; ++p)
        s += std::norm(psi.fourier(lambda + gamma * double(p)));
    return s + psi.freq_decay(lambda, gamma, P);
}

struct bessel_condition
{
    double       sup         = 0.0;  // grid max of the periodized sum (tails included)
    double       argmax      = 0.0;  // λ attaining it
    double       max_tail    = 0.0;  // largest freq_decay term over the grid
    std::int64_t grid_points = 0;
    std::int64_t P           = 0;
};

//
// sup_λ Σ_p |ψ̂(λ + (2π/α)p)|² over an equispaced grid of [0, 2π/α); a lower
// estimate of the true sup up to grid resolution
//
inline bessel_condition
bessel_condition_sup(const window& psi, double alpha, std::int64_t grid_points, std::int64_t P)
{
    detail::require(alpha > 0.0 && std::isfinite(alpha), "bessel_condition_sup: alpha must be positive");
    detail::require(grid_points >= 2, "bessel_condition_sup: need at least 2 grid points");
    detail::require(P >= 1, "bessel_condition_sup: P must be >= 1");

    const double     gamma = two_pi / alpha;
    bessel_condition out{-1.0, 0.0, 0.0, grid_points, P};

    for (std::int64_t i = 0; i < grid_points; ++i) {
        const double lambda = gamma * double(i) / double(grid_points);
        const double v      = periodized_spectral_sum(psi, lambda, gamma, P);
        out.max_tail        = std::max(out.max_tail, psi.freq_decay(lambda, gamma, P));
        if (v > out.sup) {
            out.sup    = v;
            out.argmax = lambda;
        }
    }
    return out;
}

}  // namespace apgabor
