#pragma once
//
// Module      : ap_core
// Description : finite-spectrum almost periodic functions and sequences,
//               their inner products, norms and time-average oracles
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"

namespace apgabor {

using complex_t = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// frequencies (resp. phases) closer than this are identified
inline constexpr double tol_freq = 1e-9;

// coefficients below this modulus are dropped
inline constexpr double tol_coeff = 1e-15;

namespace detail {

//
// sort by key, merge clusters closer than tol_freq (first key of a cluster
// wins), drop negligible coefficients
//
template <typename term_t, typename key_fn>
void
canonicalize(std::vector<term_t>& terms, key_fn key)
{
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const term_t& a, const term_t& b) { return key(a) < key(b); });

    std::vector<term_t> merged;
    merged.reserve(terms.size());

    for (const auto& t : terms) {
        if (!merged.empty() && key(t) - key(merged.back()) < tol_freq)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }

    std::erase_if(merged, [](const term_t& t) { return std::abs(t.coeff) < tol_coeff; });
    terms = std::move(merged);
}

// sin(x)/x with the removable singularity filled in
inline double
sinc(double x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// ∫_0^1 e^{iδs} ds
inline complex_t
unit_window_integral(double delta)
{
    if (std::abs(delta) < 1e-8)
        return {1.0 - delta * delta / 6.0, delta / 2.0};
    return (std::polar(1.0, delta) - 1.0) / complex_t(0.0, delta);
}

}  // namespace detail

////////////////////////////////////////////////////////////////////////////////
//
// trigonometric polynomial Σ c_j e^{iλ_j t}
//
////////////////////////////////////////////////////////////////////////////////

struct trig_term
{
    double    freq  = 0.0;
    complex_t coeff = 0.0;
};

class trig_polynomial
{
public:
    trig_polynomial() = default;

    explicit trig_polynomial(std::vector<trig_term> terms)
        : terms_(std::move(terms))
    {
        for (const auto& t : terms_)
            detail::require(std::isfinite(t.freq) && std::isfinite(t.coeff.real()) &&
                                std::isfinite(t.coeff.imag()),
                            "trig_polynomial: non-finite term");
        detail::canonicalize(terms_, [](const trig_term& t) { return t.freq; });
    }

    // c·e_λ
    static trig_polynomial
    exponential(double freq, complex_t coeff = 1.0)
    {
        return trig_polynomial({{freq, coeff}});
    }

    std::span<const trig_term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    complex_t
    operator()(double t) const
    {
        complex_t s = 0.0;
        for (const auto& term : terms_)
            s += term.coeff * std::polar(1.0, term.freq * t);
        return s;
    }

    // Fourier-Bohr coefficient f̂(λ) = (f, e_λ)
    complex_t
    coefficient(double freq) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), freq - tol_freq,
                                   [](const trig_term& t, double v) { return t.freq < v; });
        if (it != terms_.end() && std::abs(it->freq - freq) < tol_freq)
            return it->coeff;
        return 0.0;
    }

    // Σ |c_j|
    double
    coefficient_l1() const
    {
        double s = 0.0;
        for (const auto& t : terms_)
            s += std::abs(t.coeff);
        return s;
    }

    friend trig_polynomial
    operator+(const trig_polynomial& f, const trig_polynomial& g)
    {
        std::vector<trig_term> all(f.terms_);
        all.insert(all.end(), g.terms_.begin(), g.terms_.end());
        return trig_polynomial(std::move(all));
    }

    friend trig_polynomial
    operator*(complex_t s, const trig_polynomial& f)
    {
        std::vector<trig_term> all(f.terms_);
        for (auto& t : all)
            t.coeff *= s;
        return trig_polynomial(std::move(all));
    }

    friend bool
    operator==(const trig_polynomial& f, const trig_polynomial& g)
    {
        return std::equal(f.terms_.begin(), f.terms_.end(), g.terms_.begin(), g.terms_.end(),
                          [](const trig_term& a, const trig_term& b) {
                              return a.freq == b.freq && a.coeff == b.coeff;
                          });
    }

private:
    std::vector<trig_term> terms_;
};

////////////////////////////////////////////////////////////////////////////////
//
// almost periodic sequence Σ c_j e^{iθ_j n}, n ∈ ℤ, θ_j ∈ [0, 2π)
//
////////////////////////////////////////////////////////////////////////////////

struct seq_term
{
    double    phase = 0.0;
    complex_t coeff = 0.0;
};

// reduce to [0, 2π); phases within tol_freq of 2π wrap to 0
inline double
reduce_phase(double theta)
{
    double r = std::fmod(theta, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi - tol_freq)
        r = 0.0;
    return r;
}

class ap_sequence
{
public:
    ap_sequence() = default;

    explicit ap_sequence(std::vector<seq_term> terms)
        : terms_(std::move(terms))
    {
        for (auto& t : terms_) {
            detail::require(std::isfinite(t.phase) && std::isfinite(t.coeff.real()) &&
                                std::isfinite(t.coeff.imag()),
                            "ap_sequence: non-finite term");
            t.phase = reduce_phase(t.phase);
        }
        detail::canonicalize(terms_, [](const seq_term& t) { return t.phase; });
    }

    // c·ẽ_θ
    static ap_sequence
    exponential(double phase, complex_t coeff = 1.0)
    {
        return ap_sequence({{phase, coeff}});
    }

    std::span<const seq_term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    complex_t
    operator()(std::int64_t n) const
    {
        complex_t s = 0.0;
        for (const auto& t : terms_)
            s += t.coeff * std::polar(1.0, std::fmod(t.phase * double(n), two_pi));
        return s;
    }

    // (a, ẽ_θ)
    complex_t
    coefficient(double phase) const
    {
        const double th = reduce_phase(phase);
        for (const auto& t : terms_)
            if (std::abs(t.phase - th) < tol_freq)
                return t.coeff;
        return 0.0;
    }

    double
    coefficient_l1() const
    {
        double s = 0.0;
        for (const auto& t : terms_)
            s += std::abs(t.coeff);
        return s;
    }

    friend bool
    operator==(const ap_sequence& a, const ap_sequence& b)
    {
        return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                          [](const seq_term& x, const seq_term& y) {
                              return x.phase == y.phase && x.coeff == y.coeff;
                          });
    }

private:
    std::vector<seq_term> terms_;
};

////////////////////////////////////////////////////////////////////////////////
//
// inner products
//
////////////////////////////////////////////////////////////////////////////////

namespace detail {

// Σ over matched keys of a·conj(b); both ranges sorted by key
template <typename term_t, typename key_fn>
complex_t
matched_inner(std::span<const term_t> a, std::span<const term_t> b, key_fn key)
{
    complex_t   s = 0.0;
    std::size_t i = 0, j = 0;

    while (i < a.size() && j < b.size()) {
        const double d = key(a[i]) - key(b[j]);
        if (std::abs(d) < tol_freq) {
            s += a[i].coeff * std::conj(b[j].coeff);
            ++i;
            ++j;
        } else if (d < 0.0) {
            ++i;
        } else {
            ++j;
        }
    }
    return s;
}

}  // namespace detail

// (f, g)_AP by Parseval
inline complex_t
ap_inner(const trig_polynomial& f, const trig_polynomial& g)
{
    return detail::matched_inner(f.terms(), g.terms(), [](const trig_term& t) { return t.freq; });
}

inline double
ap_norm(const trig_polynomial& f)
{
    return std::sqrt(std::max(0.0, ap_inner(f, f).real()));
}

//
// exact value of (2T)^{-1} ∫_{-T}^{T} f·conj(g) dt, used as an independent
// oracle for ap_inner
//
inline complex_t
time_average_inner(const trig_polynomial& f, const trig_polynomial& g, double T)
{
    detail::require(T > 0.0 && std::isfinite(T), "time_average_inner: T must be positive");

    complex_t s = 0.0;
    for (const auto& a : f.terms())
        for (const auto& b : g.terms())
            s += a.coeff * std::conj(b.coeff) * detail::sinc((a.freq - b.freq) * T);
    return s;
}

// (a, b)_AP(ℤ) by Parseval on phases
inline complex_t
seq_inner(const ap_sequence& a, const ap_sequence& b)
{
    return detail::matched_inner(a.terms(), b.terms(), [](const seq_term& t) { return t.phase; });
}

inline double
seq_norm(const ap_sequence& a)
{
    return std::sqrt(std::max(0.0, seq_inner(a, a).real()));
}

//
// exact value of (2p+1)^{-1} Σ_{n=-p}^{p} a_n·conj(b_n) via the Dirichlet kernel
//
inline complex_t
seq_time_average(const ap_sequence& a, const ap_sequence& b, std::int64_t p)
{
    detail::require(p >= 1, "seq_time_average: p must be >= 1");

    const double count = 2.0 * double(p) + 1.0;
    complex_t    s     = 0.0;

    for (const auto& x : a.terms()) {
        for (const auto& y : b.terms()) {
            // reduce the phase difference to (-π, π]
            double d = std::remainder(x.phase - y.phase, two_pi);
            double kernel;
            if (d == 0.0)
                kernel = count;
            else
                kernel = std::sin(0.5 * count * d) / std::sin(0.5 * d);
            s += x.coeff * std::conj(y.coeff) * kernel;
        }
    }
    return s / count;
}

////////////////////////////////////////////////////////////////////////////////
//
// time-frequency shifts
//
////////////////////////////////////////////////////////////////////////////////

// T_x f: c_j ↦ c_j e^{-iλ_j x}
inline trig_polynomial
translate(const trig_polynomial& f, double x)
{
    std::vector<trig_term> out(f.terms().begin(), f.terms().end());
    for (auto& t : out)
        t.coeff *= std::polar(1.0, -t.freq * x);
    return trig_polynomial(std::move(out));
}

// M_ω f: λ_j ↦ λ_j + ω
inline trig_polynomial
modulate(const trig_polynomial& f, double omega)
{
    std::vector<trig_term> out(f.terms().begin(), f.terms().end());
    for (auto& t : out)
        t.freq += omega;
    return trig_polynomial(std::move(out));
}

////////////////////////////////////////////////////////////////////////////////
//
// residue classes λ = residue + (2π/α)·index
//
////////////////////////////////////////////////////////////////////////////////

struct residue_decomposition
{
    double       residue = 0.0;  // in [0, 2π/α)
    std::int64_t index   = 0;
    double       period  = 0.0;  // 2π/α

    double reconstruct() const { return residue + period * double(index); }
};

inline residue_decomposition
residue_decompose(double lambda, double alpha)
{
    detail::require(alpha > 0.0 && std::isfinite(alpha), "residue_decompose: alpha must be positive");
    detail::require(std::isfinite(lambda), "residue_decompose: lambda must be finite");

    const double period = two_pi / alpha;
    double       q      = std::floor(lambda / period);
    double       r      = lambda - q * period;

    if (r < 0.0) {
        r += period;
        q -= 1.0;
    }
    if (r >= period - tol_freq) {
        r = 0.0;
        q += 1.0;
    }
    return {r, static_cast<std::int64_t>(q), period};
}

////////////////////////////////////////////////////////////////////////////////
//
// Stepanov norm sup_t (∫_t^{t+1} |f|²)^{1/2}
//
////////////////////////////////////////////////////////////////////////////////

//
// length of the t-range swept by stepanov_norm: the exact period 2π/g of |f|²
// when all frequency gaps are integer multiples of a common g (denominators up
// to 64 relative to the smallest gap), otherwise max(1, 2π/min_gap)·10
//
inline double
stepanov_period(const trig_polynomial& f)
{
    const auto terms = f.terms();
    if (terms.size() < 2)
        return 1.0;

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < terms.size(); ++j)
        min_gap = std::min(min_gap, terms[j].freq - terms[j - 1].freq);

    for (int q = 1; q <= 64; ++q) {
        const double g     = min_gap / q;
        bool         comm  = true;
        for (std::size_t j = 1; j < terms.size() && comm; ++j) {
            const double d = terms[j].freq - terms[0].freq;
            comm = std::abs(d - std::round(d / g) * g) <= 1e-9 * (1.0 + std::abs(d));
        }
        if (comm)
            return two_pi / g;
    }
    return std::max(1.0, two_pi / min_gap) * 10.0;
}

//
// grid lower estimate of the W(L², L∞) norm; the window integral is exact,
// the supremum is taken over t ∈ [0, stepanov_period(f)] with step grid_step
//
inline double
stepanov_norm(const trig_polynomial& f, double grid_step)
{
    detail::require(grid_step > 0.0 && std::isfinite(grid_step),
                    "stepanov_norm: grid_step must be positive");

    const auto terms = f.terms();
    if (terms.empty())
        return 0.0;

    double diag = 0.0;
    for (const auto& t : terms)
        diag += std::norm(t.coeff);

    // cross terms c_j·conj(c_m)·∫_0^1 e^{iδs}ds, δ = λ_j − λ_m, rotated by e^{iδt}
    struct cross
    {
        double    delta;
        complex_t weight;
        complex_t rot;
    };
    std::vector<cross> pairs;
    for (std::size_t j = 0; j < terms.size(); ++j)
        for (std::size_t m = j + 1; m < terms.size(); ++m) {
            const double delta = terms[j].freq - terms[m].freq;
            pairs.push_back({delta,
                             terms[j].coeff * std::conj(terms[m].coeff) *
                                 detail::unit_window_integral(delta),
                             std::polar(1.0, delta * grid_step)});
        }

    const double       period = stepanov_period(f);
    const std::int64_t steps  = static_cast<std::int64_t>(std::ceil(period / grid_step));
    constexpr int      resync = 1024;

    std::vector<complex_t> phase(pairs.size());
    double                 best = 0.0;

    for (std::int64_t n = 0; n <= steps; ++n) {
        if (n % resync == 0) {
            const double t = double(n) * grid_step;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                phase[i] = std::polar(1.0, pairs[i].delta * t);
        }

        double v = diag;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            v += 2.0 * (pairs[i].weight * phase[i]).real();
            phase[i] *= pairs[i].rot;
        }
        best = std::max(best, v);
    }
    return std::sqrt(best);
}

}  // namespace apgabor
