#pragma once
//
// Module      : gabor
// Description : analysis and synthesis maps between almost periodic functions
//               and almost periodic sequences for Gabor systems T_{αk}M_{βℓ}ψ
//

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ap_core.hpp"
#include "windows.hpp"

namespace apgabor {

struct gabor_system
{
    window psi;
    double alpha;  // time step
    double beta;   // frequency step

    gabor_system(window w, double a, double b)
        : psi(std::move(w))
        , alpha(a)
        , beta(b)
    {
        detail::require(alpha > 0.0 && std::isfinite(alpha), "gabor_system: alpha must be positive");
        detail::require(beta > 0.0 && std::isfinite(beta), "gabor_system: beta must be positive");
    }

    // 2π/α, the spacing of each residue lattice
    double residue_period() const { return two_pi / alpha; }
};

// a = (a^ℓ)_ℓ ∈ ℓ²(AP(ℤ)), truncated to |ℓ| ≤ ell_truncation
struct analysis_family
{
    double                               alpha = 1.0;
    double                               beta  = 1.0;
    std::string                          window_spec;
    std::map<std::int64_t, ap_sequence>  entries;
    std::int64_t                         ell_truncation = 0;
    double                               tail_bound     = 0.0;  // ≥ Σ_{|ℓ|>L} ∥a^ℓ∥²
};

////////////////////////////////////////////////////////////////////////////////
//
// analysis
//
////////////////////////////////////////////////////////////////////////////////

//
// (⟨f, T_{kα}M_{ℓβ}ψ⟩)_k = Σ_j c_j conj(ψ̂(λ_j − ℓβ)) ẽ_{λ_j α}; phases are taken
// from the residue of λ_j so equal residue classes merge exactly
//
inline ap_sequence
analysis_sequence(const trig_polynomial& f, const gabor_system& sys, std::int64_t ell)
{
    std::vector<seq_term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        const auto rd = residue_decompose(t.freq, sys.alpha);
        terms.push_back({sys.alpha * rd.residue,
                         t.coeff * std::conj(sys.psi.fourier(t.freq - double(ell) * sys.beta))});
    }
    return ap_sequence(std::move(terms));
}

namespace detail {

//
// smallest n in [lo, hi] with pred(n), assuming pred is monotone; -1 if none
//
template <typename pred_fn>
std::int64_t
smallest_passing(pred_fn pred, std::int64_t lo, std::int64_t hi)
{
    if (pred(lo))
        return lo;
    std::int64_t good = std::max<std::int64_t>(1, lo + 1);
    while (!pred(good)) {
        if (good >= hi)
            return -1;
        lo   = good;
        good = std::min(hi, good * 2);
    }
    while (good - lo > 1) {
        const std::int64_t mid = lo + (good - lo) / 2;
        if (pred(mid))
            good = mid;
        else
            lo = mid;
    }
    return good;
}

// smallest R ≥ 1 with time_decay(R) ≤ 1e-16, -1 if none below 2^20
inline std::int64_t
time_radius(const window& psi)
{
    return smallest_passing([&](std::int64_t r) { return psi.time_decay(r) <= 1e-16; }, 1, 1 << 20);
}

struct class_member
{
    double    phase;  // α·residue, reduced to [0, 2π)
    double    freq;
    complex_t coeff;
};

//
// terms of f grouped by residue class mod 2π/α, with the grouping rule of
// ap_sequence (phases within tol_freq of a class's first phase join it)
//
inline std::vector<std::vector<class_member>>
residue_classes(const trig_polynomial& f, double alpha)
{
    std::vector<class_member> members;
    for (const auto& t : f.terms())
        members.push_back({reduce_phase(alpha * residue_decompose(t.freq, alpha).residue), t.freq, t.coeff});
    std::stable_sort(members.begin(), members.end(),
                     [](const class_member& a, const class_member& b) { return a.phase < b.phase; });

    std::vector<std::vector<class_member>> classes;
    for (const auto& m : members) {
        if (classes.empty() || m.phase - classes.back().front().phase >= tol_freq)
            classes.emplace_back();
        classes.back().push_back(m);
    }
    return classes;
}

//
// Σ_{|ℓ|>L} ∥a^ℓ∥² ≤ Σ_classes (Σ_j |c_j|²)(Σ_j Σ_{|ℓ|>L} |ψ̂(λ_j − ℓβ)|²)
// by Cauchy-Schwarz inside each class
//
inline double
ell_tail(const std::vector<std::vector<class_member>>& classes, const gabor_system& sys, std::int64_t L)
{
    double s = 0.0;
    for (const auto& cls : classes) {
        double mass = 0.0;
        double tail = 0.0;
        for (const auto& m : cls) {
            mass += std::norm(m.coeff);
            tail += sys.psi.freq_decay(m.freq, sys.beta, L);
        }
        s += mass * tail;
    }
    return s;
}

// smallest L with ell_tail ≤ tol·∥f∥²
inline std::int64_t
ell_truncation_for(const std::vector<std::vector<class_member>>& classes, const gabor_system& sys,
                   double tol, double norm2, const char* who)
{
    const std::int64_t L = smallest_passing(
        [&](std::int64_t l) { return ell_tail(classes, sys, l) <= tol * norm2; }, 0, std::int64_t(1) << 26);
    if (L < 0)
        throw precision_error(std::string(who) + ": window '" + sys.psi.spec() +
                              "' cannot certify the requested ℓ-tail");
    return L;
}

}  // namespace detail

//
// entries for |ℓ| ≤ L with L the smallest truncation whose certified tail
// satisfies Σ_{|ℓ|>L} ∥a^ℓ∥² ≤ tol·∥f∥²
//
inline analysis_family
make_analysis_family(const trig_polynomial& f, const gabor_system& sys, double tol)
{
    detail::require(tol > 0.0, "analysis_family: tol must be positive");

    analysis_family fam;
    fam.alpha       = sys.alpha;
    fam.beta        = sys.beta;
    fam.window_spec = sys.psi.spec();

    if (f.empty())
        return fam;

    const auto   classes = detail::residue_classes(f, sys.alpha);
    const double norm2   = std::pow(ap_norm(f), 2);
    const auto   L       = detail::ell_truncation_for(classes, sys, tol, norm2, "analysis_family");

    fam.ell_truncation = L;
    fam.tail_bound     = detail::ell_tail(classes, sys, L);

    for (std::int64_t ell = -L; ell <= L; ++ell) {
        auto a = analysis_sequence(f, sys, ell);
        if (!a.empty())
            fam.entries.emplace(ell, std::move(a));
    }
    return fam;
}

// Σ_ℓ ∥a^ℓ∥², in ascending ℓ order
inline double
bessel_total(const analysis_family& fam)
{
    double s = 0.0;
    for (const auto& [ell, a] : fam.entries)
        s += std::pow(seq_norm(a), 2);
    return s;
}

struct analysis_energy_result
{
    double       energy = 0.0;  // Σ_{|ℓ|≤L} ∥a^ℓ∥²
    double       tail   = 0.0;  // ≥ Σ_{|ℓ|>L} ∥a^ℓ∥²
    std::int64_t L      = 0;
};

//
// bessel_total(make_analysis_family(f, sys, tol)) without materializing the
// sequences; each ℓ costs one transform evaluation per term
//
inline analysis_energy_result
analysis_energy(const trig_polynomial& f, const gabor_system& sys, double tol)
{
    detail::require(tol > 0.0, "analysis_energy: tol must be positive");

    analysis_energy_result out;
    if (f.empty())
        return out;

    const auto   classes = detail::residue_classes(f, sys.alpha);
    const double norm2   = std::pow(ap_norm(f), 2);
    out.L    = detail::ell_truncation_for(classes, sys, tol, norm2, "analysis_energy");
    out.tail = detail::ell_tail(classes, sys, out.L);

    for (std::int64_t ell = -out.L; ell <= out.L; ++ell) {
        const double shift = double(ell) * sys.beta;
        for (const auto& cls : classes) {
            complex_t c = 0.0;
            for (const auto& m : cls)
                c += m.coeff * std::conj(sys.psi.fourier(m.freq - shift));
            out.energy += std::norm(c);
        }
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
//
// orthogonal systems h_{λ,ℓ}
//
////////////////////////////////////////////////////////////////////////////////

struct truncated_h
{
    trig_polynomial h;
    double          truncation_bound = 0.0;  // ∥h − h_P∥²_AP ≤ this
};

//
// h_{λ,ℓ} = Σ_{|p|≤P} ψ̂(λ + (2π/α)p − ℓβ) e_{λ+(2π/α)p}, λ ∈ [0, 2π/α)
//
inline truncated_h
h_lambda(const gabor_system& sys, double lambda, std::int64_t ell, std::int64_t P)
{
    const double gamma = sys.residue_period();
    detail::require(lambda >= 0.0 && lambda < gamma, "h_lambda: lambda outside [0, 2π/α)");
    detail::require(P >= 1, "h_lambda: P must be >= 1");

    const double shift = double(ell) * sys.beta;

    std::vector<trig_term> terms;
    terms.reserve(2 * P + 1);
    for (std::int64_t p = -P; p <= P; ++p) {
        const double mu = lambda + gamma * double(p);
        terms.push_back({mu, sys.psi.fourier(mu - shift)});
    }
    return {trig_polynomial(std::move(terms)), sys.psi.freq_decay(lambda - shift, gamma, P)};
}

//
// Σ over residues λ of f of |(f, h_{λ,ℓ})|², a second route to
// ∥analysis_sequence(f, sys, ℓ)∥²; throws precision_error when the truncated
// h_{λ,ℓ} cannot certify the sum to 1e-12·∥f∥²
//
inline double
analysis_norm_via_h(const trig_polynomial& f, const gabor_system& sys, std::int64_t ell, std::int64_t P)
{
    struct member
    {
        double       residue;
        std::int64_t index;
        double       weight;  // |c|²
    };
    std::vector<member> members;
    for (const auto& t : f.terms()) {
        const auto rd = residue_decompose(t.freq, sys.alpha);
        members.push_back({rd.residue, rd.index, std::norm(t.coeff)});
    }
    std::stable_sort(members.begin(), members.end(),
                     [](const member& a, const member& b) { return a.residue < b.residue; });

    double total = 0.0, error = 0.0;

    for (std::size_t i = 0; i < members.size();) {
        const double r = members[i].residue;

        // f-energy outside the truncated lattice of this residue
        double outside = 0.0;
        std::size_t j = i;
        for (; j < members.size() && members[j].residue - r < tol_freq; ++j)
            if (std::abs(members[j].index) > P)
                outside += members[j].weight;

        const auto      h = h_lambda(sys, r, ell, P);
        const complex_t y = ap_inner(f, h.h);
        const double    d = std::sqrt(outside * h.truncation_bound);

        total += std::norm(y);
        error += 2.0 * std::abs(y) * d + d * d;
        i = j;
    }

    if (error > 1e-12 * std::pow(ap_norm(f), 2))
        throw precision_error("analysis_norm_via_h: truncation P=" + std::to_string(P) +
                              " leaves error bound " + std::to_string(error));
    return total;
}

////////////////////////////////////////////////////////////////////////////////
//
// synthesis
//
////////////////////////////////////////////////////////////////////////////////

struct synthesis_result
{
    trig_polynomial f;
    double          tail = 0.0;  // ∥dropped part∥²_AP ≤ tail
};

//
// Σ_k a_k T_{kα}ψ: the coefficient at μ = (θ_j + 2πp)/α is α^{-1} ψ̂(μ) c_j
//
inline synthesis_result
synthesis(const ap_sequence& a, const window& psi, double alpha, std::int64_t P)
{
    detail::require(alpha > 0.0 && std::isfinite(alpha), "synthesis: alpha must be positive");
    detail::require(P >= 0, "synthesis: P must be nonnegative");

    const double gamma = two_pi / alpha;

    std::vector<trig_term> terms;
    double                 tail = 0.0;
    for (const auto& t : a.terms()) {
        const double base = t.phase / alpha;
        for (std::int64_t p = -P; p <= P; ++p) {
            const double mu = base + gamma * double(p);
            terms.push_back({mu, psi.fourier(mu) * t.coeff / alpha});
        }
        tail += std::norm(t.coeff) / (alpha * alpha) * psi.freq_decay(base, gamma, P);
    }
    return {trig_polynomial(std::move(terms)), tail};
}

//
// T a with (Ta, e_μ) = Σ_ℓ ψ̂(μ − ℓβ)(a^ℓ, ẽ_{μα}) over the union of the residue
// lattices of all a^ℓ, |p| ≤ P
//
inline trig_polynomial
gabor_synthesis(const analysis_family& fam, const gabor_system& sys, std::int64_t P)
{
    detail::require(P >= 0, "gabor_synthesis: P must be nonnegative");

    std::vector<seq_term> phases;
    for (const auto& [ell, a] : fam.entries)
        for (const auto& t : a.terms())
            phases.push_back({t.phase, 1.0});
    const ap_sequence lattice(std::move(phases));  // merged phase set

    const double gamma = sys.residue_period();

    std::vector<trig_term> terms;
    for (const auto& th : lattice.terms()) {
        for (std::int64_t p = -P; p <= P; ++p) {
            const double mu = th.phase / sys.alpha + gamma * double(p);
            complex_t    c  = 0.0;
            for (const auto& [ell, a] : fam.entries)
                c += sys.psi.fourier(mu - double(ell) * sys.beta) * a.coefficient(th.phase);
            terms.push_back({mu, c});
        }
    }
    return trig_polynomial(std::move(terms));
}

////////////////////////////////////////////////////////////////////////////////
//
// adjoint relation S_ψ f = α T_ψ^* f
//
////////////////////////////////////////////////////////////////////////////////

struct adjoint_check
{
    double    residual = 0.0;
    complex_t analysis_side;   // (S_ψ f, b)_AP(ℤ)
    complex_t synthesis_side;  // α (f, T_ψ b)_AP
    double    slack = 0.0;     // certified bound from the synthesis truncation
};

inline adjoint_check
adjoint_residual(const trig_polynomial& f, const ap_sequence& b, const window& psi, double alpha,
                 std::int64_t P)
{
    const gabor_system sys(psi, alpha, 1.0);  // β is irrelevant for ℓ = 0

    const auto syn = synthesis(b, psi, alpha, P);

    adjoint_check out;
    out.analysis_side  = seq_inner(analysis_sequence(f, sys, 0), b);
    out.synthesis_side = alpha * ap_inner(f, syn.f);
    out.residual       = std::abs(out.analysis_side - out.synthesis_side);
    out.slack          = alpha * ap_norm(f) * std::sqrt(syn.tail);
    return out;
}

////////////////////////////////////////////////////////////////////////////////
//
// time-domain oracle for the synthesis coefficients
//
////////////////////////////////////////////////////////////////////////////////

struct oracle_value
{
    complex_t    value;
    double       truncation_bound = 0.0;  // pointwise bound on the dropped k-terms
    std::int64_t radius           = 0;    // only |t − kα| ≤ radius + 1 is summed
};

//
// (1/2T) ∫_{-T}^{T} g(t) e^{-iμt} dt with g(t) = Σ_{|k|≤K} a_k ψ(t − kα),
// composite trapezoid with step ≈ dt
//
inline oracle_value
periodization_oracle(const ap_sequence& a, const window& psi, double alpha, double mu, double T,
                     double dt, std::int64_t K)
{
    detail::require(alpha > 0.0, "periodization_oracle: alpha must be positive");
    detail::require(T > 0.0 && dt > 0.0, "periodization_oracle: T and dt must be positive");
    detail::require(K >= 0, "periodization_oracle: K must be nonnegative");

    const std::int64_t R = detail::time_radius(psi);
    if (R < 0)
        throw unsupported_window_error("periodization_oracle: window '" + psi.spec() +
                                       "' has insufficient time decay");

    if (double(K) * alpha < T + double(R) + 1.0)
        throw unsupported_window_error("periodization_oracle: K=" + std::to_string(K) +
                                       " does not cover [-T, T] plus the window radius " +
                                       std::to_string(R));

    std::vector<complex_t> coeff(2 * K + 1);
    for (std::int64_t k = -K; k <= K; ++k)
        coeff[k + K] = a(k);

    const auto   steps = static_cast<std::int64_t>(std::ceil(2.0 * T / dt));
    const double h     = 2.0 * T / double(steps);
    const double reach = double(R) + 1.0;

    complex_t          acc    = 0.0;
    complex_t          rot    = std::polar(1.0, -mu * h);
    complex_t          carrier;
    constexpr int      resync = 1024;

    for (std::int64_t n = 0; n <= steps; ++n) {
        const double t = -T + h * double(n);
        if (n % resync == 0)
            carrier = std::polar(1.0, -mu * t);

        const auto k_lo = std::max<std::int64_t>(-K, std::int64_t(std::ceil((t - reach) / alpha)));
        const auto k_hi = std::min<std::int64_t>(K, std::int64_t(std::floor((t + reach) / alpha)));

        complex_t g = 0.0;
        for (std::int64_t k = k_lo; k <= k_hi; ++k)
            g += coeff[k + K] * psi(t - double(k) * alpha);

        const double w = (n == 0 || n == steps) ? 0.5 : 1.0;
        acc += w * g * carrier;
        carrier *= rot;
    }

    const double per_point = a.coefficient_l1() * (std::floor(1.0 / alpha) + 1.0) * psi.time_decay(R);
    return {acc * h / (2.0 * T), per_point, R};
}

// smallest K accepted by periodization_oracle for the given T
inline std::int64_t
periodization_oracle_min_K(const window& psi, double alpha, double T)
{
    const std::int64_t R = detail::time_radius(psi);
    if (R < 0)
        throw unsupported_window_error("window '" + psi.spec() + "' has insufficient time decay");
    return static_cast<std::int64_t>(std::ceil((T + double(R) + 1.0) / alpha));
}

}  // namespace apgabor
