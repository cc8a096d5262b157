#pragma once
//
// Module      : frames
// Description : fiber matrices m_{k,p}(λ), eigenvalue frame bounds, the frame
//               sandwich for trigonometric polynomials, Schur-test Bessel
//               bounds and frames on subspaces AP₂(M)
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ap_core.hpp"
#include "gabor.hpp"
#include "jacobi.hpp"
#include "windows.hpp"

namespace apgabor {

////////////////////////////////////////////////////////////////////////////////
//
// fiber matrices
//
////////////////////////////////////////////////////////////////////////////////

struct fiber_matrix
{
    double        lambda    = 0.0;
    std::int64_t  trunc_K   = 0;  // indices k, p ∈ [-K, K]
    std::int64_t  ell_trunc = 0;  // ℓ-sum over |ℓ| ≤ L
    square_matrix entries;        // row/column i ↔ k = i − K
    double        tail = 0.0;     // entrywise bound on the dropped |ℓ| > L terms

    // m_{k,p}(λ) for k, p ∈ [-K, K]
    complex_t
    operator()(std::int64_t k, std::int64_t p) const
    {
        return entries(std::size_t(k + trunc_K), std::size_t(p + trunc_K));
    }
};

//
// m_{k,p}(λ) = Σ_{|ℓ|≤L} ψ̂(λ + (2π/α)k − ℓβ)·conj(ψ̂(λ + (2π/α)p − ℓβ)); the
// upper triangle is computed and mirrored so the result is exactly Hermitian
//
inline fiber_matrix
make_fiber_matrix(const gabor_system& sys, double lambda, std::int64_t K, std::int64_t L)
{
    const double gamma = sys.residue_period();
    detail::require(lambda >= 0.0 && lambda < gamma, "fiber_matrix: lambda outside [0, 2π/α)");
    detail::require(K >= 0, "fiber_matrix: K must be nonnegative");
    detail::require(L >= 1, "fiber_matrix: L must be >= 1");

    const std::size_t n    = std::size_t(2 * K + 1);
    const std::size_t nell = std::size_t(2 * L + 1);

    // samples[i][j] = ψ̂(λ + γ(i−K) − (j−L)β)
    std::vector<complex_t> samples(n * nell);
    double                 tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lambda + gamma * double(std::int64_t(i) - K);
        for (std::size_t j = 0; j < nell; ++j)
            samples[i * nell + j] = sys.psi.fourier(x - double(std::int64_t(j) - L) * sys.beta);
        // Cauchy–Schwarz: |dropped m_kp| ≤ sqrt(T_k T_p) ≤ max_k T_k
        tail = std::max(tail, sys.psi.freq_decay(x, sys.beta, L));
    }

    fiber_matrix m{lambda, K, L, square_matrix(n), tail};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = i; q < n; ++q) {
            complex_t s = 0.0;
            for (std::size_t j = 0; j < nell; ++j)
                s += samples[i * nell + j] * std::conj(samples[q * nell + j]);
            if (q == i)
                s = s.real();
            m.entries(i, q) = s;
            m.entries(q, i) = std::conj(s);
        }
    }
    return m;
}

struct eigen_bounds
{
    double min   = 0.0;
    double max   = 0.0;
    double slack = 0.0;  // tail·(2K+1), the spectral-norm bound of the ℓ-truncation
    int    sweeps = 0;
};

inline eigen_bounds
hermitian_extremal_eigs(const fiber_matrix& m)
{
    const auto r = jacobi_eigenvalues(m.entries);
    return {r.eigenvalues.front(), r.eigenvalues.back(),
            m.tail * double(2 * m.trunc_K + 1), r.sweeps};
}

//
// smallest L with every ℓ-tail below tol for |k| ≤ K, sampled over λ; only
// selects a default, the per-λ tails are still certified in make_fiber_matrix
//
inline std::int64_t
default_ell_truncation(const gabor_system& sys, std::int64_t K, double tol = 1e-8,
                       std::int64_t max_L = std::int64_t(1) << 22)
{
    const double gamma = sys.residue_period();
    const double lo    = -gamma * double(K);
    const double hi    = gamma * double(K + 1);
    const double step  = std::min(gamma, sys.beta) / 8.0;

    auto ok = [&](std::int64_t L) {
        for (double x = lo; x <= hi; x += step)
            if (sys.psi.freq_decay(x, sys.beta, L) > tol)
                return false;
        return true;
    };
    const std::int64_t L = detail::smallest_passing(ok, 1, max_L);
    if (L < 0)
        throw precision_error("default_ell_truncation: window '" + sys.psi.spec() +
                              "' cannot reach the requested tail");
    return L;
}

////////////////////////////////////////////////////////////////////////////////
//
// frame bounds over a λ-grid
//
////////////////////////////////////////////////////////////////////////////////

struct fiber_sweep_row
{
    double lambda  = 0.0;
    double eig_min = 0.0;
    double eig_max = 0.0;
};

//
// A is the grid minimum of λ_min (an upper estimate of the true infimum), B the
// grid maximum of λ_max (a lower estimate of the true supremum); both carry
// certified_slack from the ℓ-truncation
//
struct frame_bounds_result
{
    double                       A = 0.0;
    double                       B = 0.0;
    std::int64_t                 lambda_grid     = 0;
    std::int64_t                 trunc_K         = 0;
    std::int64_t                 ell_trunc       = 0;
    double                       certified_slack = 0.0;
    double                       grid_variation  = 0.0;  // largest jump between neighbouring grid points
    std::vector<fiber_sweep_row> sweep;

    // lower frame bound certified positive
    bool is_frame() const { return A - certified_slack > 0.0; }
};

inline frame_bounds_result
frame_bounds(const gabor_system& sys, std::int64_t grid_points, std::int64_t K, std::int64_t L)
{
    detail::require(grid_points >= 1, "frame_bounds: need at least one grid point");

    const double gamma = sys.residue_period();

    frame_bounds_result out;
    out.lambda_grid = grid_points;
    out.trunc_K     = K;
    out.ell_trunc   = L;
    out.A           = std::numeric_limits<double>::infinity();
    out.B           = -std::numeric_limits<double>::infinity();
    out.sweep.reserve(std::size_t(grid_points));

    for (std::int64_t i = 0; i < grid_points; ++i) {
        const double lambda = gamma * double(i) / double(grid_points);
        const auto   e      = hermitian_extremal_eigs(make_fiber_matrix(sys, lambda, K, L));

        out.sweep.push_back({lambda, e.min, e.max});
        out.A               = std::min(out.A, e.min);
        out.B               = std::max(out.B, e.max);
        out.certified_slack = std::max(out.certified_slack, e.slack);
    }

    for (std::size_t i = 0; i < out.sweep.size(); ++i) {
        const auto& a = out.sweep[i];
        const auto& b = out.sweep[(i + 1) % out.sweep.size()];  // λ-periodic
        out.grid_variation =
            std::max({out.grid_variation, std::abs(a.eig_min - b.eig_min), std::abs(a.eig_max - b.eig_max)});
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
//
// frame sandwich A∥f∥² ≤ Σ_ℓ ∥(⟨f, T_{αk}M_{βℓ}ψ⟩)_k∥² ≤ B∥f∥²
//
////////////////////////////////////////////////////////////////////////////////

struct sandwich_report
{
    double                   energy = 0.0;  // S(f)
    double                   norm2  = 0.0;  // ∥f∥²_AP
    double                   lower  = 0.0;  // (A − slack)∥f∥², slack = certified + grid variation + tol
    double                   upper  = 0.0;  // (B + slack)∥f∥²
    double                   tail   = 0.0;  // certified ℓ-tail of S(f)
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
    double ratio() const { return norm2 > 0.0 ? energy / norm2 : 0.0; }
};

inline sandwich_report
frame_sandwich_check(const trig_polynomial& f, const gabor_system& sys, const frame_bounds_result& bounds,
                     double tol)
{
    const auto e = analysis_energy(f, sys, tol);

    sandwich_report r;
    r.energy = e.energy;
    r.tail   = e.tail;
    r.norm2  = std::pow(ap_norm(f), 2);
    const double widen = bounds.certified_slack + bounds.grid_variation + tol;
    r.lower  = (bounds.A - widen) * r.norm2;
    r.upper  = (bounds.B + widen) * r.norm2;

    auto fmt = [](double v) { return detail::format_number(v); };
    if (r.energy < r.lower)
        r.violations.push_back("lower frame inequality: (A - slack)*||f||^2 = " + fmt(r.lower) +
                               " > S(f) = " + fmt(r.energy) + " with ||f||^2 = " + fmt(r.norm2));
    if (r.energy > r.upper)
        r.violations.push_back("upper frame inequality: S(f) = " + fmt(r.energy) +
                               " > (B + slack)*||f||^2 = " + fmt(r.upper) + " with ||f||^2 = " +
                               fmt(r.norm2));
    return r;
}

//
// Σ_λ c(λ)^H M(λ) c(λ) with c_k(λ) = f̂(λ + (2π/α)k): the fiber-side expression
// for S(f); coefficients outside |k| ≤ K are ignored
//
inline double
fiber_quadratic_form(const trig_polynomial& f, const gabor_system& sys, std::int64_t K, std::int64_t L)
{
    struct member
    {
        double       residue;
        std::int64_t index;
        complex_t    coeff;
    };
    std::vector<member> members;
    for (const auto& t : f.terms()) {
        const auto rd = residue_decompose(t.freq, sys.alpha);
        members.push_back({rd.residue, rd.index, t.coeff});
    }
    std::stable_sort(members.begin(), members.end(),
                     [](const member& a, const member& b) { return a.residue < b.residue; });

    double total = 0.0;
    for (std::size_t i = 0; i < members.size();) {
        std::size_t j = i;
        while (j < members.size() && members[j].residue - members[i].residue < tol_freq)
            ++j;

        const auto m = make_fiber_matrix(sys, members[i].residue, K, L);
        complex_t  q = 0.0;
        for (std::size_t a = i; a < j; ++a)
            for (std::size_t b = i; b < j; ++b) {
                if (std::abs(members[a].index) > K || std::abs(members[b].index) > K)
                    continue;
                // Σ_ℓ |Σ_k c_k conj(ψ̂_k)|² = Σ_{k,p} c_k conj(c_p) m_{p,k}
                q += members[a].coeff * std::conj(members[b].coeff) * m(members[b].index, members[a].index);
            }
        total += q.real();
        i = j;
    }
    return total;
}

////////////////////////////////////////////////////////////////////////////////
//
// Schur test bound
//
////////////////////////////////////////////////////////////////////////////////

struct schur_bound
{
    double bound   = 0.0;  // sqrt(r·c), operator-norm bound per fiber
    double row_sum = 0.0;  // r = max_{j,ℓ} Σ_p |b^j_{ℓ,p}|
    double col_sum = 0.0;  // c = max_{j,p} Σ_ℓ |b^j_{ℓ,p}|
};

//
// b^j_{ℓ,p} = ψ̂(λ_j + (2π/α)p − ℓβ); row and column sums include the
// certified first-power tails, so the Bessel constant is at most r·c
//
inline schur_bound
schur_bessel_bound(const gabor_system& sys, const std::vector<double>& residues, std::int64_t P,
                   std::int64_t L)
{
    const double gamma = sys.residue_period();
    detail::require(P >= 1 && L >= 1, "schur_bessel_bound: P and L must be >= 1");
    if (!sys.psi.has_abs_decay())
        throw unsupported_window_error("schur_bessel_bound: window '" + sys.psi.spec() +
                                       "' has no absolutely summable transform certificate");

    const std::size_t np = std::size_t(2 * P + 1);
    const std::size_t nl = std::size_t(2 * L + 1);

    schur_bound out;
    std::vector<double> absb(np * nl);

    for (double lambda : residues) {
        detail::require(lambda >= 0.0 && lambda < gamma, "schur_bessel_bound: residue outside [0, 2π/α)");

        for (std::size_t ip = 0; ip < np; ++ip)
            for (std::size_t il = 0; il < nl; ++il)
                absb[ip * nl + il] = std::abs(sys.psi.fourier(lambda + gamma * double(std::int64_t(ip) - P) -
                                                              double(std::int64_t(il) - L) * sys.beta));

        for (std::size_t il = 0; il < nl; ++il) {
            const double x = lambda - double(std::int64_t(il) - L) * sys.beta;
            double       r = sys.psi.abs_decay(x, gamma, P);
            for (std::size_t ip = 0; ip < np; ++ip)
                r += absb[ip * nl + il];
            out.row_sum = std::max(out.row_sum, r);
        }
        for (std::size_t ip = 0; ip < np; ++ip) {
            const double x = lambda + gamma * double(std::int64_t(ip) - P);
            double       c = sys.psi.abs_decay(x, sys.beta, L);
            for (std::size_t il = 0; il < nl; ++il)
                c += absb[ip * nl + il];
            out.col_sum = std::max(out.col_sum, c);
        }
    }
    out.bound = std::sqrt(out.row_sum * out.col_sum);
    return out;
}

////////////////////////////////////////////////////////////////////////////////
//
// subspace frames on AP₂(M)
//
////////////////////////////////////////////////////////////////////////////////

// finite spectrum set M = {μ_j}, pairwise distinct within tol_freq
class spectrum_set
{
public:
    spectrum_set() = default;

    explicit spectrum_set(std::vector<double> mu)
        : mu_(std::move(mu))
    {
        for (std::size_t i = 0; i < mu_.size(); ++i) {
            detail::require(std::isfinite(mu_[i]), "spectrum_set: non-finite frequency");
            for (std::size_t j = 0; j < i; ++j)
                if (std::abs(mu_[i] - mu_[j]) < tol_freq)
                    throw argument_error("spectrum_set: frequencies " + detail::format_number(mu_[j]) +
                                         " and " + detail::format_number(mu_[i]) + " coincide");
        }
    }

    const std::vector<double>& mu() const { return mu_; }
    std::size_t size() const { return mu_.size(); }

    //
    // first pair (i, j) whose residues mod 2π/α coincide; none means the
    // projected system is the diagonal one {ψ̂(μ_j − ℓβ) e_{μ_j}}
    //
    std::optional<std::pair<std::size_t, std::size_t>>
    residue_collision(double alpha) const
    {
        std::vector<double> res(mu_.size());
        for (std::size_t i = 0; i < mu_.size(); ++i)
            res[i] = residue_decompose(mu_[i], alpha).residue;

        const double gamma = two_pi / alpha;
        for (std::size_t i = 0; i < mu_.size(); ++i)
            for (std::size_t j = i + 1; j < mu_.size(); ++j) {
                const double d = std::abs(res[i] - res[j]);
                if (d < tol_freq || gamma - d < tol_freq)
                    return std::pair{i, j};
            }
        return std::nullopt;
    }

private:
    std::vector<double> mu_;
};

class residue_collision_error : public argument_error
{
public:
    residue_collision_error(double mu_i, double mu_j, double alpha)
        : argument_error("subspace frame: mu = " + detail::format_number(mu_i) + " and mu = " +
                         detail::format_number(mu_j) + " share a residue mod 2pi/alpha (alpha = " +
                         detail::format_number(alpha) + "); M contains a full residue class, not the diagonal case")
        , mu_i_(mu_i)
        , mu_j_(mu_j)
    {}

    double first() const { return mu_i_; }
    double second() const { return mu_j_; }

private:
    double mu_i_;
    double mu_j_;
};

struct subspace_bounds
{
    double              A = 0.0;  // min_j s_j
    double              B = 0.0;  // max_j (s_j + tail_j)
    std::vector<double> sums;     // s_j = Σ_{|ℓ|≤L} |ψ̂(μ_j − ℓβ)|²
    std::vector<double> tails;    // certified Σ_{|ℓ|>L}
};

inline subspace_bounds
subspace_frame_bounds(const spectrum_set& M, const gabor_system& sys, std::int64_t L)
{
    detail::require(L >= 0, "subspace_frame_bounds: L must be nonnegative");
    detail::require(M.size() > 0, "subspace_frame_bounds: empty spectrum set");

    if (auto c = M.residue_collision(sys.alpha))
        throw residue_collision_error(M.mu()[c->first], M.mu()[c->second], sys.alpha);

    subspace_bounds out;
    out.A = std::numeric_limits<double>::infinity();
    out.B = 0.0;
    for (double mu : M.mu()) {
        double s = 0.0;
        for (std::int64_t ell = -L; ell <= L; ++ell)
            s += std::norm(sys.psi.fourier(mu - double(ell) * sys.beta));
        const double tail = sys.psi.freq_decay(mu, sys.beta, L);
        out.sums.push_back(s);
        out.tails.push_back(tail);
        out.A = std::min(out.A, s);
        out.B = std::max(out.B, s + tail);
    }
    return out;
}

struct modulation_energies
{
    std::vector<double> values;      // Σ_{ℓ∈F} |ψ̂(μ_j − ℓβ)|²
    std::vector<double> log_values;  // natural log of the same, free of underflow
};

//
// energy of e_{μ_j} captured by finitely many modulations F; tends to 0 along
// unbounded μ_j for decaying ψ̂
//
inline modulation_energies
finite_modulation_failure(const spectrum_set& M, const gabor_system& sys, const std::vector<std::int64_t>& F)
{
    modulation_energies out;
    for (double mu : M.mu()) {
        std::vector<double> logs;
        for (auto ell : F)
            logs.push_back(2.0 * sys.psi.log_abs_fourier(mu - double(ell) * sys.beta));

        double v = 0.0, lv = -std::numeric_limits<double>::infinity();
        if (!logs.empty()) {
            const double top = *std::max_element(logs.begin(), logs.end());
            if (std::isfinite(top)) {
                double s = 0.0;
                for (double x : logs)
                    s += std::exp(x - top);
                lv = top + std::log(s);
            }
            for (auto ell : F)
                v += std::norm(sys.psi.fourier(mu - double(ell) * sys.beta));
        }
        out.values.push_back(v);
        out.log_values.push_back(lv);
    }
    return out;
}

}  // namespace apgabor
