#pragma once
//
// Module      : jacobi
// Description : small dense complex Hermitian matrices and cyclic Jacobi
//               eigenvalue iteration
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "ap_core.hpp"

namespace apgabor {

// dense row-major square complex matrix
class square_matrix
{
public:
    square_matrix() = default;

    explicit square_matrix(std::size_t n)
        : n_(n)
        , data_(n * n, complex_t(0.0))
    {}

    static square_matrix
    identity(std::size_t n)
    {
        square_matrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static square_matrix
    diagonal(const std::vector<double>& d)
    {
        square_matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t size() const { return n_; }

    complex_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const complex_t& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    double
    frobenius_norm() const
    {
        double s = 0.0;
        for (const auto& v : data_)
            s += std::norm(v);
        return std::sqrt(s);
    }

    double
    off_diagonal_norm() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j)
                    s += std::norm((*this)(i, j));
        return std::sqrt(s);
    }

    // max_{i,j} |m_ij − conj(m_ji)|
    double
    hermitian_defect() const
    {
        double d = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

private:
    std::size_t            n_ = 0;
    std::vector<complex_t> data_;
};

struct jacobi_result
{
    std::vector<double> eigenvalues;  // ascending
    int                 sweeps = 0;
    double              off_norm = 0.0;  // final off-diagonal Frobenius norm
};

//
// cyclic Jacobi for Hermitian matrices: each (p,q) rotation first removes the
// phase of a_pq by a diagonal unitary, then applies the real symmetric
// rotation; stops once ∥off(A)∥_F ≤ rel_tol·∥A∥_F
//
inline jacobi_result
jacobi_eigenvalues(square_matrix a, double rel_tol = 1e-12, int max_sweeps = 100)
{
    const std::size_t n = a.size();
    const double      defect = a.hermitian_defect();
    const double      scale  = std::max(1.0, a.frobenius_norm());

    if (defect > 1e-12 * scale)
        throw invariant_violation("jacobi: matrix is not Hermitian (asymmetry " +
                                  std::to_string(defect) + ")");

    // symmetrize exactly; diagonal is real
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j)
            a(j, i) = std::conj(a(i, j));
    }

    const double  target = rel_tol * a.frobenius_norm();
    jacobi_result out;

    for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
        out.off_norm = a.off_diagonal_norm();
        if (out.off_norm <= target)
            break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex_t apq = a(p, q);
                const double    r   = std::abs(apq);
                if (r == 0.0)
                    continue;

                const complex_t phase = apq / r;  // e^{iφ}
                const double    app   = a(p, p).real();
                const double    aqq   = a(q, q).real();
                const double    tau   = (aqq - app) / (2.0 * r);
                const double    t     = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double    c     = 1.0 / std::sqrt(1.0 + t * t);
                const double    s     = t * c;

                // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
                const complex_t g_pp = c;
                const complex_t g_pq = s;
                const complex_t g_qp = -s * std::conj(phase);
                const complex_t g_qq = c * std::conj(phase);

                // A ← A G
                for (std::size_t k = 0; k < n; ++k) {
                    const complex_t akp = a(k, p);
                    const complex_t akq = a(k, q);
                    a(k, p) = akp * g_pp + akq * g_qp;
                    a(k, q) = akp * g_pq + akq * g_qq;
                }
                // A ← G^H A
                for (std::size_t k = 0; k < n; ++k) {
                    const complex_t apk = a(p, k);
                    const complex_t aqk = a(q, k);
                    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
                }

                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
            }
        }
    }

    if (out.sweeps == max_sweeps)
        out.off_norm = a.off_diagonal_norm();

    out.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.eigenvalues[i] = a(i, i).real();
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

}  // namespace apgabor
