#include <gtest/gtest.h>

#include <apgabor/apgabor.hpp>

#include "oracles.hpp"

using namespace apgabor;

namespace {

square_matrix
random_hermitian(random_source& rng, std::size_t n)
{
    square_matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = rng.uniform(-3, 3);
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = complex_t(rng.uniform(-1, 1), rng.uniform(-1, 1));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

// U diag(d) U^H with U a product of random plane rotations
square_matrix
with_spectrum(random_source& rng, const std::vector<double>& d)
{
    const std::size_t n = d.size();
    square_matrix     m = square_matrix::diagonal(d);
    for (int r = 0; r < 40; ++r) {
        const std::size_t p = std::size_t(rng.integer(0, std::int64_t(n) - 1));
        const std::size_t q = std::size_t(rng.integer(0, std::int64_t(n) - 1));
        if (p == q)
            continue;
        const double    th = rng.uniform(0, two_pi);
        const complex_t ph = std::polar(1.0, rng.uniform(0, two_pi));
        const double    c = std::cos(th), s = std::sin(th);
        // M ← G M G^H with G acting on rows/cols p, q
        for (std::size_t k = 0; k < n; ++k) {
            const complex_t a = m(p, k), b = m(q, k);
            m(p, k) = c * a - s * ph * b;
            m(q, k) = s * std::conj(ph) * a + c * b;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const complex_t a = m(k, p), b = m(k, q);
            m(k, p) = c * a - s * std::conj(ph) * b;
            m(k, q) = s * ph * a + c * b;
        }
    }
    return m;
}

}  // namespace

TEST(Jacobi, OneByOne)
{
    square_matrix m(1);
    m(0, 0) = 4.5;
    const auto r = jacobi_eigenvalues(m);
    ASSERT_EQ(r.eigenvalues.size(), 1u);
    EXPECT_EQ(r.eigenvalues[0], 4.5);
}

TEST(Jacobi, Diagonal)
{
    const auto r = jacobi_eigenvalues(square_matrix::diagonal({3.0, -1.0, 2.0, 7.5}));
    EXPECT_EQ(r.eigenvalues, (std::vector<double>{-1.0, 2.0, 3.0, 7.5}));
    EXPECT_EQ(r.sweeps, 0);
}

TEST(Jacobi, TwoByTwoClosedForm)
{
    square_matrix m(2);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    m(0, 1) = complex_t(1.0, 2.0);
    m(1, 0) = complex_t(1.0, -2.0);
    const auto   r    = jacobi_eigenvalues(m);
    const double mid  = 0.5;
    const double half = std::sqrt(1.5 * 1.5 + 5.0);
    EXPECT_NEAR(r.eigenvalues[0], mid - half, 1e-14);
    EXPECT_NEAR(r.eigenvalues[1], mid + half, 1e-14);
}

TEST(Jacobi, RecoversPrescribedSpectrum)
{
    random_source rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> d;
        for (int i = 0; i < 21; ++i)
            d.push_back(rng.uniform(-5, 5));
        const auto m = with_spectrum(rng, d);
        ASSERT_LT(m.hermitian_defect(), 1e-13);

        const auto r = jacobi_eigenvalues(m);
        std::sort(d.begin(), d.end());
        for (std::size_t i = 0; i < d.size(); ++i)
            EXPECT_NEAR(r.eigenvalues[i], d[i], 1e-11);
        EXPECT_LE(r.off_norm, 1e-12 * m.frobenius_norm());
    }
}

TEST(Jacobi, GershgorinAndRayleighContainment)
{
    random_source rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = std::size_t(rng.integer(2, 21));
        const auto        m = random_hermitian(rng, n);
        const auto        r = jacobi_eigenvalues(m);

        const auto [glo, ghi] = oracle::gershgorin_hull(m);
        EXPECT_GE(r.eigenvalues.front(), glo - 1e-12);
        EXPECT_LE(r.eigenvalues.back(), ghi + 1e-12);

        // trace is the eigenvalue sum; Rayleigh quotients stay inside [λ_min, λ_max]
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += m(i, i).real();
            sum += r.eigenvalues[i];
        }
        EXPECT_NEAR(trace, sum, 1e-11);

        for (int k = 0; k < 10; ++k) {
            std::vector<complex_t> x(n);
            for (auto& v : x)
                v = complex_t(rng.uniform(-1, 1), rng.uniform(-1, 1));
            const double q = oracle::rayleigh(m, x);
            EXPECT_GE(q, r.eigenvalues.front() - 1e-12);
            EXPECT_LE(q, r.eigenvalues.back() + 1e-12);
        }
    }
}

TEST(Jacobi, RejectsNonHermitian)
{
    square_matrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 2.0;
    EXPECT_THROW(jacobi_eigenvalues(m), invariant_violation);

    square_matrix z(2);
    z(0, 1) = complex_t(0.0, 1.0);
    z(1, 0) = complex_t(0.0, 1.0);  // not conj
    EXPECT_THROW(jacobi_eigenvalues(z), invariant_violation);
}

TEST(Jacobi, ToleratesRoundoffAsymmetry)
{
    square_matrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(0, 1) = 0.5;
    m(1, 0) = 0.5 + 1e-14;
    EXPECT_NO_THROW(jacobi_eigenvalues(m));
}
