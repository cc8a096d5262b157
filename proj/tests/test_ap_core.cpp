#include <gtest/gtest.h>

#include <apgabor/apgabor.hpp>

#include "oracles.hpp"

using namespace apgabor;

namespace {

const double pi = std::numbers::pi;

trig_polynomial
e(double freq, complex_t c = 1.0)
{
    return trig_polynomial::exponential(freq, c);
}

ap_sequence
et(double phase, complex_t c = 1.0)
{
    return ap_sequence::exponential(phase, c);
}

}  // namespace

// construction

TEST(TrigPolynomial, MergesCloseFrequenciesAndSorts)
{
    trig_polynomial f({{2.0, 1.0}, {1.0, 2.0}, {1.0 + 1e-12, 3.0}});
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.terms()[0].freq, 1.0);
    EXPECT_EQ(f.terms()[0].coeff, complex_t(5.0));
    EXPECT_EQ(f.terms()[1].freq, 2.0);
}

TEST(TrigPolynomial, PrunesNegligibleCoefficients)
{
    trig_polynomial f({{0.0, 1e-16}, {1.0, 1.0}, {2.0, 1.0}, {2.0, -1.0}});
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f.terms()[0].freq, 1.0);
}

TEST(TrigPolynomial, RejectsNonFinite)
{
    EXPECT_THROW(trig_polynomial({{NAN, 1.0}}), argument_error);
    EXPECT_THROW(trig_polynomial({{1.0, complex_t(INFINITY, 0.0)}}), argument_error);
}

TEST(TrigPolynomial, CoefficientLookup)
{
    trig_polynomial f({{0.0, 2.0}, {std::sqrt(2.0), complex_t(0, 3)}});
    EXPECT_EQ(f.coefficient(std::sqrt(2.0)), complex_t(0, 3));
    EXPECT_EQ(f.coefficient(1.0), complex_t(0.0));
    EXPECT_EQ(f.coefficient_l1(), 5.0);
}

TEST(ApSequence, ReducesPhasesModTwoPi)
{
    ap_sequence a({{0.5 + two_pi, 1.0}, {-0.5, 2.0}});
    ASSERT_EQ(a.size(), 2u);
    EXPECT_NEAR(a.terms()[0].phase, 0.5, 1e-14);
    EXPECT_NEAR(a.terms()[1].phase, two_pi - 0.5, 1e-14);
    for (const auto& t : a.terms()) {
        EXPECT_GE(t.phase, 0.0);
        EXPECT_LT(t.phase, two_pi);
    }
}

TEST(ApSequence, EvaluatesOnIntegers)
{
    ap_sequence a({{0.3, 2.0}});
    EXPECT_NEAR(std::abs(a(5) - 2.0 * std::polar(1.0, 1.5)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a(-7) - 2.0 * std::polar(1.0, -2.1)), 0.0, 1e-14);
}

// ap_inner

TEST(ApInner, Orthonormality)
{
    EXPECT_EQ(ap_inner(e(1), e(1)), complex_t(1.0));
    EXPECT_EQ(ap_inner(e(1), e(2)), complex_t(0.0));
}

TEST(ApInner, ParsevalExample)
{
    const auto f = e(0, 2.0) + e(std::sqrt(2.0), complex_t(0, 3));
    EXPECT_NEAR(std::abs(ap_inner(f, f) - 13.0), 0.0, 1e-14);
    EXPECT_NEAR(ap_norm(f), std::sqrt(13.0), 1e-14);
}

TEST(ApInner, EmptyIsZero)
{
    EXPECT_EQ(ap_inner(trig_polynomial(), e(1)), complex_t(0.0));
    EXPECT_EQ(ap_norm(trig_polynomial()), 0.0);
}

TEST(ApInner, ConjugateSymmetricAndSesquilinear)
{
    random_source rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto      f = random_polynomial(rng, 5, -4, 4, 0.2);
        const auto      g = random_polynomial(rng, 5, -4, 4, 0.2);
        const auto      h = random_polynomial(rng, 3, -4, 4, 0.2);
        const complex_t s = rng.coefficient();

        EXPECT_NEAR(std::abs(ap_inner(f, g) - std::conj(ap_inner(g, f))), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(ap_inner(s * f + h, g) - (s * ap_inner(f, g) + ap_inner(h, g))), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(ap_inner(f, s * g) - std::conj(s) * ap_inner(f, g)), 0.0, 1e-12);
        EXPECT_GT(ap_norm(f), 0.0);
    }
}

// time_average_inner

TEST(TimeAverage, DiagonalTermIsExact)
{
    for (double T : {0.5, 10.0, 1e5})
        EXPECT_NEAR(std::abs(time_average_inner(e(1), e(1), T) - 1.0), 0.0, 1e-15);
}

TEST(TimeAverage, DisjointSpectraDecay)
{
    const double T = 1e5;
    EXPECT_LE(std::abs(time_average_inner(e(1), e(2), T)), 1.0 / T);
}

TEST(TimeAverage, ConvergesToParseval)
{
    // the cross terms of this f cancel (coefficients in quadrature), so every T is exact
    const auto f = e(0, 2.0) + e(std::sqrt(2.0), complex_t(0, 3));
    for (double T : {1e3, 1e4, 1e5})
        EXPECT_LE(std::abs(time_average_inner(f, f, T) - 13.0), 25.0 / (std::sqrt(2.0) * T));

    // real coefficients: the error is 12·sin(√2T)/(√2T), sampled against that envelope
    const auto g = e(0, 2.0) + e(std::sqrt(2.0), 3.0);
    for (double T : {1e3, 1e4, 1e5}) {
        const double err = std::abs(time_average_inner(g, g, T) - 13.0);
        EXPECT_NEAR(err, 12.0 * std::abs(std::sin(std::sqrt(2.0) * T)) / (std::sqrt(2.0) * T), 1e-12);
        EXPECT_LE(err, 12.0 / (std::sqrt(2.0) * T));
    }
}

TEST(TimeAverage, AgreesWithSampledIntegral)
{
    random_source rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_polynomial(rng, 4, -3, 3, 0.3);
        const auto g = random_polynomial(rng, 4, -3, 3, 0.3);
        for (double T : {1.0, 7.5}) {
            const auto exact   = time_average_inner(f, g, T);
            const auto sampled = oracle::sampled_time_average(f, g, T, 20000);
            EXPECT_NEAR(std::abs(exact - sampled), 0.0, 1e-9);
        }
    }
}

TEST(TimeAverage, ParsevalBoundOnRandomPolynomials)
{
    random_source rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_polynomial(rng, 6, -5, 5, 0.1);
        const auto g = random_polynomial(rng, 6, -5, 5, 0.1);
        for (double T : {10.0, 1e3, 1e5}) {
            const double err = std::abs(time_average_inner(f, g, T) - ap_inner(f, g));
            EXPECT_LE(err, f.coefficient_l1() * g.coefficient_l1() / (0.1 * T));
        }
    }
}

TEST(TimeAverage, RejectsNonpositiveT)
{
    EXPECT_THROW(time_average_inner(e(1), e(1), 0.0), argument_error);
    EXPECT_THROW(time_average_inner(e(1), e(1), -1.0), argument_error);
}

// sequences

TEST(SeqInner, Examples)
{
    EXPECT_NEAR(std::abs(seq_inner(et(0.5), et(0.5)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(seq_inner(et(0.5), et(0.5 + two_pi)) - 1.0), 0.0, 1e-15);
    const ap_sequence a({{0.1, 1.0}, {0.2, 2.0}});
    EXPECT_NEAR(std::abs(seq_inner(a, a) - 5.0), 0.0, 1e-14);
    EXPECT_NEAR(seq_norm(a), std::sqrt(5.0), 1e-14);
}

TEST(SeqTimeAverage, Examples)
{
    EXPECT_NEAR(std::abs(seq_time_average(et(0.5), et(0.5), 100) - 1.0), 0.0, 1e-14);

    const long p = 100000;
    EXPECT_LE(std::abs(seq_time_average(et(0.1), et(0.2), p)), 1.0 / ((2.0 * p + 1.0) * std::sin(0.05)));

    const ap_sequence a({{0.1, 1.0}, {0.2, 2.0}});
    for (long q : {1000L, 100000L}) {
        const double err = std::abs(seq_time_average(a, a, q) - 5.0);
        EXPECT_LE(err, 2.0 * 2.0 * 2.0 / ((2.0 * q + 1.0) * std::sin(0.05)));
    }
}

TEST(SeqTimeAverage, AgreesWithExplicitSum)
{
    random_source rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_sequence(rng, 4, 0.2);
        const auto b = random_sequence(rng, 3, 0.2);
        for (long p : {1L, 17L, 400L})
            EXPECT_NEAR(std::abs(seq_time_average(a, b, p) - oracle::sampled_seq_average(a, b, p)), 0.0, 1e-11);
    }
}

TEST(SeqTimeAverage, RejectsSmallP)
{
    EXPECT_THROW(seq_time_average(et(0.5), et(0.5), 0), argument_error);
}

// shifts

TEST(Shifts, Examples)
{
    const auto t = translate(e(pi), 1.0);
    EXPECT_NEAR(std::abs(t.coefficient(pi) + 1.0), 0.0, 1e-15);

    random_source rng(2);
    const auto    f = random_polynomial(rng, 5, -5, 5, 0.1);
    EXPECT_EQ(translate(f, 0.0), f);

    const auto m = modulate(e(1), 2.0);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.terms()[0].freq, 3.0);
}

TEST(Shifts, TranslateIsPointwiseShiftAndIsometry)
{
    random_source rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto   f = random_polynomial(rng, 5, -5, 5, 0.1);
        const double x = rng.uniform(-10, 10);
        const auto   g = translate(f, x);
        EXPECT_NEAR(ap_norm(g), ap_norm(f), 1e-13);
        for (double t : {-1.3, 0.0, 2.7})
            EXPECT_NEAR(std::abs(g(t) - f(t - x)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(modulate(f, x)(1.1) - std::polar(1.0, x * 1.1) * f(1.1)), 0.0, 1e-12);
    }
}

// residues

TEST(Residue, Examples)
{
    auto r = residue_decompose(7.0, 1.0);
    EXPECT_NEAR(r.residue, 0.7168146928204135, 1e-14);
    EXPECT_EQ(r.index, 1);

    r = residue_decompose(0.0, 1.0);
    EXPECT_EQ(r.residue, 0.0);
    EXPECT_EQ(r.index, 0);

    r = residue_decompose(-0.1, 2.0);
    EXPECT_NEAR(r.residue, 3.0415926535897932, 1e-14);
    EXPECT_EQ(r.index, -1);

    EXPECT_THROW(residue_decompose(1.0, 0.0), argument_error);
    EXPECT_THROW(residue_decompose(1.0, -1.0), argument_error);
}

TEST(Residue, ReconstructionAndPeriodicity)
{
    random_source rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const double lambda = rng.uniform(-100, 100);
        const double alpha  = rng.uniform(0.1, 5);
        const auto   r      = residue_decompose(lambda, alpha);
        EXPECT_GE(r.residue, 0.0);
        EXPECT_LT(r.residue, two_pi / alpha);
        EXPECT_NEAR(r.reconstruct(), lambda, tol_freq);

        const auto s = residue_decompose(lambda + two_pi / alpha, alpha);
        EXPECT_NEAR(s.residue, r.residue, tol_freq);
        EXPECT_EQ(s.index, r.index + 1);
    }
}

// Stepanov

TEST(Stepanov, Examples)
{
    EXPECT_NEAR(stepanov_norm(e(3.7), 1e-3), 1.0, 1e-12);
    EXPECT_EQ(stepanov_norm(trig_polynomial(), 1e-3), 0.0);

    const auto f = e(0) + e(pi);
    const double s = stepanov_norm(f, 1e-3);
    EXPECT_NEAR(s, std::sqrt(2.0 + 4.0 / pi), 1e-9);
    EXPECT_GE(s, ap_norm(f));
    EXPECT_NEAR(s, oracle::dense_stepanov(f, 2.0, 1e-3), 1e-6);
    EXPECT_NEAR(stepanov_period(f), 2.0, 1e-12);
}

TEST(Stepanov, DominatesApNormAndMatchesBruteForce)
{
    random_source rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_polynomial(rng, 4, -3, 3, 0.5);
        const double s = stepanov_norm(f, 1e-2);
        EXPECT_GE(s, ap_norm(f) * (1.0 - 1e-9));
        // same t grid for the brute force, so the two sups must agree closely
        EXPECT_NEAR(s, oracle::dense_stepanov(f, stepanov_period(f), 1e-2), 1e-6 * s);
    }
}

TEST(Stepanov, RejectsBadStep)
{
    EXPECT_THROW(stepanov_norm(e(1), 0.0), argument_error);
    EXPECT_THROW(stepanov_norm(e(1), -1.0), argument_error);
}
