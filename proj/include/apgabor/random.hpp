#pragma once
//
// Module      : random
// Description : reproducible random trigonometric polynomials and AP sequences
//
// Uses the 64-bit Mersenne Twister (std::mt19937_64, MT19937-64), whose output
// sequence is fixed by the C++ standard; reals are built from the top 53 bits,
// so results are bit-identical across platforms and standard libraries.
//

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ap_core.hpp"

namespace apgabor {

class random_source
{
public:
    explicit random_source(std::uint64_t seed)
        : engine_(seed)
    {}

    // uniform in [0, 1)
    double
    uniform()
    {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi]
    std::int64_t
    integer(std::int64_t lo, std::int64_t hi)
    {
        const auto span = std::uint64_t(hi - lo) + 1;
        return lo + std::int64_t(engine_() % span);
    }

    // coefficient with modulus in [0.1, 2] and uniform argument
    complex_t
    coefficient()
    {
        const double r = uniform(0.1, 2.0);
        return std::polar(r, uniform(0.0, two_pi));
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

//
// n points in [lo, hi] with pairwise gaps ≥ min_gap: n uniform draws on the
// shrunken interval [0, hi − lo − (n−1)·min_gap], sorted, then spread by j·min_gap
//
inline std::vector<double>
spaced_points(random_source& rng, std::int64_t n, double lo, double hi, double min_gap)
{
    const double slack = (hi - lo) - double(n - 1) * min_gap;
    std::vector<double> u(static_cast<std::size_t>(n));
    for (auto& x : u)
        x = rng.uniform(0.0, slack);
    std::sort(u.begin(), u.end());
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] += lo + double(j) * min_gap;
    return u;
}

inline void
check_generator_args(std::int64_t n_terms, double lo, double hi, double min_gap)
{
    require(n_terms >= 1, "random polynomial: n_terms must be >= 1");
    require(min_gap > 0.0, "random polynomial: min_gap must be positive");
    require(hi > lo, "random polynomial: empty frequency range");
    require(min_gap * double(n_terms) <= hi - lo,
            "random polynomial: min_gap exceeds range/n_terms, gaps cannot be met");
}

}  // namespace detail

inline trig_polynomial
random_polynomial(random_source& rng, std::int64_t n_terms, double freq_lo, double freq_hi, double min_gap)
{
    detail::check_generator_args(n_terms, freq_lo, freq_hi, min_gap);

    const auto freqs = detail::spaced_points(rng, n_terms, freq_lo, freq_hi, min_gap);
    std::vector<trig_term> terms;
    for (double f : freqs)
        terms.push_back({f, rng.coefficient()});
    return trig_polynomial(std::move(terms));
}

inline trig_polynomial
generate_random_polynomial(std::uint64_t seed, std::int64_t n_terms, double freq_lo, double freq_hi,
                           double min_gap)
{
    random_source rng(seed);
    return random_polynomial(rng, n_terms, freq_lo, freq_hi, min_gap);
}

// phases in [0, 2π) with gaps ≥ min_gap, also across the wrap at 2π
inline ap_sequence
random_sequence(random_source& rng, std::int64_t n_terms, double min_gap)
{
    detail::check_generator_args(n_terms, 0.0, two_pi - min_gap, min_gap);

    const auto phases = detail::spaced_points(rng, n_terms, 0.0, two_pi - min_gap, min_gap);
    std::vector<seq_term> terms;
    for (double p : phases)
        terms.push_back({p, rng.coefficient()});
    return ap_sequence(std::move(terms));
}

}  // namespace apgabor
