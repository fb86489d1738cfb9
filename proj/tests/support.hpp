#pragma once

#include "diracstep/scattering.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace diracstep::testing {

/// Random problems for property tests; independent of the library's own self-check sampler.
class ProblemGenerator {
public:
    explicit ProblemGenerator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    StepProblem downward() {
        const double m = uniform(0.05, 3.0);
        return StepProblem::with_energy(m, m * (1.0 + uniform(0.005, 5.0)), uniform(0.0, 30.0),
                                        Direction::downward);
    }

    StepProblem upward_propagating() {
        const double m = uniform(0.05, 3.0);
        const double e = m * (1.0 + uniform(0.005, 5.0));
        return StepProblem::with_energy(m, e, (e - m) * uniform(0.0, 0.995), Direction::upward);
    }

    StepProblem evanescent() {
        const double m = uniform(0.05, 3.0);
        const double e = m * (1.0 + uniform(0.005, 5.0));
        return StepProblem::with_energy(m, e, e - m + 2.0 * m * uniform(0.005, 0.995), Direction::upward);
    }

    StepProblem klein(Convention c) {
        const double m = uniform(0.05, 3.0);
        const double e = m * (1.0 + uniform(0.005, 5.0));
        return StepProblem::with_energy(m, e, e + m + m * uniform(0.005, 20.0), Direction::upward, c);
    }

    StepProblem any() {
        switch (std::uniform_int_distribution<int>(0, 4)(rng_)) {
            case 0: return downward();
            case 1: return upward_propagating();
            case 2: return evanescent();
            case 3: return klein(Convention::group_velocity);
            default: return klein(Convention::momentum);
        }
    }

    /// Propagating or Klein (non-static field).
    StepProblem moving() {
        switch (std::uniform_int_distribution<int>(0, 3)(rng_)) {
            case 0: return downward();
            case 1: return upward_propagating();
            case 2: return klein(Convention::group_velocity);
            default: return klein(Convention::momentum);
        }
    }

private:
    std::mt19937_64 rng_;
};

/// Extended-precision matching ratio straight from the radical form, with the
/// Klein-zone sign chosen by hand.
inline long double reference_gamma(long double m, long double e, long double v, bool upward,
                                   bool momentum_convention = false) {
    const long double w = upward ? e - v : e + v;
    const long double k = std::sqrt(e * e - m * m);
    long double q = std::sqrt(w * w - m * m);
    if (w < -m && !momentum_convention) {
        q = -q;
    }
    return q * (e + m) / (k * (w + m));
}

}  // namespace diracstep::testing
