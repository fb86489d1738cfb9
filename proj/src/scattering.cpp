#include "diracstep/scattering.hpp"

#include "diracstep/error.hpp"
#include "diracstep/wave.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace diracstep {

std::string_view to_string(Direction d) {
    return d == Direction::downward ? "down" : "up";
}

std::string_view to_string(Convention c) {
    return c == Convention::group_velocity ? "group-velocity" : "momentum";
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::propagating: return "propagating";
        case Regime::evanescent: return "evanescent";
        case Regime::klein: return "klein";
    }
    return "unknown";
}

StepProblem StepProblem::with_energy(double mass, double energy, double height,
                                     Direction direction, std::optional<Convention> convention) {
    StepProblem p{mass, energy, height, direction, convention};
    p.validate();
    return p;
}

StepProblem StepProblem::with_momentum(double mass, double momentum, double height,
                                       Direction direction, std::optional<Convention> convention) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw DomainError("mass must be positive");
    }
    if (!(momentum > 0.0) || !std::isfinite(momentum)) {
        throw DomainError("momentum must be positive");
    }
    return with_energy(mass, std::hypot(momentum, mass), height, direction, convention);
}

double StepProblem::momentum() const {
    // (E - m)(E + m) keeps precision when E is close to m.
    return std::sqrt((energy - mass) * (energy + mass));
}

double StepProblem::potential() const {
    return direction == Direction::downward ? -height : height;
}

void StepProblem::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw DomainError("mass must be positive");
    }
    if (!std::isfinite(energy) || !(energy > mass)) {
        throw DomainError("energy must exceed mass");
    }
    if (!(height >= 0.0) || !std::isfinite(height)) {
        throw DomainError("step height must be finite and non-negative");
    }
}

Regime classify_regime(const StepProblem& p) {
    p.validate();
    if (p.direction == Direction::downward) {
        return Regime::propagating;
    }
    const double w = p.energy - p.potential();
    if (std::abs(w) == p.mass) {
        throw RegimeBoundaryError("regime boundary: |E - V| equals the mass");
    }
    if (w > p.mass) {
        return Regime::propagating;
    }
    return w < -p.mass ? Regime::klein : Regime::evanescent;
}

Wavenumbers wavenumbers(const StepProblem& p) {
    const Regime regime = classify_regime(p);
    const double w = p.energy - p.potential();
    const double m = p.mass;
    Wavenumbers out;
    out.k = p.momentum();
    out.regime = regime;
    if (regime == Regime::evanescent) {
        out.q = complex{0.0, std::sqrt((m - w) * (m + w))};
    } else {
        out.q = std::sqrt((w - m) * (w + m));
    }
    return out;
}

namespace {

// Signed real q for the propagating and Klein regimes.
double resolved_q(const StepProblem& p, const Wavenumbers& wn) {
    if (wn.regime != Regime::klein) {
        return wn.q.real();
    }
    if (!p.convention) {
        throw DomainError("Klein zone requires an explicit sign convention");
    }
    return *p.convention == Convention::group_velocity ? -wn.q.real() : wn.q.real();
}

double matching_ratio(const StepProblem& p, double k, double q) {
    const double e = p.energy;
    const double m = p.mass;
    return q * (e + m) / (k * (e - p.potential() + m));
}

}  // namespace

double gamma_factor(const StepProblem& p) {
    const Wavenumbers wn = wavenumbers(p);
    if (wn.regime == Regime::evanescent) {
        throw NotApplicableError("gamma is not real in the evanescent regime");
    }
    return matching_ratio(p, wn.k, resolved_q(p, wn));
}

Amplitudes match_amplitudes(const StepProblem& p) {
    const Wavenumbers wn = wavenumbers(p);
    complex g;
    if (wn.regime == Regime::evanescent) {
        g = complex{0.0, matching_ratio(p, wn.k, wn.q.imag())};
    } else {
        g = matching_ratio(p, wn.k, resolved_q(p, wn));
    }
    const complex a = (1.0 - g) / (1.0 + g);
    return {a, 1.0 + a};
}

namespace {

double normalized_phase(complex a) {
    if (a == complex{0.0, 0.0}) {
        return 0.0;
    }
    const double phi = std::arg(a);
    return phi == -std::numbers::pi ? std::numbers::pi : phi;
}

void fill_amplitude(ScatterSolution& sol, complex a) {
    sol.A = a;
    sol.C = 1.0 + a;
    sol.amp_modulus = std::abs(a);
    sol.amp_phase = normalized_phase(a);
}

}  // namespace

ScatterSolution solve(const StepProblem& p) {
    const Wavenumbers wn = wavenumbers(p);
    ScatterSolution sol;
    sol.problem = p;
    sol.k = wn.k;
    sol.regime = wn.regime;

    complex g;
    if (wn.regime == Regime::evanescent) {
        sol.q = wn.q;
        sol.gamma = matching_ratio(p, wn.k, wn.q.imag());
        g = complex{0.0, sol.gamma};
    } else {
        const double q = resolved_q(p, wn);
        sol.q = q;
        sol.gamma = matching_ratio(p, wn.k, q);
        g = sol.gamma;
    }
    fill_amplitude(sol, (1.0 - g) / (1.0 + g));

    const Coefficients rt = coefficients(sol);
    sol.R = rt.R;
    sol.T = rt.T;
    return sol;
}

ScatterSolution superposition_fixture(double mass, double momentum, double amp_modulus,
                                      double phase) {
    if (!(amp_modulus >= 0.0) || !std::isfinite(amp_modulus) || !std::isfinite(phase)) {
        throw DomainError("reflected amplitude must be finite with non-negative modulus");
    }
    ScatterSolution sol;
    sol.problem = StepProblem::with_momentum(mass, momentum, 0.0, Direction::downward);
    sol.k = momentum;
    sol.q = momentum;
    sol.regime = Regime::propagating;
    sol.superposition_only = true;
    fill_amplitude(sol, std::polar(amp_modulus, phase));
    // Keep the caller's phase rather than the normalised arg().
    sol.amp_phase = amp_modulus == 0.0 ? 0.0 : phase;
    sol.gamma = ((1.0 - sol.A) / (1.0 + sol.A)).real();
    sol.R = amp_modulus * amp_modulus;
    sol.T = 1.0 - sol.R;
    return sol;
}

Currents currents(const ScatterSolution& sol) {
    const double e = sol.energy();
    const double m = sol.mass();
    Currents j;
    j.incident = 2.0 * sol.k / (e + m);
    j.reflected = -j.incident * sol.amp_modulus * sol.amp_modulus;
    if (sol.superposition_only) {
        j.transmitted = j.incident + j.reflected;
    } else {
        j.transmitted = 2.0 * sol.q.real() * std::norm(sol.C) / (e - sol.potential() + m);
    }
    return j;
}

Coefficients coefficients(const ScatterSolution& sol) {
    const Currents j = currents(sol);
    return {sol.amp_modulus * sol.amp_modulus, j.transmitted / j.incident};
}

double asymptotic_gamma(double mass, double energy) {
    if (!(mass >= 0.0) || !(energy > mass)) {
        throw DomainError("energy must exceed mass");
    }
    return std::sqrt((energy + mass) / (energy - mass));
}

double reflection_from_gamma(double g) {
    const double a = (1.0 - g) / (1.0 + g);
    return a * a;
}

std::vector<double> make_grid(double lo, double hi, std::size_t n, GridScale scale) {
    if (n < 2) {
        throw DomainError("grid needs at least two points");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw DomainError("grid requires finite lo < hi");
    }
    if (scale == GridScale::log && lo < 0.0) {
        throw DomainError("log grid requires lo >= 0");
    }
    std::vector<double> xs(n);
    const double last = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / last;
        if (scale == GridScale::linear) {
            xs[i] = lo + f * (hi - lo);
        } else if (lo > 0.0) {
            xs[i] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
        } else {
            xs[i] = std::expm1(f * std::log1p(hi));
        }
    }
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

std::vector<SweepRow> sweep(const StepProblem& base, SweepAxis axis, double lo, double hi,
                            std::size_t n, GridScale scale) {
    const std::vector<double> xs = make_grid(lo, hi, n, scale);
    if (axis == SweepAxis::height && lo < 0.0) {
        throw DomainError("step height must be finite and non-negative");
    }
    if (axis == SweepAxis::energy && !(lo > base.mass)) {
        throw DomainError("energy must exceed mass");
    }

    std::vector<SweepRow> rows;
    rows.reserve(xs.size());
    for (const double x : xs) {
        StepProblem p = base;
        (axis == SweepAxis::height ? p.height : p.energy) = x;
        SweepRow row;
        row.x = x;
        try {
            const ScatterSolution sol = solve(p);
            row.gamma = sol.gamma;
            row.R = sol.R;
            row.T = sol.T;
            row.regime = sol.regime;
        } catch (const RegimeBoundaryError&) {
            row.flagged = true;
        }
        rows.push_back(row);
    }
    return rows;
}

Coefficients nonrel_coefficients(double mass, double kinetic, double height,
                                 Direction direction) {
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    if (!(kinetic > 0.0)) {
        throw DomainError("kinetic energy must be positive");
    }
    if (!(height >= 0.0)) {
        throw DomainError("step height must be finite and non-negative");
    }
    const double k = std::sqrt(2.0 * mass * kinetic);
    double transmitted_kinetic = kinetic + height;
    if (direction == Direction::upward) {
        transmitted_kinetic = kinetic - height;
        if (transmitted_kinetic <= 0.0) {
            return {1.0, 0.0};
        }
    }
    const double q = std::sqrt(2.0 * mass * transmitted_kinetic);
    const double a = (k - q) / (k + q);
    return {a * a, 1.0 - a * a};
}

double continuity_residual(const ScatterSolution& sol) {
    const Spinor4 left = incident_wave(sol, 0.0, 0.0) + reflected_wave(sol, 0.0, 0.0);
    const Spinor4 right = transmitted_wave(sol, 0.0, 0.0);
    return max_component_distance(left, right);
}

}  // namespace diracstep
