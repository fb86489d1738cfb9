#include "diracstep/bohm.hpp"

#include "diracstep/error.hpp"
#include "diracstep/wave.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace diracstep {

namespace {

bool in_left_region(const ScatterSolution& sol, double z) {
    return sol.superposition_only || z < 0.0;
}

struct OrbitShape {
    double eps;
    double omega;
};

OrbitShape orbit_shape(const ScatterSolution& sol) {
    const double a = sol.amp_modulus;
    const double e = sol.energy();
    const double denom = e * (1.0 + a * a);
    return {2.0 * sol.mass() * a / denom, 2.0 * sol.k * sol.k * (1.0 - a * a) / denom};
}

// Constant position of a static (evanescent) orbit labelled by c.
double static_position(const ScatterSolution& sol, double c) {
    const double u = solve_kepler(orbit_shape(sol).eps, c);
    return (u + sol.amp_phase) / (2.0 * sol.k);
}

bool is_static(const ScatterSolution& sol) {
    return sol.regime == Regime::evanescent || sol.amp_modulus == 1.0;
}

void mark_crossing(Trajectory& tr) {
    bool below = false;
    bool above = false;
    for (const auto& s : tr.samples) {
        below = below || s.z < 0.0;
        above = above || s.z >= 0.0;
    }
    tr.crossed = below && above;
}

Trajectory static_trajectory(double z, std::span<const double> times, Method method) {
    Trajectory tr;
    tr.method = method;
    tr.static_field = true;
    tr.samples.reserve(times.size());
    for (const double t : times) {
        tr.samples.push_back({t, z, 0.0});
    }
    mark_crossing(tr);
    return tr;
}

void require_increasing(std::span<const double> times) {
    if (times.empty()) {
        throw DomainError("trajectory needs at least one sample time");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw DomainError("sample times must be strictly increasing");
        }
    }
}

}  // namespace

double superposition_density(const ScatterSolution& sol, double z) {
    const double e = sol.energy();
    const double m = sol.mass();
    if (in_left_region(sol, z) || z == 0.0) {
        const double a = sol.amp_modulus;
        const double phase = 2.0 * sol.k * z - sol.amp_phase;
        return 2.0 / (e + m) * ((1.0 + a * a) * e + 2.0 * m * a * std::cos(phase));
    }
    const double w = e - sol.potential();
    if (sol.regime == Regime::evanescent) {
        const double kappa = sol.q.imag();
        const double lower = kappa / (w + m);
        return std::norm(sol.C) * std::exp(-2.0 * kappa * z) * (1.0 + lower * lower);
    }
    return std::norm(sol.C) * 2.0 * w / (w + m);
}

double superposition_current(const ScatterSolution& sol) {
    const double a = sol.amp_modulus;
    return 2.0 * sol.k / (sol.energy() + sol.mass()) * (1.0 - a * a);
}

double transmitted_speed(const ScatterSolution& sol) {
    if (sol.regime == Regime::evanescent) {
        return 0.0;
    }
    if (sol.superposition_only) {
        return velocity(sol, 0.0);
    }
    return sol.q.real() / (sol.energy() - sol.potential());
}

double velocity(const ScatterSolution& sol, double z) {
    if (sol.regime == Regime::evanescent) {
        return 0.0;
    }
    if (!in_left_region(sol, z)) {
        return transmitted_speed(sol);
    }
    const double a = sol.amp_modulus;
    const double e = sol.energy();
    const double m = sol.mass();
    const double phase = 2.0 * sol.k * z - sol.amp_phase;
    return sol.k * (1.0 - a * a) / ((1.0 + a * a) * e + 2.0 * m * a * std::cos(phase));
}

double velocity_numeric(const ScatterSolution& sol, double z, double t) {
    const Spinor4 psi = assemble_region_wave(sol, z, t);
    const double rho = density(psi);
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw NumericError("probability density vanishes; velocity undefined");
    }
    return current_z(psi) / rho;
}

OrbitConstants orbit_constants(const ScatterSolution& sol, double c) {
    const OrbitShape shape = orbit_shape(sol);
    if (is_static(sol) || shape.omega == 0.0) {
        throw NotApplicableError("static orbit: omega vanishes when |A| = 1");
    }
    OrbitConstants oc;
    oc.eps = shape.eps;
    oc.omega = shape.omega;
    oc.phi = sol.amp_phase;
    oc.c = c;
    // z = 0 means u = -phi.
    oc.t_cross = (-oc.phi - oc.eps * std::sin(oc.phi) - c) / oc.omega;
    oc.stitched = !sol.superposition_only;
    oc.c_prime = oc.stitched ? -transmitted_speed(sol) * oc.t_cross : 0.0;
    return oc;
}

double offset_for_position(const ScatterSolution& sol, double z0, double t0) {
    const OrbitShape shape = orbit_shape(sol);
    if (in_left_region(sol, z0) || is_static(sol)) {
        const double u0 = 2.0 * sol.k * z0 - sol.amp_phase;
        return u0 + shape.eps * std::sin(u0) - shape.omega * t0;
    }
    const double t_cross = t0 - z0 / transmitted_speed(sol);
    const double phi = sol.amp_phase;
    return -phi - shape.eps * std::sin(phi) - shape.omega * t_cross;
}

double solve_kepler(double eps, double mean, KeplerOptions opts) {
    if (!(eps >= 0.0) || !(eps < 1.0)) {
        throw DomainError("orbit modulation eps must lie in [0, 1)");
    }
    if (!std::isfinite(mean)) {
        throw NumericError("non-finite orbit phase");
    }
    const auto residual = [&](double u) { return u + eps * std::sin(u) - mean; };
    const double tol = opts.tolerance * std::max(1.0, std::abs(mean));

    double lo = mean - eps;
    double hi = mean + eps;
    double u = mean;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const double r = residual(u);
        if (std::abs(r) <= tol) {
            return u;
        }
        (r < 0.0 ? lo : hi) = u;
        double next = u - r / (1.0 + eps * std::cos(u));
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == u) {
            // Bracket collapsed to adjacent doubles.
            return u;
        }
        u = next;
    }
    throw NumericError("implicit orbit solver did not converge");
}

OrbitPoint solve_orbit_implicit(const OrbitConstants& oc, double k, double transmitted_speed,
                                double t, KeplerOptions opts) {
    if (!(oc.eps < 1.0)) {
        throw DomainError("orbit modulation eps must lie in [0, 1)");
    }
    const bool left = !oc.stitched || oc.omega * (t - oc.t_cross) < 0.0;
    if (!left) {
        return {transmitted_speed * (t - oc.t_cross), transmitted_speed};
    }
    const double u = solve_kepler(oc.eps, oc.omega * t + oc.c, opts);
    return {(u + oc.phi) / (2.0 * k), oc.omega / (2.0 * k * (1.0 + oc.eps * std::cos(u)))};
}

std::string_view to_string(Method m) {
    return m == Method::implicit ? "implicit" : "rk4";
}

Trajectory implicit_trajectory(const ScatterSolution& sol, double c,
                               std::span<const double> times) {
    require_increasing(times);
    if (is_static(sol)) {
        return static_trajectory(static_position(sol, c), times, Method::implicit);
    }
    const OrbitConstants oc = orbit_constants(sol, c);
    const double v_t = transmitted_speed(sol);
    Trajectory tr;
    tr.method = Method::implicit;
    tr.samples.reserve(times.size());
    for (const double t : times) {
        const OrbitPoint p = solve_orbit_implicit(oc, sol.k, v_t, t);
        tr.samples.push_back({t, p.z, p.v});
    }
    mark_crossing(tr);
    return tr;
}

Trajectory rk4_trajectory(const ScatterSolution& sol, double z0, std::span<const double> times,
                          double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("time step must be positive");
    }
    if (!std::isfinite(z0)) {
        throw DomainError("initial position must be finite");
    }
    require_increasing(times);
    if (is_static(sol)) {
        return static_trajectory(z0, times, Method::rk4);
    }

    const auto field = [&](double z) {
        const double v = velocity(sol, z);
        if (!std::isfinite(v)) {
            throw NumericError("velocity field is undefined at z = " + std::to_string(z));
        }
        return v;
    };

    Trajectory tr;
    tr.method = Method::rk4;
    tr.samples.reserve(times.size());
    double z = z0;
    tr.samples.push_back({times[0], z, field(z)});
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double span = times[i] - times[i - 1];
        const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt - 1e-9)));
        const double h = span / static_cast<double>(steps);
        for (std::size_t s = 0; s < steps; ++s) {
            const double k1 = field(z);
            const double k2 = field(z + 0.5 * h * k1);
            const double k3 = field(z + 0.5 * h * k2);
            const double k4 = field(z + h * k3);
            z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        tr.samples.push_back({times[i], z, field(z)});
    }
    mark_crossing(tr);
    return tr;
}

Trajectory integrate_rk4(const ScatterSolution& sol, double z0, double t0, double t1, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("time step must be positive");
    }
    if (!(t1 > t0)) {
        throw DomainError("integration interval must have t1 > t0");
    }
    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
    std::vector<double> times;
    times.reserve(steps + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        times.push_back(t0 + static_cast<double>(i) * dt);
    }
    times.push_back(t1);
    return rk4_trajectory(sol, z0, times, dt);
}

std::vector<Trajectory> trajectory_fan(const ScatterSolution& sol,
                                       std::span<const double> offsets, double t0, double t1,
                                       std::size_t n_samples, Method method, double dt) {
    if (offsets.empty()) {
        throw DomainError("fan needs at least one offset");
    }
    if (std::set<double>(offsets.begin(), offsets.end()).size() != offsets.size()) {
        throw DomainError("fan offsets must be distinct");
    }
    const std::vector<double> times = make_grid(t0, t1, n_samples, GridScale::linear);

    std::vector<Trajectory> fan;
    fan.reserve(offsets.size());
    for (const double c : offsets) {
        if (method == Method::implicit) {
            fan.push_back(implicit_trajectory(sol, c, times));
            continue;
        }
        double z0 = 0.0;
        if (is_static(sol)) {
            z0 = static_position(sol, c);
        } else {
            const OrbitConstants oc = orbit_constants(sol, c);
            z0 = solve_orbit_implicit(oc, sol.k, transmitted_speed(sol), t0).z;
        }
        fan.push_back(rk4_trajectory(sol, z0, times, dt));
    }
    return fan;
}

}  // namespace diracstep
