#pragma once

#include "diracstep/scattering.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace diracstep {

/// j^0 of the region wave: 2/(E+m) [(1+|A|^2) E + 2 m |A| cos(2kz - phi)] for
/// z < 0, the transmitted density |C|^2 2(E-U)/(E-U+m) for z >= 0.
[[nodiscard]] double superposition_density(const ScatterSolution& sol, double z);

/// z-independent current of the incident + reflected superposition,
/// (2k/(E+m)) (1 - |A|^2). Equal to J_T.
[[nodiscard]] double superposition_current(const ScatterSolution& sol);

/// Speed on the transmitted side, q / (E - U). Zero when evanescent.
[[nodiscard]] double transmitted_speed(const ScatterSolution& sol);

/// Closed-form guidance velocity v(z) = j^z / j^0, piecewise in z.
/// Identically zero in the evanescent regime.
[[nodiscard]] double velocity(const ScatterSolution& sol, double z);

/// Same velocity computed from assembled spinors, current_z / density.
/// Throws NumericError if the density vanishes.
[[nodiscard]] double velocity_numeric(const ScatterSolution& sol, double z, double t);

/// Left region:  u + eps sin u = omega t + c,  u = 2kz - phi.
/// Right region: z = v_T t + c_prime.
struct OrbitConstants {
    double eps = 0.0;
    double omega = 0.0;
    double phi = 0.0;
    double c = 0.0;
    double c_prime = 0.0;
    /// Time at which the left-region orbit reaches z = 0.
    double t_cross = 0.0;
    /// False for superposition fixtures, where the left-region law holds for all z.
    bool stitched = true;
};

/// Throws NotApplicableError when omega == 0 (|A| == 1, static orbits).
[[nodiscard]] OrbitConstants orbit_constants(const ScatterSolution& sol, double c);

/// Integration constant c of the orbit passing through (t0, z0).
[[nodiscard]] double offset_for_position(const ScatterSolution& sol, double z0, double t0);

struct KeplerOptions {
    double tolerance = 1e-13;
    int max_iterations = 100;
};

/// Solves u + eps sin u = mean for 0 <= eps < 1. Newton from u = mean with a
/// bisection fallback on [mean - eps, mean + eps]. The residual tolerance is
/// relative to max(1, |mean|).
[[nodiscard]] double solve_kepler(double eps, double mean, KeplerOptions opts = {});

struct OrbitPoint {
    double z = 0.0;
    double v = 0.0;
};

/// Position and velocity at time t from the implicit orbit; stitched onto
/// the straight transmitted line at t_cross.
[[nodiscard]] OrbitPoint solve_orbit_implicit(const OrbitConstants& oc, double k,
                                              double transmitted_speed, double t,
                                              KeplerOptions opts = {});

enum class Method { implicit, rk4 };

[[nodiscard]] std::string_view to_string(Method m);

struct TrajectorySample {
    double t = 0.0;
    double z = 0.0;
    double v = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Method method = Method::implicit;
    /// Samples exist on both sides of z = 0.
    bool crossed = false;
    /// Evanescent solution: v == 0 everywhere and z is constant.
    bool static_field = false;
};

inline constexpr double default_rk4_step = 1e-3;

/// Classical RK4 on dz/dt = velocity(sol, z), one sample per step, the last
/// step shortened to land on t1.
[[nodiscard]] Trajectory integrate_rk4(const ScatterSolution& sol, double z0, double t0,
                                       double t1, double dt = default_rk4_step);

/// Implicit-orbit samples for offset c at the given (strictly increasing) times.
[[nodiscard]] Trajectory implicit_trajectory(const ScatterSolution& sol, double c,
                                             std::span<const double> times);

/// RK4 samples at the given times, sub-stepping each interval with steps <= dt.
[[nodiscard]] Trajectory rk4_trajectory(const ScatterSolution& sol, double z0,
                                        std::span<const double> times,
                                        double dt = default_rk4_step);

/// One trajectory per offset c (in the order given) on a shared grid of
/// n_samples times from t0 to t1.
[[nodiscard]] std::vector<Trajectory> trajectory_fan(const ScatterSolution& sol,
                                                     std::span<const double> offsets, double t0,
                                                     double t1, std::size_t n_samples,
                                                     Method method,
                                                     double dt = default_rk4_step);

}  // namespace diracstep
