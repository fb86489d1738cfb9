#include "diracstep/wave.hpp"

#include <cmath>

namespace diracstep {

namespace {

// exp(-i(Et - p z)) for complex p; p = i kappa gives exp(-iEt) exp(-kappa z).
complex plane_phase(double energy, complex p, double z, double t) {
    const complex i{0.0, 1.0};
    return std::exp(-i * (energy * t - p * z));
}

}  // namespace

Spinor4 incident_wave(const ScatterSolution& sol, double z, double t) {
    const double e = sol.energy();
    const double lower = sol.k / (e + sol.mass());
    return plane_phase(e, sol.k, z, t) * Spinor4{1.0, 0.0, lower, 0.0};
}

Spinor4 reflected_wave(const ScatterSolution& sol, double z, double t) {
    const double e = sol.energy();
    const double lower = -sol.k / (e + sol.mass());
    return (sol.A * plane_phase(e, -sol.k, z, t)) * Spinor4{1.0, 0.0, lower, 0.0};
}

Spinor4 transmitted_wave(const ScatterSolution& sol, double z, double t) {
    if (sol.superposition_only) {
        return incident_wave(sol, z, t) + reflected_wave(sol, z, t);
    }
    const double e = sol.energy();
    const complex lower = sol.q / (e - sol.potential() + sol.mass());
    return (sol.C * plane_phase(e, sol.q, z, t)) * Spinor4{1.0, 0.0, lower, 0.0};
}

Spinor4 assemble_region_wave(const ScatterSolution& sol, double z, double t) {
    if (z < 0.0 || sol.superposition_only) {
        return incident_wave(sol, z, t) + reflected_wave(sol, z, t);
    }
    return transmitted_wave(sol, z, t);
}

}  // namespace diracstep
