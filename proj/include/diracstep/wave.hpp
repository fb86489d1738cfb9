#pragma once

#include "diracstep/scattering.hpp"
#include "diracstep/spinor.hpp"

namespace diracstep {

/// psi_I + psi_R for z < 0 and psi_T for z >= 0, phase exp(-iEt) included.
/// Evanescent solutions decay as exp(-kappa z). Superposition fixtures return
/// psi_I + psi_R everywhere.
[[nodiscard]] Spinor4 assemble_region_wave(const ScatterSolution& sol, double z, double t);

[[nodiscard]] Spinor4 incident_wave(const ScatterSolution& sol, double z, double t);
[[nodiscard]] Spinor4 reflected_wave(const ScatterSolution& sol, double z, double t);
[[nodiscard]] Spinor4 transmitted_wave(const ScatterSolution& sol, double z, double t);

}  // namespace diracstep
