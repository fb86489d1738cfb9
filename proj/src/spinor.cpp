#include "diracstep/spinor.hpp"

#include "diracstep/error.hpp"

#include <algorithm>
#include <cmath>

namespace diracstep {

double Momentum3::energy(double mass) const {
    return std::sqrt(kx * kx + ky * ky + kz * kz + mass * mass);
}

Spinor4 free_spinor(const Momentum3& k, double mass) {
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    if (!std::isfinite(k.kx) || !std::isfinite(k.ky) || !std::isfinite(k.kz)) {
        throw DomainError("momentum components must be finite");
    }
    const double e = k.energy(mass);
    const double norm = std::sqrt((e + mass) / (2.0 * e));
    const double inv = 1.0 / (e + mass);
    return norm * Spinor4{1.0, 0.0, k.kz * inv, complex{k.kx, k.ky} * inv};
}

double density(const Spinor4& psi) {
    double sum = 0.0;
    for (const auto& c : psi.components()) {
        sum += std::norm(c);
    }
    return sum;
}

double current_z(const Spinor4& psi) {
    // alpha^3 = [[0, sigma_3], [sigma_3, 0]], so alpha^3 psi = (c2, -c3, c0, -c1).
    return 2.0 * (std::conj(psi[0]) * psi[2] - std::conj(psi[1]) * psi[3]).real();
}

double max_component_distance(const Spinor4& a, const Spinor4& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace diracstep
