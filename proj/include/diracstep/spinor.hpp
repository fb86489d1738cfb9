#pragma once

#include <array>
#include <complex>

namespace diracstep {

using complex = std::complex<double>;

/// Three-momentum in natural units (hbar = c = 1).
struct Momentum3 {
    double kx = 0.0;
    double ky = 0.0;
    double kz = 0.0;

    /// E = sqrt(|k|^2 + m^2).
    [[nodiscard]] double energy(double mass) const;
};

/// Four-component Dirac amplitude in the standard (Dirac) representation.
class Spinor4 {
public:
    constexpr Spinor4() = default;
    constexpr Spinor4(complex c0, complex c1, complex c2, complex c3) : comp_{c0, c1, c2, c3} {}

    [[nodiscard]] constexpr complex operator[](std::size_t i) const { return comp_[i]; }
    [[nodiscard]] constexpr const std::array<complex, 4>& components() const { return comp_; }

    friend Spinor4 operator+(const Spinor4& a, const Spinor4& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }
    friend Spinor4 operator-(const Spinor4& a, const Spinor4& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    friend Spinor4 operator*(complex s, const Spinor4& a) {
        return {s * a[0], s * a[1], s * a[2], s * a[3]};
    }
    friend Spinor4 operator*(const Spinor4& a, complex s) { return s * a; }

private:
    std::array<complex, 4> comp_{};
};

/// Spin-up positive-energy plane-wave amplitude at the origin, normalised so
/// that density() == 1. The phase exp(-i(Et - k.x)) is left to the caller.
/// Throws DomainError for mass <= 0.
[[nodiscard]] Spinor4 free_spinor(const Momentum3& k, double mass);

/// j^0 = psi^dagger psi.
[[nodiscard]] double density(const Spinor4& psi);

/// j^z = psi^dagger alpha^3 psi = 2 Re(c0* c2 - c1* c3).
[[nodiscard]] double current_z(const Spinor4& psi);

/// Largest componentwise modulus of a - b.
[[nodiscard]] double max_component_distance(const Spinor4& a, const Spinor4& b);

}  // namespace diracstep
