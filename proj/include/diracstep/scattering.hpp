#pragma once

#include "diracstep/spinor.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace diracstep {

enum class Direction { downward, upward };

/// Sign choice for the transmitted wavenumber inside the Klein zone.
///   group_velocity: q < 0, transmitted group velocity points away from the step, R < 1.
///   momentum:       q > 0, gives |A| > 1, R > 1, T < 0.
enum class Convention { group_velocity, momentum };

enum class Regime { propagating, evanescent, klein };

[[nodiscard]] std::string_view to_string(Direction d);
[[nodiscard]] std::string_view to_string(Convention c);
[[nodiscard]] std::string_view to_string(Regime r);

/// Physical inputs of a single step at z = 0. The potential for z > 0 is
/// U = -height (downward) or U = +height (upward); the incident side has U = 0.
struct StepProblem {
    double mass = 1.0;
    double energy = 2.0;
    double height = 0.0;
    Direction direction = Direction::downward;
    /// Must be set whenever the problem lands in the Klein zone.
    std::optional<Convention> convention;

    /// Both factories validate and throw DomainError on bad input.
    [[nodiscard]] static StepProblem with_energy(double mass, double energy, double height,
                                                 Direction direction,
                                                 std::optional<Convention> convention = {});
    [[nodiscard]] static StepProblem with_momentum(double mass, double momentum, double height,
                                                   Direction direction,
                                                   std::optional<Convention> convention = {});

    [[nodiscard]] double momentum() const;
    /// Signed potential U on the transmitted side.
    [[nodiscard]] double potential() const;

    void validate() const;
};

struct Wavenumbers {
    double k = 0.0;
    /// Real and non-negative when propagating or klein (the magnitude; the
    /// convention sign is applied by gamma_factor), i*kappa when evanescent.
    complex q;
    Regime regime = Regime::propagating;
};

/// Regime of the transmitted side. Downward steps are always propagating.
/// Throws RegimeBoundaryError when |E - U| == m exactly.
[[nodiscard]] Regime classify_regime(const StepProblem& p);

[[nodiscard]] Wavenumbers wavenumbers(const StepProblem& p);

/// gamma = q (E + m) / (k (E - U + m)) with the convention-resolved sign of q.
/// Throws NotApplicableError in the evanescent regime and DomainError in the
/// Klein zone when no convention is set.
[[nodiscard]] double gamma_factor(const StepProblem& p);

struct Amplitudes {
    complex reflected;    // A
    complex transmitted;  // C, always 1 + A
};

[[nodiscard]] Amplitudes match_amplitudes(const StepProblem& p);

/// Solved step. All fields are derived from `problem` by solve(); the
/// fixture constructor is the only other producer.
struct ScatterSolution {
    StepProblem problem;
    double k = 0.0;
    /// Transmitted wavenumber with the convention sign applied (i*kappa if evanescent).
    complex q;
    /// Matching ratio. In the evanescent regime this holds the real gamma~
    /// with A = (1 - i gamma~) / (1 + i gamma~).
    double gamma = 1.0;
    complex A;
    complex C;
    double amp_modulus = 0.0;  // |A|
    double amp_phase = 0.0;    // arg A in (-pi, pi]
    double R = 0.0;
    double T = 1.0;
    Regime regime = Regime::propagating;
    /// No step: the incident + reflected superposition fills all z. Only
    /// produced by superposition_fixture().
    bool superposition_only = false;

    [[nodiscard]] double energy() const { return problem.energy; }
    [[nodiscard]] double mass() const { return problem.mass; }
    [[nodiscard]] double potential() const { return problem.potential(); }
};

[[nodiscard]] ScatterSolution solve(const StepProblem& p);

/// Incident + reflected superposition with a prescribed reflected amplitude
/// |A| e^{i phase} and no transmitted region. Used to reproduce closed-form
/// orbits that are not reachable from any physical step height.
[[nodiscard]] ScatterSolution superposition_fixture(double mass, double momentum,
                                                    double amp_modulus, double phase);

struct Currents {
    double incident = 0.0;
    double reflected = 0.0;
    double transmitted = 0.0;
};

/// J_I = 2k/(E+m), J_R = -J_I |A|^2, J_T = 2 Re(q) |C|^2 / (E - U + m).
[[nodiscard]] Currents currents(const ScatterSolution& sol);

struct Coefficients {
    double R = 0.0;
    double T = 0.0;
};

/// R = |A|^2, T = J_T / J_I (signed).
[[nodiscard]] Coefficients coefficients(const ScatterSolution& sol);

/// Downward V -> infinity limit sqrt((E+m)/(E-m)). Accepts m = 0.
[[nodiscard]] double asymptotic_gamma(double mass, double energy);

/// ((g-1)/(g+1))^2, the reflection coefficient for a real matching ratio g.
[[nodiscard]] double reflection_from_gamma(double g);

enum class SweepAxis { height, energy };
enum class GridScale { linear, log };

/// n points from lo to hi inclusive. Log grids are geometric for lo > 0 and
/// log1p-spaced when lo == 0.
[[nodiscard]] std::vector<double> make_grid(double lo, double hi, std::size_t n, GridScale scale);

struct SweepRow {
    double x = 0.0;
    double gamma = 0.0;
    double R = 0.0;
    double T = 0.0;
    Regime regime = Regime::propagating;
    /// Point hit a regime boundary or was otherwise unsolvable; numbers are zero.
    bool flagged = false;
};

/// One row per grid point of `axis`, other parameters taken from `base`.
[[nodiscard]] std::vector<SweepRow> sweep(const StepProblem& base, SweepAxis axis, double lo,
                                          double hi, std::size_t n, GridScale scale);

/// Schroedinger step with kinetic energy E_kin, for comparison.
[[nodiscard]] Coefficients nonrel_coefficients(double mass, double kinetic, double height,
                                               Direction direction);

/// max_i |psi_{I+R}(0,0)_i - psi_T(0,0)_i|.
[[nodiscard]] double continuity_residual(const ScatterSolution& sol);

}  // namespace diracstep
