#include "diracstep/check.hpp"

#include "diracstep/bohm.hpp"
#include "diracstep/scattering.hpp"
#include "diracstep/wave.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

namespace diracstep {

std::size_t CheckReport::passed() const {
    std::size_t n = 0;
    for (const auto& item : items) {
        n += item.passed;
    }
    return n;
}

std::size_t CheckReport::failed() const {
    std::size_t n = 0;
    for (const auto& item : items) {
        n += item.failed;
    }
    return n;
}

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    // Problems spread evenly over downward, upward propagating, evanescent and
    // both Klein conventions.
    StepProblem problem() {
        const double m = uniform(0.1, 2.0);
        const double e = m * (1.0 + uniform(0.01, 4.0));
        switch (index(5)) {
            case 0: return StepProblem::with_energy(m, e, uniform(0.0, 20.0), Direction::downward);
            case 1:
                return StepProblem::with_energy(m, e, (e - m) * uniform(0.0, 0.99), Direction::upward);
            case 2:
                return StepProblem::with_energy(m, e, e - m + 2.0 * m * uniform(0.01, 0.99),
                                                Direction::upward);
            case 3:
                return StepProblem::with_energy(m, e, e + m + m * uniform(0.01, 10.0),
                                                Direction::upward, Convention::group_velocity);
            default:
                return StepProblem::with_energy(m, e, e + m + m * uniform(0.01, 10.0),
                                                Direction::upward, Convention::momentum);
        }
    }

    StepProblem moving_problem() {
        for (;;) {
            StepProblem p = problem();
            if (classify_regime(p) != Regime::evanescent) {
                return p;
            }
        }
    }

private:
    std::mt19937_64 rng_;
};

class Tally {
public:
    explicit Tally(std::string name) { item_.name = std::move(name); }

    void expect(bool ok, double err = 0.0) {
        ++(ok ? item_.passed : item_.failed);
        if (std::isfinite(err)) {
            item_.worst = std::max(item_.worst, err);
        } else {
            item_.worst = err;
        }
    }

    void expect_below(double err, double tol) { expect(err < tol, err); }

    template <typename F>
    void guard(F&& body) {
        try {
            body();
        } catch (const std::exception&) {
            expect(false);
        }
    }

    CheckItem release() { return std::move(item_); }

private:
    CheckItem item_;
};

}  // namespace

CheckReport run_invariant_checks(std::uint64_t seed, std::size_t samples) {
    Sampler rng(seed);
    CheckReport report;
    const std::size_t n = std::max<std::size_t>(samples, 10);

    {
        Tally t("spinor normalisation");
        for (std::size_t i = 0; i < n; ++i) {
            t.guard([&] {
                const Momentum3 k{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
                t.expect_below(std::abs(density(free_spinor(k, rng.uniform(0.01, 5.0))) - 1.0), 1e-14);
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally t("subluminal spinor flux");
        for (std::size_t i = 0; i < n; ++i) {
            Spinor4 psi;
            {
                std::array<complex, 4> c;
                for (auto& x : c) {
                    x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
                }
                psi = Spinor4{c[0], c[1], c[2], c[3]};
            }
            t.expect(std::abs(current_z(psi)) <= density(psi) * (1.0 + 1e-15));
        }
        report.items.push_back(t.release());
    }

    Tally unitarity("R + T = 1");
    Tally flux("flux conservation");
    Tally amp("C = 1 + A");
    Tally cont("wave continuity at z = 0");
    Tally routes("R from |A|^2 equals |J_R|/|J_I|");
    Tally regimes("regime coefficient bounds");
    for (std::size_t i = 0; i < 10 * n; ++i) {
        regimes.guard([&] {
            const ScatterSolution sol = solve(rng.problem());
            const Currents j = currents(sol);
            unitarity.expect_below(std::abs(sol.R + sol.T - 1.0), 1e-12);
            flux.expect_below(std::abs(j.incident + j.reflected - j.transmitted) / std::abs(j.incident),
                              1e-12);
            amp.expect_below(std::abs(sol.C - (1.0 + sol.A)), 1e-15);
            cont.expect_below(continuity_residual(sol), 1e-12);
            routes.expect_below(std::abs(sol.R - std::abs(j.reflected) / j.incident), 1e-13 * std::max(1.0, sol.R));

            bool ok = true;
            if (sol.problem.direction == Direction::downward) {
                ok = sol.gamma >= 1.0 && sol.A.real() <= 0.0 && sol.A.imag() == 0.0 && sol.R >= 0.0 &&
                     sol.R < 1.0;
            } else if (sol.regime == Regime::evanescent) {
                ok = std::abs(sol.amp_modulus - 1.0) < 1e-14 && std::abs(sol.R - 1.0) < 1e-14 &&
                     sol.T == 0.0;
            } else if (sol.regime == Regime::klein) {
                if (*sol.problem.convention == Convention::group_velocity) {
                    ok = sol.R > 0.0 && sol.R < 1.0;
                } else {
                    ok = sol.R > 1.0 && sol.T < 0.0 &&
                         std::abs((sol.R - 1.0) - std::abs(sol.T)) < 1e-12 * sol.R;
                }
            }
            regimes.expect(ok);
        });
    }
    for (Tally* t : {&unitarity, &flux, &amp, &cont, &routes, &regimes}) {
        report.items.push_back(t->release());
    }

    {
        Tally t("guidance law: spinor ratio equals closed form");
        for (std::size_t i = 0; i < n / 10; ++i) {
            t.guard([&] {
                const ScatterSolution sol = solve(rng.problem());
                for (int j = 0; j < 20; ++j) {
                    const double z = rng.uniform(-20.0, 20.0);
                    const double time = rng.uniform(-50.0, 50.0);
                    t.expect_below(std::abs(velocity_numeric(sol, z, time) - velocity(sol, z)), 1e-12);
                }
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally cont_v("velocity continuity at z = 0");
        Tally sub("subluminal guidance velocity");
        for (std::size_t i = 0; i < n; ++i) {
            cont_v.guard([&] {
                const ScatterSolution sol = solve(rng.moving_problem());
                cont_v.expect_below(std::abs(velocity(sol, std::nextafter(0.0, -1.0)) - velocity(sol, 0.0)), 1e-10);
                const double z = rng.uniform(-30.0, 30.0);
                sub.expect(std::abs(velocity(sol, z)) < 1.0);
            });
        }
        report.items.push_back(cont_v.release());
        report.items.push_back(sub.release());
    }
    {
        Tally t("downward field positive");
        for (std::size_t i = 0; i < n; ++i) {
            t.guard([&] {
                const double m = rng.uniform(0.1, 2.0);
                const auto p = StepProblem::with_energy(m, m * (1.0 + rng.uniform(0.01, 4.0)),
                                                        rng.uniform(0.0, 50.0), Direction::downward);
                const ScatterSolution sol = solve(p);
                t.expect(velocity(sol, rng.uniform(-30.0, 30.0)) > 0.0);
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally t("Klein momentum convention moves out of the step");
        for (std::size_t i = 0; i < n / 10; ++i) {
            t.guard([&] {
                const double m = rng.uniform(0.1, 2.0);
                const double e = m * (1.0 + rng.uniform(0.01, 4.0));
                const auto p = StepProblem::with_energy(m, e, e + m + m * rng.uniform(0.01, 10.0),
                                                        Direction::upward, Convention::momentum);
                const ScatterSolution sol = solve(p);
                t.expect(velocity(sol, -rng.uniform(0.0, 30.0)) < 0.0 &&
                         velocity(sol, rng.uniform(0.0, 30.0)) < 0.0);
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally t("implicit orbit solver residual");
        for (std::size_t i = 0; i < n; ++i) {
            t.guard([&] {
                const double eps = rng.uniform(0.0, 0.999);
                const double mean = rng.uniform(-100.0, 100.0);
                const double u = solve_kepler(eps, mean);
                t.expect_below(std::abs(u + eps * std::sin(u) - mean), 1e-13 * std::max(1.0, std::abs(mean)));
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally t("implicit and RK4 trajectories agree");
        for (std::size_t i = 0; i < 4; ++i) {
            t.guard([&] {
                const double m = rng.uniform(0.2, 1.5);
                const auto p = StepProblem::with_momentum(m, rng.uniform(0.2, 1.5), rng.uniform(0.1, 5.0),
                                                          Direction::downward);
                const ScatterSolution sol = solve(p);
                const double c = offset_for_position(sol, -5.0, 0.0);
                const double offsets[] = {c};
                const auto a = trajectory_fan(sol, offsets, 0.0, 20.0, 41, Method::implicit);
                const auto b = trajectory_fan(sol, offsets, 0.0, 20.0, 41, Method::rk4);
                double worst = 0.0;
                for (std::size_t s = 0; s < a[0].samples.size(); ++s) {
                    worst = std::max(worst, std::abs(a[0].samples[s].z - b[0].samples[s].z));
                }
                t.expect_below(worst, 1e-8);
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally t("fan trajectories do not cross");
        for (std::size_t i = 0; i < 5; ++i) {
            t.guard([&] {
                const ScatterSolution sol = solve(rng.moving_problem());
                std::vector<double> offsets;
                for (int j = 0; j < 10; ++j) {
                    offsets.push_back(-6.0 + 1.2 * j);
                }
                const auto fan = trajectory_fan(sol, offsets, 0.0, 30.0, 61, Method::implicit);
                bool ok = true;
                for (std::size_t s = 0; s < 61; ++s) {
                    for (std::size_t j = 1; j < fan.size(); ++j) {
                        ok = ok && fan[j - 1].samples[s].z < fan[j].samples[s].z;
                    }
                }
                t.expect(ok);
            });
        }
        report.items.push_back(t.release());
    }
    {
        Tally t("downward R nondecreasing in step height");
        for (std::size_t i = 0; i < 20; ++i) {
            t.guard([&] {
                const double m = rng.uniform(0.1, 2.0);
                const auto base = StepProblem::with_energy(m, m * (1.0 + rng.uniform(0.001, 4.0)), 0.0,
                                                           Direction::downward);
                const auto rows = sweep(base, SweepAxis::height, 0.0, 1e6, 100, GridScale::log);
                bool ok = rows.front().R == 0.0;
                for (std::size_t j = 1; j < rows.size(); ++j) {
                    ok = ok && rows[j].R >= rows[j - 1].R;
                }
                t.expect(ok);
            });
        }
        report.items.push_back(t.release());
    }
    return report;
}

}  // namespace diracstep
