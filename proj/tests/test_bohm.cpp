#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracstep/bohm.hpp"
#include "diracstep/error.hpp"
#include "diracstep/wave.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace diracstep;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

ScatterSolution canonical() {
    return superposition_fixture(0.5, 0.5, std::numbers::sqrt2 - 1.0, 0.0);
}

ScatterSolution d1() {
    return solve(StepProblem::with_momentum(0.5, 0.5, 1.0, Direction::downward));
}

ScatterSolution klein_momentum() {
    return solve(StepProblem::with_energy(1.0, 1.5, 4.0, Direction::upward, Convention::momentum));
}

// Root of u + eps sin u = mean by plain bisection on [mean - eps, mean + eps].
double bisect_kepler(double eps, double mean) {
    double lo = mean - eps;
    double hi = mean + eps;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid + eps * std::sin(mid) - mean < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("density and current") {
    TEST_CASE("superposition density examples") {
        CHECK(superposition_density(canonical(), 0.0) == Approx(2.058874503045719).epsilon(1e-14));
        const ScatterSolution free = superposition_fixture(0.5, 0.5, 0.0, 0.0);
        const double e = free.energy();
        CHECK(superposition_density(free, -4.2) == Approx(2 * e / (e + 0.5)).epsilon(1e-15));
        CHECK(superposition_density(d1(), 0.0) == Approx(0.79753634829533798).epsilon(1e-13));
    }

    TEST_CASE("corrected density equals psi^dagger psi") {
        testing::ProblemGenerator gen(17);
        for (int i = 0; i < 500; ++i) {
            const ScatterSolution sol = solve(gen.moving());
            const double z = gen.uniform(-15.0, 15.0);
            const double rho = density(assemble_region_wave(sol, z, gen.uniform(-5.0, 5.0)));
            CHECK(superposition_density(sol, z) == Approx(rho).epsilon(1e-12));
        }
    }

    TEST_CASE("superposition current examples") {
        CHECK(superposition_current(superposition_fixture(0.5, 0.5, 0.0, 0.0)) ==
              Approx(0.82842712474619010).epsilon(1e-15));
        const ScatterSolution sol = d1();
        CHECK(superposition_current(sol) == Approx(0.76256051742054905).epsilon(1e-13));
        CHECK(superposition_current(sol) == Approx(currents(sol).transmitted).epsilon(1e-14));
        const ScatterSolution k = klein_momentum();
        const double ji = 2.0 * k.k / (1.5 + 1.0);
        CHECK(superposition_current(k) == Approx(-ji * 2.3413442543221279).epsilon(1e-13));
    }
}

TEST_SUITE("velocity") {
    TEST_CASE("closed-form orbit velocities") {
        const ScatterSolution sol = canonical();
        CHECK(velocity(sol, 0.0) == Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(velocity(sol, pi / 2) == Approx(0.5).epsilon(1e-14));
        CHECK(velocity(sol, pi) == Approx(1.0).epsilon(1e-14));
        CHECK(velocity(sol, -pi) == Approx(1.0).epsilon(1e-14));
        for (double z = -10.0; z < 10.0; z += 0.37) {
            CHECK(velocity(sol, z) == Approx(1.0 / (2.0 + std::cos(z))).epsilon(1e-13));
        }
    }

    TEST_CASE("downward fixture is continuous at the step") {
        const ScatterSolution sol = d1();
        CHECK(velocity(sol, std::nextafter(0.0, -1.0)) == Approx(0.95614515758492186).epsilon(1e-13));
        CHECK(transmitted_speed(sol) == Approx(0.95614515758492186).epsilon(1e-13));
        CHECK(velocity(sol, 3.0) == transmitted_speed(sol));
    }

    TEST_CASE("spinor ratio reproduces the closed form") {
        CHECK(velocity_numeric(canonical(), 0.0, 0.0) == Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(velocity_numeric(canonical(), 0.0, 17.3) == Approx(1.0 / 3.0).epsilon(1e-14));
        const ScatterSolution free = superposition_fixture(0.5, 0.5, 0.0, 0.0);
        CHECK(velocity_numeric(free, -3.0, 2.0) == Approx(0.5 / free.energy()).epsilon(1e-14));
        const ScatterSolution sol = d1();
        CHECK(std::abs(velocity_numeric(sol, -2.7, 13.1) - velocity(sol, -2.7)) < 1e-12);
    }

    TEST_CASE("guidance oracle over random solutions") {
        testing::ProblemGenerator gen(4);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            const ScatterSolution sol = solve(gen.any());
            for (int i = 0; i < 1000; ++i) {
                const double z = gen.uniform(-25.0, 25.0);
                const double t = gen.uniform(-100.0, 100.0);
                worst = std::max(worst, std::abs(velocity_numeric(sol, z, t) - velocity(sol, z)));
            }
        }
        CHECK(worst < 1e-12);
    }

    TEST_CASE("continuity and subluminality over random solutions") {
        testing::ProblemGenerator gen(5);
        for (int i = 0; i < 1000; ++i) {
            const ScatterSolution sol = solve(gen.moving());
            CHECK(std::abs(velocity(sol, std::nextafter(0.0, -1.0)) - velocity(sol, 0.0)) < 1e-10);
            CHECK(std::abs(velocity(sol, gen.uniform(-40.0, 40.0))) < 1.0);
        }
    }

    TEST_CASE("downward fields are bounded below") {
        testing::ProblemGenerator gen(6);
        for (int i = 0; i < 1000; ++i) {
            const ScatterSolution sol = solve(gen.downward());
            const double a = sol.amp_modulus;
            const double bound = sol.k * (1 - a * a) / ((1 + a * a) * sol.energy() + 2 * sol.mass() * a);
            CHECK(bound > 0.0);
            CHECK(velocity(sol, gen.uniform(-40.0, 0.0)) >= bound * (1.0 - 1e-14));
        }
    }

    TEST_CASE("Klein momentum convention flows out of the step") {
        const ScatterSolution sol = klein_momentum();
        for (double z = -20.0; z <= 20.0; z += 0.25) {
            CHECK(velocity(sol, z) < 0.0);
        }
        CHECK(transmitted_speed(sol) == Approx(2.2912878474779199 / (1.5 - 4.0)).epsilon(1e-14));
    }

    TEST_CASE("evanescent field is static") {
        const ScatterSolution sol = solve(StepProblem::with_energy(1.0, 1.5, 1.0, Direction::upward));
        CHECK(velocity(sol, -1.0) == 0.0);
        CHECK(velocity(sol, 1.0) == 0.0);
        CHECK(std::abs(velocity_numeric(sol, -1.0, 0.3)) < 1e-15);
    }
}

TEST_SUITE("orbit constants") {
    TEST_CASE("closed-form orbit") {
        const OrbitConstants oc = orbit_constants(canonical(), 0.0);
        CHECK(oc.eps == Approx(0.5).epsilon(1e-14));
        CHECK(oc.omega == Approx(0.5).epsilon(1e-14));
        CHECK(oc.t_cross == 0.0);
        CHECK_FALSE(oc.stitched);
    }

    TEST_CASE("no reflection gives the classical line") {
        const ScatterSolution free = superposition_fixture(0.5, 0.5, 0.0, 0.0);
        const OrbitConstants oc = orbit_constants(free, 0.0);
        CHECK(oc.eps == 0.0);
        CHECK(oc.omega == Approx(2 * 0.25 / free.energy()).epsilon(1e-15));
        CHECK(solve_orbit_implicit(oc, 0.5, 0.0, 3.0).z == Approx(0.5 / free.energy() * 3.0).epsilon(1e-14));
    }

    TEST_CASE("downward fixture") {
        const OrbitConstants oc = orbit_constants(d1(), 0.0);
        CHECK(oc.eps == Approx(0.36939806251812928).epsilon(1e-13));
        CHECK(oc.omega == Approx(0.60294698888696032).epsilon(1e-13));
        CHECK(oc.phi == Approx(pi));
        CHECK(oc.c_prime == Approx(-transmitted_speed(d1()) * oc.t_cross));
    }

    TEST_CASE("static orbits are refused") {
        const ScatterSolution ev = solve(StepProblem::with_energy(1.0, 1.5, 1.0, Direction::upward));
        CHECK_THROWS_AS((void)orbit_constants(ev, 0.0), NotApplicableError);
    }

    TEST_CASE("eps stays below one") {
        testing::ProblemGenerator gen(12);
        for (int i = 0; i < 2000; ++i) {
            const ScatterSolution sol = solve(gen.moving());
            const OrbitConstants oc = orbit_constants(sol, 0.0);
            CHECK(oc.eps >= 0.0);
            CHECK(oc.eps < 1.0);
            CHECK((oc.omega > 0.0) == (sol.amp_modulus < 1.0));
        }
    }
}

TEST_SUITE("implicit solver") {
    TEST_CASE("Kepler root matches bisection") {
        CHECK(solve_kepler(0.5, 1.0) == Approx(0.68403665667782944).epsilon(1e-14));
        CHECK(std::abs(solve_kepler(0.5, 1.0) - bisect_kepler(0.5, 1.0)) < 1e-14);
        CHECK(solve_kepler(0.0, 2.5) == 2.5);
    }

    TEST_CASE("monotone residual converges for random eps") {
        testing::ProblemGenerator gen(31);
        for (int i = 0; i < 5000; ++i) {
            const double eps = gen.uniform(0.0, 0.999);
            const double mean = gen.uniform(-50.0, 50.0);
            const double u = solve_kepler(eps, mean);
            CHECK(1.0 + eps * std::cos(u) >= 1.0 - eps);
            CHECK(std::abs(u + eps * std::sin(u) - mean) < 1e-13 * std::max(1.0, std::abs(mean)));
            CHECK(std::abs(u - bisect_kepler(eps, mean)) < 1e-12 * std::max(1.0, std::abs(mean)));
        }
    }

    TEST_CASE("invalid eps and non-convergence") {
        CHECK_THROWS_AS((void)solve_kepler(1.0, 0.3), DomainError);
        CHECK_THROWS_AS((void)solve_kepler(-0.1, 0.3), DomainError);
        CHECK_THROWS_AS((void)solve_kepler(0.99, 0.3, KeplerOptions{1e-300, 3}), NumericError);
    }

    TEST_CASE("closed-form orbit endpoint") {
        const OrbitConstants oc = orbit_constants(canonical(), 0.0);
        const OrbitPoint p = solve_orbit_implicit(oc, 0.5, 0.0, 2 * pi);
        CHECK(std::abs(p.z - pi) < 1e-12);
        CHECK(p.v == Approx(1.0).epsilon(1e-12));
        CHECK(solve_orbit_implicit(oc, 0.5, 0.0, 0.0).z == 0.0);
    }

    TEST_CASE("finite differences reproduce the field") {
        const double h = 1e-5;
        for (const ScatterSolution& sol : {canonical(), d1(), klein_momentum()}) {
            const OrbitConstants oc = orbit_constants(sol, 0.4);
            const double vt = transmitted_speed(sol);
            for (double t = -20.0; t <= 20.0; t += 0.7) {
                const double zp = solve_orbit_implicit(oc, sol.k, vt, t + h).z;
                const double zm = solve_orbit_implicit(oc, sol.k, vt, t - h).z;
                const OrbitPoint p = solve_orbit_implicit(oc, sol.k, vt, t);
                CHECK(std::abs((zp - zm) / (2 * h) - velocity(sol, p.z)) < 1e-6);
                CHECK(std::abs(p.v - velocity(sol, p.z)) < 1e-12);
            }
        }
    }

    TEST_CASE("offset_for_position round trip") {
        for (const ScatterSolution& sol : {d1(), klein_momentum()}) {
            const double vt = transmitted_speed(sol);
            for (const double z0 : {-7.0, -0.5, 0.5, 6.0}) {
                const double c = offset_for_position(sol, z0, 1.5);
                CHECK(solve_orbit_implicit(orbit_constants(sol, c), sol.k, vt, 1.5).z ==
                      Approx(z0).epsilon(1e-12));
            }
        }
    }
}

TEST_SUITE("trajectories") {
    TEST_CASE("RK4 reaches the closed-form endpoint") {
        const Trajectory tr = integrate_rk4(canonical(), 0.0, 0.0, 2 * pi, 1e-3);
        CHECK(tr.method == Method::rk4);
        CHECK(tr.samples.back().t == 2 * pi);
        CHECK(std::abs(tr.samples.back().z - pi) < 1e-8);
        for (std::size_t i = 1; i < tr.samples.size(); ++i) {
            CHECK(tr.samples[i].t > tr.samples[i - 1].t);
        }
    }

    TEST_CASE("RK4 is exact on a constant field") {
        const ScatterSolution free = superposition_fixture(0.5, 0.5, 0.0, 0.0);
        const Trajectory tr = integrate_rk4(free, 0.0, 0.0, 10.0, 0.01);
        const double v = 0.5 / free.energy();
        for (const auto& s : tr.samples) {
            CHECK(s.z == Approx(v * s.t).epsilon(1e-12));
        }
    }

    TEST_CASE("downward RK4 trajectory crosses and keeps the transmitted slope") {
        const ScatterSolution sol = d1();
        const Trajectory tr = integrate_rk4(sol, -5.0, 0.0, 20.0, 1e-3);
        CHECK(tr.crossed);
        std::size_t first = 0;
        while (tr.samples[first].z < 0.0) {
            ++first;
        }
        const auto& a = tr.samples[first + 10];
        const auto& b = tr.samples.back();
        CHECK(std::abs((b.z - a.z) / (b.t - a.t) - 0.95614515758492186) < 1e-9);
        for (const auto& s : tr.samples) {
            CHECK(std::abs(s.v) < 1.0);
        }
    }

    TEST_CASE("implicit and RK4 agree over long times") {
        for (const ScatterSolution& sol : {canonical(), d1()}) {
            const double c = offset_for_position(sol, -5.0, 0.0);
            const double offsets[] = {c};
            const auto a = trajectory_fan(sol, offsets, 0.0, 50.0, 501, Method::implicit);
            const auto b = trajectory_fan(sol, offsets, 0.0, 50.0, 501, Method::rk4, 1e-3);
            double worst = 0.0;
            for (std::size_t i = 0; i < a[0].samples.size(); ++i) {
                worst = std::max(worst, std::abs(a[0].samples[i].z - b[0].samples[i].z));
            }
            CHECK(worst < 1e-8);
        }
    }

    TEST_CASE("single-offset fan equals the implicit solution") {
        const ScatterSolution sol = d1();
        const double offsets[] = {0.3};
        const auto fan = trajectory_fan(sol, offsets, -10.0, 10.0, 50, Method::implicit);
        const OrbitConstants oc = orbit_constants(sol, 0.3);
        for (const auto& s : fan[0].samples) {
            const OrbitPoint p = solve_orbit_implicit(oc, sol.k, transmitted_speed(sol), s.t);
            CHECK(s.z == p.z);
            CHECK(s.v == p.v);
        }
    }

    TEST_CASE("closed-form fan moves everything to z > 0") {
        const ScatterSolution sol = canonical();
        std::vector<double> offsets;
        for (int i = 0; i < 10; ++i) {
            offsets.push_back(-10.0 + i);
        }
        const auto fan = trajectory_fan(sol, offsets, 0.0, 30.0, 301, Method::implicit);
        REQUIRE(fan.size() == 10);
        for (const auto& tr : fan) {
            CHECK(tr.samples.back().z > 0.0);
            CHECK(tr.crossed);
            for (std::size_t i = 1; i < tr.samples.size(); ++i) {
                CHECK(tr.samples[i].z > tr.samples[i - 1].z);
            }
        }
    }

    TEST_CASE("Klein momentum fan moves away from the step") {
        const ScatterSolution sol = klein_momentum();
        const std::vector<double> offsets = {-3.0, -1.0, 0.0, 2.0, 5.0};
        for (const Method m : {Method::implicit, Method::rk4}) {
            for (const auto& tr : trajectory_fan(sol, offsets, 0.0, 30.0, 121, m)) {
                for (const auto& s : tr.samples) {
                    CHECK(s.v < 0.0);
                }
                CHECK(tr.samples.back().z < tr.samples.front().z);
            }
        }
    }

    TEST_CASE("fans do not cross") {
        testing::ProblemGenerator gen(77);
        std::vector<double> offsets;
        for (int i = 0; i < 10; ++i) {
            offsets.push_back(-4.0 + 0.9 * i);
        }
        for (int s = 0; s < 20; ++s) {
            const ScatterSolution sol = solve(gen.moving());
            const auto fan = trajectory_fan(sol, offsets, -20.0, 20.0, 81, Method::implicit);
            for (std::size_t i = 0; i < 81; ++i) {
                for (std::size_t j = 1; j < fan.size(); ++j) {
                    CHECK(fan[j - 1].samples[i].z < fan[j].samples[i].z);
                }
            }
        }
    }

    TEST_CASE("evanescent requests yield flagged static trajectories") {
        const ScatterSolution sol = solve(StepProblem::with_energy(1.0, 1.5, 1.0, Direction::upward));
        const Trajectory tr = integrate_rk4(sol, -2.0, 0.0, 1.0, 0.1);
        CHECK(tr.static_field);
        for (const auto& s : tr.samples) {
            CHECK(s.z == -2.0);
            CHECK(s.v == 0.0);
        }
        const double offsets[] = {-1.0, 0.0, 1.0};
        const auto fan = trajectory_fan(sol, offsets, 0.0, 5.0, 11, Method::implicit);
        CHECK(fan[0].static_field);
        CHECK(fan[0].samples.front().z < fan[1].samples.front().z);
        CHECK(fan[2].samples.back().z == fan[2].samples.front().z);
    }

    TEST_CASE("argument errors") {
        const ScatterSolution sol = d1();
        CHECK_THROWS_AS((void)integrate_rk4(sol, 0.0, 0.0, 1.0, 0.0), DomainError);
        CHECK_THROWS_AS((void)integrate_rk4(sol, 0.0, 1.0, 0.0), DomainError);
        CHECK_THROWS_AS((void)integrate_rk4(sol, std::nan(""), 0.0, 1.0), DomainError);
        const double dup[] = {1.0, 1.0};
        CHECK_THROWS_AS((void)trajectory_fan(sol, dup, 0.0, 1.0, 10, Method::implicit), DomainError);
    }
}
