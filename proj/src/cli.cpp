#include "diracstep/cli.hpp"

#include "diracstep/bohm.hpp"
#include "diracstep/check.hpp"
#include "diracstep/error.hpp"
#include "diracstep/io.hpp"
#include "diracstep/scattering.hpp"
#include "diracstep/wave.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

namespace diracstep {

namespace {

struct PhysicsArgs {
    double mass = 1.0;
    std::optional<double> energy;
    std::optional<double> momentum;
    double height = 0.0;
    std::string direction = "down";
    std::optional<std::string> convention;
    std::optional<double> amp_mod;
    double phase = 0.0;
};

struct OutputArgs {
    std::string format = "csv";
    std::optional<std::string> out;
};

struct TimeArgs {
    double t_start = 0.0;
    std::optional<double> t_end;
    std::size_t samples = 200;
    std::string method = "implicit";
    double dt = default_rk4_step;
};

void add_physics(CLI::App* cmd, PhysicsArgs& a, bool with_fixture) {
    cmd->add_option("--mass", a.mass, "Rest mass m (> 0)")->capture_default_str();
    auto* e = cmd->add_option("--energy", a.energy, "Total energy E (> m)");
    auto* k = cmd->add_option("--momentum", a.momentum, "Incident momentum k (> 0)");
    e->excludes(k);
    auto* h = cmd->add_option("--height", a.height, "Step magnitude V (>= 0)")->capture_default_str();
    cmd->add_option("--direction", a.direction, "Step direction")
        ->check(CLI::IsMember({"down", "up"}))
        ->capture_default_str();
    cmd->add_option("--convention", a.convention, "Klein-zone sign convention")
        ->check(CLI::IsMember({"group-velocity", "momentum"}));
    if (with_fixture) {
        auto* amp = cmd->add_option("--amp-mod", a.amp_mod,
                                    "Prescribed |A|: incident+reflected superposition, no step");
        cmd->add_option("--phase", a.phase, "Prescribed phase of A")->needs(amp);
        amp->excludes(h);
    }
}

void add_output(CLI::App* cmd, OutputArgs& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Output file (default stdout)");
}

void add_time(CLI::App* cmd, TimeArgs& t) {
    cmd->add_option("--t-start", t.t_start, "Start time")->capture_default_str();
    cmd->add_option("--t-end", t.t_end, "End time")->required();
    cmd->add_option("--samples", t.samples, "Samples on the shared time grid")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}))
        ->capture_default_str();
    cmd->add_option("--method", t.method, "Trajectory method")
        ->check(CLI::IsMember({"implicit", "rk4"}))
        ->capture_default_str();
    cmd->add_option("--dt", t.dt, "RK4 step")->check(CLI::PositiveNumber)->capture_default_str();
}

double incident_energy(const PhysicsArgs& a) {
    if (a.energy) {
        return *a.energy;
    }
    if (a.momentum) {
        if (!(*a.momentum > 0.0)) {
            throw DomainError("momentum must be positive");
        }
        return std::hypot(*a.momentum, a.mass);
    }
    throw DomainError("one of --energy or --momentum is required");
}

std::optional<Convention> parse_convention(const std::optional<std::string>& s) {
    if (!s) {
        return std::nullopt;
    }
    return *s == "momentum" ? Convention::momentum : Convention::group_velocity;
}

StepProblem build_problem(const PhysicsArgs& a) {
    return StepProblem::with_energy(a.mass, incident_energy(a), a.height,
                                    a.direction == "up" ? Direction::upward : Direction::downward,
                                    parse_convention(a.convention));
}

void klein_notice(std::ostream& err) {
    err << "note: Klein zone entered; using the group-velocity convention "
           "(pass --convention momentum for the other sign)\n";
}

// Applies the CLI default convention when the problem lands in the Klein zone.
StepProblem with_default_convention(StepProblem p, std::ostream& err) {
    if (!p.convention && classify_regime(p) == Regime::klein) {
        klein_notice(err);
        p.convention = Convention::group_velocity;
    }
    return p;
}

ScatterSolution build_solution(const PhysicsArgs& a, std::ostream& err) {
    if (a.amp_mod) {
        const StepProblem p = StepProblem::with_energy(a.mass, incident_energy(a), 0.0,
                                                       Direction::downward);
        return superposition_fixture(a.mass, p.momentum(), *a.amp_mod, a.phase);
    }
    return solve(with_default_convention(build_problem(a), err));
}

class Emitter {
public:
    Emitter(const OutputArgs& o, std::ostream& out, bool out_is_terminal)
        : opts_(o), out_(out), terminal_(out_is_terminal) {}

    void emit(const std::string& text) const {
        if (opts_.out) {
            write_text(text, std::filesystem::path(*opts_.out));
            return;
        }
        if (opts_.format == "svg" && terminal_) {
            throw DomainError("refusing to write SVG to a terminal; use --out");
        }
        write_text(text, out_);
    }

    void emit_table(const Table& table) const {
        emit(opts_.format == "json" ? render_json(table) : render_csv(table));
    }

    void reject_svg(std::string_view command) const {
        if (opts_.format == "svg") {
            throw DomainError("svg output is only available for trajectory, fan and field, not " +
                              std::string(command));
        }
    }

    [[nodiscard]] bool svg() const { return opts_.format == "svg"; }

private:
    const OutputArgs& opts_;
    std::ostream& out_;
    bool terminal_;
};

Method parse_method(const std::string& s) {
    return s == "rk4" ? Method::rk4 : Method::implicit;
}

Table trajectory_table(std::span<const Trajectory> fan, std::span<const double> offsets,
                       bool with_offset) {
    Table table;
    if (with_offset) {
        table.columns.push_back("offset");
    }
    for (const char* c : {"t", "z", "v"}) {
        table.columns.emplace_back(c);
    }
    for (std::size_t i = 0; i < fan.size(); ++i) {
        for (const auto& s : fan[i].samples) {
            std::vector<double> row;
            if (with_offset) {
                row.push_back(offsets[i]);
            }
            row.insert(row.end(), {s.t, s.z, s.v});
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

void warn_static(std::span<const Trajectory> fan, std::ostream& err) {
    if (!fan.empty() && fan.front().static_field) {
        err << "note: evanescent regime; the guidance field is static (v = 0)\n";
    }
}

double regime_code(Regime r) {
    switch (r) {
        case Regime::propagating: return 0.0;
        case Regime::evanescent: return 1.0;
        case Regime::klein: return 2.0;
    }
    return -1.0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool out_is_terminal) {
    CLI::App app{"Dirac step scattering and Bohmian trajectories", "diracstep"};
    app.require_subcommand(1);

    PhysicsArgs phys;
    OutputArgs output;
    TimeArgs time;

    auto* solve_cmd = app.add_subcommand("solve", "Solve one step: amplitudes and coefficients");
    add_physics(solve_cmd, phys, false);
    add_output(solve_cmd, output);

    std::string axis = "V";
    double lo = 0.0;
    double hi = 1.0;
    std::size_t points = 100;
    std::string scale = "linear";
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate gamma, R, T over V or E");
    add_physics(sweep_cmd, phys, false);
    add_output(sweep_cmd, output);
    sweep_cmd->add_option("--axis", axis, "Swept quantity")
        ->check(CLI::IsMember({"V", "E"}))
        ->capture_default_str();
    sweep_cmd->add_option("--lo", lo, "First grid value")->required();
    sweep_cmd->add_option("--hi", hi, "Last grid value")->required();
    sweep_cmd->add_option("--n", points, "Grid points")->capture_default_str();
    sweep_cmd->add_option("--scale", scale, "Grid spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();

    double offset = 0.0;
    std::optional<double> z0;
    auto* traj_cmd = app.add_subcommand("trajectory", "One Bohmian trajectory");
    add_physics(traj_cmd, phys, true);
    add_output(traj_cmd, output);
    add_time(traj_cmd, time);
    auto* off_opt = traj_cmd->add_option("--offset", offset, "Orbit integration constant c");
    traj_cmd->add_option("--z0", z0, "Position at --t-start instead of --offset")->excludes(off_opt);

    std::vector<double> offsets;
    auto* fan_cmd = app.add_subcommand("fan", "Family of trajectories labelled by c");
    add_physics(fan_cmd, phys, true);
    add_output(fan_cmd, output);
    add_time(fan_cmd, time);
    fan_cmd->add_option("--offsets", offsets, "Comma-separated integration constants")
        ->delimiter(',')
        ->required();

    double z_min = -10.0;
    double z_max = 10.0;
    std::size_t z_samples = 201;
    double at_time = 0.0;
    auto* field_cmd = app.add_subcommand("field", "Density, current and velocity along z");
    add_physics(field_cmd, phys, true);
    add_output(field_cmd, output);
    field_cmd->add_option("--z-min", z_min)->capture_default_str();
    field_cmd->add_option("--z-max", z_max)->capture_default_str();
    field_cmd->add_option("--samples", z_samples)->capture_default_str();
    field_cmd->add_option("--time", at_time, "Time of the spinor snapshot")->capture_default_str();

    std::uint64_t seed = 42;
    std::size_t check_samples = 2000;
    auto* check_cmd = app.add_subcommand("check", "Run the seeded invariant suite");
    check_cmd->add_option("--seed", seed)->capture_default_str();
    check_cmd->add_option("--samples", check_samples, "Random draws per check")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return exit_code::usage;
    }

    const Emitter emit(output, out, out_is_terminal);
    try {
        if (solve_cmd->parsed()) {
            emit.reject_svg("solve");
            const StepProblem p = build_problem(phys);
            const ScatterSolution sol = solve(with_default_convention(p, err));
            std::string convention = "none";
            if (sol.problem.convention) {
                convention = std::string(to_string(*sol.problem.convention));
            }
            const Record rec = {
                {"m", sol.mass()},
                {"E", sol.energy()},
                {"k", sol.k},
                {"U", sol.potential()},
                {"regime", std::string(to_string(sol.regime))},
                {"convention", convention},
                {"gamma", sol.gamma},
                {"A_re", sol.A.real()},
                {"A_im", sol.A.imag()},
                {"C_re", sol.C.real()},
                {"C_im", sol.C.imag()},
                {"R", sol.R},
                {"T", sol.T},
            };
            emit.emit(output.format == "json" ? render_json(rec) : render_csv(rec));
        } else if (sweep_cmd->parsed()) {
            emit.reject_svg("sweep");
            StepProblem base;
            base.mass = phys.mass;
            base.height = phys.height;
            base.direction = phys.direction == "up" ? Direction::upward : Direction::downward;
            base.convention = parse_convention(phys.convention);
            const bool default_convention = !base.convention;
            if (default_convention) {
                base.convention = Convention::group_velocity;
            }
            const SweepAxis ax = axis == "E" ? SweepAxis::energy : SweepAxis::height;
            if (ax == SweepAxis::height) {
                base.energy = incident_energy(phys);
                base.validate();
            }
            const auto rows =
                sweep(base, ax, lo, hi, points, scale == "log" ? GridScale::log : GridScale::linear);
            Table table{{axis, "gamma", "R", "T", "regime", "flagged"}, {}};
            bool klein = false;
            for (const auto& r : rows) {
                klein = klein || (!r.flagged && r.regime == Regime::klein);
                table.rows.push_back({r.x, r.gamma, r.R, r.T, regime_code(r.regime), r.flagged ? 1.0 : 0.0});
            }
            if (klein && default_convention) {
                klein_notice(err);
            }
            emit.emit_table(table);
        } else if (traj_cmd->parsed() || fan_cmd->parsed()) {
            const ScatterSolution sol = build_solution(phys, err);
            const bool single = traj_cmd->parsed();
            if (single) {
                offsets = {z0 ? offset_for_position(sol, *z0, time.t_start) : offset};
            }
            const auto fan = trajectory_fan(sol, offsets, time.t_start, *time.t_end, time.samples,
                                            parse_method(time.method), time.dt);
            warn_static(fan, err);
            if (emit.svg()) {
                emit.emit(render_svg(fan, SvgCanvas{}));
            } else {
                emit.emit_table(trajectory_table(fan, offsets, !single));
            }
        } else if (field_cmd->parsed()) {
            const ScatterSolution sol = build_solution(phys, err);
            const auto zs = make_grid(z_min, z_max, z_samples, GridScale::linear);
            Table table{{"z", "density", "current", "v", "v_numeric"}, {}};
            Polyline line;
            for (const double z : zs) {
                const Spinor4 psi = assemble_region_wave(sol, z, at_time);
                table.rows.push_back({z, density(psi), current_z(psi), velocity(sol, z),
                                      velocity_numeric(sol, z, at_time)});
                line.points.emplace_back(z, velocity(sol, z));
            }
            if (emit.svg()) {
                const Polyline lines[] = {line};
                emit.emit(render_svg(lines, SvgCanvas{}, SvgLayout{"z", "v", 0.0}));
            } else {
                emit.emit_table(table);
            }
        } else if (check_cmd->parsed()) {
            const CheckReport report = run_invariant_checks(seed, check_samples);
            std::ostringstream text;
            for (const auto& item : report.items) {
                text << (item.failed == 0 ? "PASS " : "FAIL ") << item.name << " ("
                     << item.passed << "/" << item.passed + item.failed
                     << ", worst " << format_real(item.worst) << ")\n";
            }
            text << "passed " << report.passed() << ", failed " << report.failed() << "\n";
            write_text(text.str(), out);
            return report.ok() ? exit_code::ok : exit_code::check_failed;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::numeric;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::io;
    }
    return exit_code::ok;
}

}  // namespace diracstep
