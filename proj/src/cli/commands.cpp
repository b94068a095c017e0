#include "finnet/cli/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "finnet/fixtures.hpp"

namespace finnet::cli {

using nlohmann::json;

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "simulate", "equilibria", "invariance", "robust", "cycles", "intervene", "fixtures"};
    return names;
}

namespace {

json options_json(const Options& o) {
    json j = json::object();
    if (o.seed) j["seed"] = *o.seed;
    if (o.tol) j["tol"] = *o.tol;
    if (o.horizon) j["horizon"] = *o.horizon;
    if (o.hmax) j["hmax"] = *o.hmax;
    if (o.rho) j["rho"] = *o.rho;
    if (o.trials) j["trials"] = *o.trials;
    if (o.nonnegative_injection) j["nonnegative_injection"] = *o.nonnegative_injection;
    if (o.clamped_v_update) j["clamped_v_update"] = *o.clamped_v_update;
    if (o.sampler) j["sampler"] = *o.sampler;
    if (!o.orthants.empty()) j["orthants"] = o.orthants;
    return j;
}

ShiftedModel checked_model(const Scenario& sc, json& results) {
    const auto& net = sc.require_network();
    const auto rep = validate(net);
    if (!rep.ok()) throw ValidationFailed(rep);
    json warnings = json::array();
    for (const auto& w : rep.warnings) warnings.push_back(w.message);
    results["warnings"] = warnings;
    return ShiftedModel(net);
}

json simulate_cmd(const Scenario& sc, Execution& ex) {
    json res;
    const auto model = checked_model(sc, res);
    const std::size_t T = sc.options.horizon.value_or(50);
    json runs = json::array();
    for (std::size_t i = 0; i < sc.initial_states.size(); ++i) {
        const auto traj = simulate(model, sc.initial_states[i], T);
        std::vector<std::uint64_t> orthants;
        for (const auto& s : traj.states) orthants.push_back(orthant_of(s).value());
        runs.push_back({{"x0", sc.initial_states[i]},
                        {"final_state", traj.back()},
                        {"orthants", orthants},
                        {"csv", "simulate_" + std::to_string(i) + ".csv"}});
        ex.trajectories.emplace_back("simulate_" + std::to_string(i), traj.states);
    }
    res["horizon"] = T;
    res["r"] = model.r();
    res["positivity_holds"] = positivity_holds(model.network());
    res["runs"] = runs;
    return res;
}

json equilibria_cmd(const Scenario& sc) {
    json res;
    const auto model = checked_model(sc, res);
    json all = json::array();
    std::size_t consistent = 0;
    for (const auto& r : enumerate_equilibria(model)) {
        consistent += r.consistent ? 1 : 0;
        all.push_back(to_json(r));
    }
    res["candidates"] = all;
    res["consistent_count"] = consistent;
    res["existence"] = to_json(existence_conditions(model));
    return res;
}

json invariance_cmd(const Scenario& sc) {
    json res;
    const auto model = checked_model(sc, res);
    const std::size_t n = model.size();
    const std::uint64_t seed = sc.options.seed.value_or(0);
    res["report"] = to_json(invariance_report(model, seed));

    json extremes = json::array();
    for (const auto& k : {OrthantIndex::healthy(n), OrthantIndex::failed(n)}) {
        json e = {{"orthant", k.value()}};
        const auto eq = candidate_equilibrium(model, k);
        e["equilibrium"] = to_json(eq);
        if (eq.consistent) {
            const auto tau = finite_determination_index(model, k);
            const auto region = maximal_invariant_region(model, k);
            e["tau"] = tau;
            e["region"] = to_json(region);
            json members = json::array();
            for (const auto& x : sc.initial_states) members.push_back(region.contains(x, tol::kState));
            e["initial_state_membership"] = members;
        } else {
            e["tau"] = nullptr;
        }
        extremes.push_back(std::move(e));
    }
    res["extreme_orthants"] = extremes;

    // Intermediate orthants: requested ones, or every consistent one for
    // small n. Regions are the stabilized truncations.
    std::vector<std::uint64_t> ks = sc.options.orthants;
    if (ks.empty() && n <= 10) {
        for (const auto& r : consistent_equilibria(model))
            if (!r.orthant.is_healthy() && !r.orthant.is_failed()) ks.push_back(r.orthant.value());
    }
    json inter = json::array();
    for (auto k : ks) {
        const auto eq = candidate_equilibrium(model, OrthantIndex(k, n));
        json e = {{"orthant", k}, {"equilibrium", to_json(eq)}};
        if (eq.consistent) {
            const auto reg = stabilized_region(model, eq, sc.options.horizon.value_or(200));
            e["stabilized"] = reg.stabilized;
            e["horizon"] = reg.horizon;
            e["region"] = to_json(reg.region);
            json box = json::array();
            for (const auto& [lo, hi] : bounding_box(reg.region)) {
                box.push_back({lo ? json(*lo) : json(nullptr), hi ? json(*hi) : json(nullptr)});
            }
            e["bounding_box_x"] = box;
        }
        inter.push_back(std::move(e));
    }
    res["intermediate_regions"] = inter;
    return res;
}

SwitchingSampler make_sampler(const Options& o) {
    const auto kind = sampler_kind_from_string(o.sampler.value_or("iid-uniform"));
    switch (kind) {
        case SamplerKind::ConstantLower: return SwitchingSampler::constant_lower();
        case SamplerKind::ConstantUpper: return SwitchingSampler::constant_upper();
        case SamplerKind::IidUniform: return SwitchingSampler::iid_uniform(o.seed.value_or(0));
        case SamplerKind::UserSequence:
            if (o.switching_sequence.empty()) {
                throw InputError("scenario field 'options.switching_sequence': required for "
                                 "the user-sequence sampler");
            }
            return SwitchingSampler::user_sequence(o.switching_sequence);
    }
    return SwitchingSampler::constant_lower();
}

json robust_cmd(const Scenario& sc, Execution& ex) {
    if (!sc.interval) throw InputError("scenario: the robust command needs an \"interval\" block");
    const auto& inet = *sc.interval;
    const auto issues = validate(inet);
    if (!issues.empty()) {
        std::string msg = "invalid interval network:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw InputError(msg);
    }
    json res;
    const auto rep = robust_report(inet);
    res["x_minus_bar"] = rep.x_minus_bar;
    res["x_plus_bar"] = rep.x_plus_bar;
    res["robust_set"] = to_json(rep.robust_set);
    res["last_hope_set"] = to_json(rep.last_hope);
    const std::size_t T = sc.options.horizon.value_or(200);
    res["horizon"] = T;
    res["sampler"] = sc.options.sampler.value_or("iid-uniform");
    json runs = json::array();
    for (std::size_t i = 0; i < sc.initial_states.size(); ++i) {
        const auto& x0 = sc.initial_states[i];
        json run = {{"x0", x0},
                    {"in_robust_set", rep.robust_set.contains(x0, tol::kState)},
                    {"in_last_hope_set", rep.last_hope.contains(x0, tol::kState)}};
        if (run["in_robust_set"].get<bool>()) {
            auto sampler = make_sampler(sc.options);
            const auto sw = sandwich_bounds(inet, x0, T, sampler);
            run["ordered"] = sw.ordered;
            run["final_lower"] = sw.lower.back();
            run["final_state"] = sw.actual.back();
            run["final_upper"] = sw.upper.back();
            ex.trajectories.emplace_back("robust_" + std::to_string(i), sw.actual);
        }
        runs.push_back(std::move(run));
    }
    res["runs"] = runs;
    return res;
}

json cycles_cmd(const Scenario& sc, Execution& ex) {
    json res;
    const auto model = checked_model(sc, res);
    ClassifyOptions co;
    if (sc.options.rho) co.rho = *sc.options.rho;
    if (sc.options.horizon) co.horizon = *sc.options.horizon;
    if (sc.options.hmax) co.h_max = *sc.options.hmax;
    if (sc.options.tol) co.tol = *sc.options.tol;
    res["rho"] = co.rho;
    res["horizon"] = co.horizon;
    res["hmax"] = co.h_max;
    res["tol"] = co.tol;
    json runs = json::array();
    for (std::size_t i = 0; i < sc.initial_states.size(); ++i) {
        const auto cls = classify_limit(model, sc.initial_states[i], co);
        json run = {{"x0", sc.initial_states[i]}, {"classification", to_json(cls)}};
        if (cls.kind == LimitKind::Cycle) {
            run["lifted_residual"] = build_lifted(model, cls.period).residual(stack_states(cls.orbit));
        }
        runs.push_back(std::move(run));
        ex.trajectories.emplace_back("cycles_" + std::to_string(i),
                                     simulate(model, sc.initial_states[i], cls.steps).states);
    }
    res["runs"] = runs;
    const std::size_t trials = sc.options.trials.value_or(100);
    res["no_period2"] = to_json(verify_no_period2(model, trials, sc.options.seed.value_or(0),
                                                  600, co.tol));
    return res;
}

json intervene_cmd(const Scenario& sc, Execution& ex) {
    json res;
    const auto model = checked_model(sc, res);
    InterventionOptions io;
    io.nonnegative_injection = sc.options.nonnegative_injection.value_or(false);
    io.clamped_update = sc.options.clamped_v_update.value_or(false);
    res["nonnegative_injection"] = io.nonnegative_injection;
    res["v_update"] = io.clamped_update ? "clamped" : "verbatim";
    json plans = json::array();
    for (std::size_t i = 0; i < sc.initial_states.size(); ++i) {
        const auto& x0 = sc.initial_states[i];
        const auto plan = drive_to_invariant(model, x0, io);
        const auto inj = minimal_injection(plan.target, x0, io.nonnegative_injection);
        json j = to_json(plan);
        j["injection"] = {{"v", inj.v},
                          {"objective", inj.objective},
                          {"certificate_residual", inj.certificate_residual},
                          {"surplus", add(x0, inj.v)}};
        plans.push_back(std::move(j));
        std::vector<Vector> states{plan.x0};
        for (const auto& s : plan.steps) states.push_back(s.x);
        ex.trajectories.emplace_back("intervene_" + std::to_string(i), std::move(states));
        if (plan.iteration_cap_reached) ex.exit_code = kExitSolver;
    }
    res["plans"] = plans;
    return res;
}

json fixtures_cmd(const Options& o, Execution& ex) {
    const auto rep = fixtures::run_all(o.seed.value_or(1));
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    if (!rep.all_passed()) ex.exit_code = kExitMismatch;
    return {{"checks", checks}, {"notes", rep.notes}, {"all_passed", rep.all_passed()}};
}

}  // namespace

Execution execute(const std::string& command, const Scenario& sc) {
    Execution ex;
    ex.report.command = command;
    ex.report.inputs = {{"scenario", sc.source}, {"effective_options", options_json(sc.options)}};
    if (command == "simulate") ex.report.results = simulate_cmd(sc, ex);
    else if (command == "equilibria") ex.report.results = equilibria_cmd(sc);
    else if (command == "invariance") ex.report.results = invariance_cmd(sc);
    else if (command == "robust") ex.report.results = robust_cmd(sc, ex);
    else if (command == "cycles") ex.report.results = cycles_cmd(sc, ex);
    else if (command == "intervene") ex.report.results = intervene_cmd(sc, ex);
    else if (command == "fixtures") ex.report.results = fixtures_cmd(sc.options, ex);
    else throw InputError("unknown command '" + command + "'");
    return ex;
}

RunOutcome run(const RunRequest& req, std::ostream& err) {
    RunOutcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        Scenario sc;
        if (req.command == "fixtures" && req.scenario_path.empty()) {
            sc.source = json::object();
        } else {
            if (req.scenario_path.empty()) throw InputError("--scenario is required");
            sc = load_scenario(req.scenario_path);
        }
        sc.options.merge(req.overrides);
        auto ex = execute(req.command, sc);
        ex.report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.report = ex.report;
        out.exit_code = ex.exit_code;

        std::filesystem::create_directories(req.out_dir);
        const auto dir = std::filesystem::path(req.out_dir);
        const auto json_path = (dir / (req.command + ".json")).string();
        std::ofstream(json_path) << out.report.serialize();
        out.files.push_back(json_path);
        for (const auto& [stem, states] : ex.trajectories) {
            const auto csv_path = (dir / (stem + ".csv")).string();
            std::ofstream f(csv_path);
            write_csv(f, states);
            out.files.push_back(csv_path);
        }
        if (out.exit_code == kExitMismatch) err << "fixtures: at least one check failed\n";
        if (out.exit_code == kExitSolver) err << req.command << ": iteration cap reached\n";
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        out.exit_code = kExitInvalid;
    } catch (const ValidationFailed& e) {
        err << "error: " << e.what();
        out.exit_code = kExitInvalid;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        out.exit_code = kExitInvalid;
    } catch (const DimensionTooLarge& e) {
        err << "error: " << e.what() << '\n';
        out.exit_code = kExitInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        out.exit_code = kExitInvalid;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << '\n';
        out.exit_code = kExitSolver;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        out.exit_code = kExitInvalid;
    }
    return out;
}

}  // namespace finnet::cli
