#include "samon/scenario.hpp"

#include <algorithm>

#include "samon/json_io.hpp"

namespace samon {

const ScenarioCase& Scenario::case_by_id(int id) const {
    for (const auto& c : cases)
        if (c.id == id) return c;
    throw ConfigError("no case with id " + std::to_string(id));
}

Scenario load_scenario(const std::string& path) {
    auto j = read_json_file(path);
    Scenario sc;
    try {
        sc.library = library_from_json(j.at("library"));
        sc.team = team_from_json(j.at("team"));
        for (const auto& [agent, jp] : j.at("setup").items()) {
            std::vector<PlanId> p;
            for (const auto& id : jp) p.push_back(id.get<std::string>());
            sc.setup.emplace(agent, std::move(p));
        }
        for (const auto& jc : j.at("cases")) {
            ScenarioCase c;
            c.id = jc.at("id").get<int>();
            c.note = jc.value("note", "");
            for (const auto& [agent, jp] : jc.at("paths").items()) {
                std::vector<PlanId> p;
                for (const auto& id : jp) p.push_back(id.get<std::string>());
                c.paths.emplace(agent, std::move(p));
            }
            sc.cases.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }

    // Every scripted path must be a root chain; every team member must be
    // scripted in the setup and in every case.
    auto check_paths = [&](const std::map<AgentId, std::vector<PlanId>>& paths,
                           const std::string& where) {
        for (const auto& m : sc.team.members) {
            auto it = paths.find(m.agent);
            if (it == paths.end())
                throw ConfigError(path + ": " + where + " misses agent " + m.agent);
            if (!sc.library.valid_path(it->second))
                throw ConfigError(path + ": " + where + " has an invalid path for " + m.agent);
        }
    };
    check_paths(sc.setup, "setup");
    std::set<int> ids;
    for (const auto& c : sc.cases) {
        check_paths(c.paths, "case " + std::to_string(c.id));
        if (!ids.insert(c.id).second)
            throw ConfigError(path + ": duplicate case id " + std::to_string(c.id));
    }
    return sc;
}

namespace {

Signature path_signature(const PlanLibrary& lib, const std::vector<PlanId>& path,
                         const RoleId& role) {
    Signature out;
    for (const auto& id : path) {
        const auto& sigs = lib.node(id).signatures;
        auto it = sigs.find(role);
        if (it != sigs.end()) out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

}  // namespace

std::vector<Observation> emit_observations(const Scenario& sc, const ScenarioCase& c,
                                           std::int64_t tick) {
    const auto& paths = tick == 0 ? sc.setup : c.paths;
    std::vector<Observation> out;
    for (const auto& m : sc.team.members)
        out.push_back({m.agent, tick, path_signature(sc.library, paths.at(m.agent), m.role)});
    return out;
}

bool ground_truth_failure(const Scenario& sc, const ScenarioCase& c) {
    for (int d = 1; d <= sc.library.max_depth(); ++d) {
        std::set<PlanId> team_plans;
        for (const auto& m : sc.team.members) {
            const auto& p = c.paths.at(m.agent);
            if (static_cast<int>(p.size()) >= d && sc.library.node(p[d - 1]).team)
                team_plans.insert(p[d - 1]);
        }
        if (team_plans.size() >= 2) return true;
    }
    return false;
}

namespace {

struct MonitorView {
    std::map<AgentId, AgentModel> models;  // teammates only
    CandidateLadder ladder;
};

MonitorView build_view(const Scenario& sc, const ScenarioCase& c, const AgentId& monitor) {
    MonitorView view;
    auto obs0 = emit_observations(sc, c, 0);
    auto obs1 = emit_observations(sc, c, 1);
    for (const auto& m : sc.team.members) {
        if (m.agent == monitor) continue;
        AgentModel model(sc.library, m.role);
        for (const auto& o : obs0)
            if (o.agent == m.agent) model.update(o);
        for (const auto& o : obs1)
            if (o.agent == m.agent) model.update(o);
        view.models.emplace(m.agent, std::move(model));
    }

    const auto& own_path = c.paths.at(monitor);
    for (int d = 1; d <= sc.library.max_depth(); ++d) {
        CandidateSets cs;
        for (const auto& m : sc.team.members) cs.agents.push_back(m.agent);
        for (const auto& [agent, model] : view.models) {
            auto plans = model.plans_at_depth(d);
            cs.sets[agent] = std::vector<PlanId>(plans.begin(), plans.end());
        }
        if (static_cast<int>(own_path.size()) >= d)
            cs.self = std::make_pair(monitor, own_path[d - 1]);
        view.ladder.push_back(std::move(cs));
    }
    return view;
}

/// Hypothesis row for the result table: the differing assignment on failure,
/// otherwise the deepest all-team-plan hypothesis examined.
std::map<AgentId, PlanId> table_hypothesis(const PlanLibrary& lib, const DetectionVerdict& v) {
    if (v.differing) return v.differing->assignment;
    for (auto it = v.trail.rbegin(); it != v.trail.rend(); ++it) {
        bool all_team = true;
        for (const auto& [a, p] : it->assignment)
            if (!lib.node(p).team) { all_team = false; break; }
        if (all_team) return it->assignment;
    }
    return {};
}

DiagnosisOutcome run_diagnosis(const Scenario& sc, const ScenarioCase& c, const AgentId& monitor,
                               const MonitorView& view, const DetectionVerdict& v) {
    if (v.outcome != Outcome::Failure || !v.differing || !v.difference_depth)
        return DiagnosisOutcome::NotApplicable;

    const int depth = *v.difference_depth;
    std::vector<AgentPathHypothesis> hyps;
    bool hypothesis_correct = true;
    for (const auto& m : sc.team.members) {
        const PlanId& assigned = v.differing->assignment.at(m.agent);
        const auto& actual_path = c.paths.at(m.agent);
        if (static_cast<int>(actual_path.size()) < depth || actual_path[depth - 1] != assigned)
            hypothesis_correct = false;

        AgentPathHypothesis h;
        h.agent = m.agent;
        if (m.agent == monitor) {
            h.path = actual_path;  // the monitor knows its own state
            const auto& setup_path = sc.setup.at(m.agent);
            for (const auto& id : h.path)
                if (std::find(setup_path.begin(), setup_path.end(), id) == setup_path.end())
                    h.just_started.insert(id);
        } else {
            const auto& model = view.models.at(m.agent);
            // Lexicographically first matching path through the assigned plan.
            for (const auto& path : model.matching_paths()) {
                if (std::find(path.begin(), path.end(), assigned) != path.end()) {
                    h.path = path;
                    break;
                }
            }
            if (h.path.empty()) return DiagnosisOutcome::Failed;
            for (const auto& id : h.path)
                if (model.just_started(id, model.last_tick())) h.just_started.insert(id);
        }
        hyps.push_back(std::move(h));
    }

    Diagnosis d = diagnose_failure(sc.library, hyps);
    return d.verified && hypothesis_correct ? DiagnosisOutcome::Success : DiagnosisOutcome::Failed;
}

PermutationRun make_run(const Scenario& sc, const ScenarioCase& c, const AgentId& monitor,
                        RunMode mode, const DetectionVerdict& v, const MonitorView& view) {
    PermutationRun run;
    run.case_id = c.id;
    run.monitor = monitor;
    run.mode = mode;
    for (const auto& m : sc.team.members) {
        const auto& p = c.paths.at(m.agent);
        if (p.size() >= 2) run.actual[m.agent] = p[1];
    }
    run.hypothesized = table_hypothesis(sc.library, v);
    run.outcome = v.outcome;
    if (v.outcome != Outcome::PossibleFailure)
        run.cls = classify(v, ground_truth_failure(sc, c));
    run.diagnosis = run_diagnosis(sc, c, monitor, view, v);
    return run;
}

std::vector<PermutationRun> run_case(const Scenario& sc, const ScenarioCase& c,
                                     const AgentId& monitor, RunMode mode, const TieBreak& tie) {
    TieBreak case_tie = tie;
    if (tie.seed) case_tie.seed = mix_seed(*tie.seed, static_cast<std::uint64_t>(c.id));

    std::vector<PermutationRun> out;
    std::vector<AgentId> monitors;
    if (monitor == kAllMonitors)
        for (const auto& m : sc.team.members) monitors.push_back(m.agent);
    else
        monitors.push_back(monitor);

    if (mode == RunMode::Distributed) {
        std::map<AgentId, MonitorView> views;
        std::map<AgentId, CandidateLadder> ladders;
        for (const auto& m : monitors) {
            views.emplace(m, build_view(sc, c, m));
            ladders.emplace(m, views.at(m).ladder);
        }
        auto plans = sc.library.plans_at_depth(2);
        std::erase_if(plans, [&](const PlanId& p) { return !sc.library.node(p).team; });
        auto res = detect_distributed(sc.library, sc.team, ladders, plans, case_tie);
        for (const auto& m : monitors) {
            auto run = make_run(sc, c, m, mode, res.per_monitor.at(m), views.at(m));
            run.guarantee_void = res.guarantee_void;
            out.push_back(std::move(run));
        }
        PermutationRun team_row;
        team_row.case_id = c.id;
        team_row.monitor = "team";
        team_row.mode = mode;
        team_row.outcome = res.team;
        DetectionVerdict agg;
        agg.outcome = res.team;
        team_row.cls = classify(agg, ground_truth_failure(sc, c));
        team_row.guarantee_void = res.guarantee_void;
        for (const auto& m : sc.team.members) {
            const auto& p = c.paths.at(m.agent);
            if (p.size() >= 2) team_row.actual[m.agent] = p[1];
        }
        out.push_back(std::move(team_row));
        return out;
    }

    for (const auto& m : monitors) {
        auto view = build_view(sc, c, m);
        DetectionVerdict v;
        switch (mode) {
            case RunMode::Optimistic:
                v = detect_teamwork(sc.library, sc.team, view.ladder, Policy::Optimistic, case_tie);
                break;
            case RunMode::Pessimistic:
                v = detect_teamwork(sc.library, sc.team, view.ladder, Policy::Pessimistic, case_tie);
                break;
            case RunMode::Centralized:
                v = detect_centralized(sc.library, sc.team, view.ladder, case_tie);
                break;
            case RunMode::Distributed:
                break;  // handled above
        }
        out.push_back(make_run(sc, c, m, mode, v, view));
    }
    return out;
}

}  // namespace

std::vector<PermutationRun> run_permutations(const Scenario& sc, const AgentId& monitor,
                                             RunMode mode, const TieBreak& tie, bool parallel) {
    if (monitor != kAllMonitors) sc.team.role_of(monitor);  // throws on unknown monitor

    std::vector<std::vector<PermutationRun>> per_case(sc.cases.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(sc.cases.size()); ++i)
            per_case[static_cast<std::size_t>(i)] =
                run_case(sc, sc.cases[static_cast<std::size_t>(i)], monitor, mode, tie);
    } else {
        for (std::size_t i = 0; i < sc.cases.size(); ++i)
            per_case[i] = run_case(sc, sc.cases[i], monitor, mode, tie);
    }

    std::vector<PermutationRun> out;
    for (auto& rows : per_case)
        for (auto& r : rows) out.push_back(std::move(r));
    return out;
}

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::Optimistic: return "optimistic";
        case RunMode::Pessimistic: return "pessimistic";
        case RunMode::Centralized: return "centralized";
        case RunMode::Distributed: return "distributed";
    }
    return "?";
}

const char* to_string(DiagnosisOutcome d) {
    switch (d) {
        case DiagnosisOutcome::NotApplicable: return "n/a";
        case DiagnosisOutcome::Success: return "+";
        case DiagnosisOutcome::Failed: return "-";
    }
    return "?";
}

}  // namespace samon
