#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "samon/detection.hpp"
#include "samon/diagnosis.hpp"
#include "samon/recognition.hpp"

namespace samon {

/// One failure permutation: the ground-truth root-to-leaf path per agent.
struct ScenarioCase {
    int id = 0;
    std::map<AgentId, std::vector<PlanId>> paths;
    std::string note;
};

/// Deterministic phase-scripted scenario: every case shares a common setup
/// phase (tick 0) and diverges in its case phase (tick 1).
struct Scenario {
    PlanLibrary library;
    TeamDefinition team;
    std::map<AgentId, std::vector<PlanId>> setup;
    std::vector<ScenarioCase> cases;

    const ScenarioCase& case_by_id(int id) const;
};

Scenario load_scenario(const std::string& path);

/// Per agent, the observable behavior of its scripted path for its role:
/// the union of the path's signatures. Tick 0 uses the setup phase.
std::vector<Observation> emit_observations(const Scenario& sc, const ScenarioCase& c,
                                           std::int64_t tick);

/// Recomputed from the scripted paths, never hand-set: true iff two agents'
/// team plans differ at some team depth.
bool ground_truth_failure(const Scenario& sc, const ScenarioCase& c);

enum class RunMode { Optimistic, Pessimistic, Centralized, Distributed };

enum class DiagnosisOutcome { NotApplicable, Success, Failed };

struct PermutationRun {
    int case_id = 0;
    AgentId monitor;  // "team" for the distributed aggregate row
    RunMode mode = RunMode::Optimistic;
    std::map<AgentId, PlanId> actual;       // depth-2 ground truth
    std::map<AgentId, PlanId> hypothesized; // selected hypothesis at the compared depth
    Outcome outcome = Outcome::NoFailure;
    std::optional<DetectionClass> cls;      // absent for POSSIBLE_FAILURE rows
    DiagnosisOutcome diagnosis = DiagnosisOutcome::NotApplicable;
    bool guarantee_void = false;
};

inline constexpr const char* kAllMonitors = "all";

/// Runs every case through recognition, hypothesis selection, detection,
/// classification, and (on FAILURE) diagnosis. `monitor` names one agent or
/// kAllMonitors. Cases are independent; `parallel` runs them with OpenMP,
/// producing output identical to the serial reference.
std::vector<PermutationRun> run_permutations(const Scenario& sc, const AgentId& monitor,
                                             RunMode mode, const TieBreak& tie = {},
                                             bool parallel = false);

const char* to_string(RunMode m);
const char* to_string(DiagnosisOutcome d);

}  // namespace samon
