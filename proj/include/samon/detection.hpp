#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "samon/hypothesis.hpp"
#include "samon/plan_model.hpp"

namespace samon {

/// OPTIMISTIC selects maximal coherence (sound for teamwork), PESSIMISTIC
/// maximal incoherence (complete for teamwork). For mutual exclusion the
/// mapping inverts.
enum class Policy { Optimistic, Pessimistic };

enum class Outcome { NoFailure, PossibleFailure, Failure };

enum class DetectionClass { TruePositive, TrueNegative, FalsePositive, FalseNegative };

struct DetectionVerdict {
    Outcome outcome = Outcome::NoFailure;
    std::optional<int> difference_depth;             // present iff outcome != NoFailure
    std::optional<TeamHypothesis> differing;         // assignment exhibiting the difference
    std::vector<TeamHypothesis> trail;               // per-depth selected hypotheses, in order
    // Centralized disagreement carries both extremes for later verification.
    std::optional<TeamHypothesis> optimistic_view;
    std::optional<TeamHypothesis> pessimistic_view;
};

struct UnsupportedConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Candidate sets per hierarchy depth; index i holds depth i+1.
using CandidateLadder = std::vector<CandidateSets>;

/// Hierarchical comparison under one policy: walks depths top-down, selects
/// the per-policy extreme hypothesis at each team-plan depth, and reports the
/// topmost difference. Reaching individual plans without a difference means
/// no failure; a team/individual mix at one depth is a failure.
DetectionVerdict detect_teamwork(const PlanLibrary& lib, const TeamDefinition& team,
                                 const CandidateLadder& ladder, Policy policy,
                                 const TieBreak& tie = {});

/// Two-policy detection: agreement is decisive, optimistic NO_FAILURE with
/// pessimistic FAILURE yields POSSIBLE_FAILURE. The reverse disagreement
/// cannot happen and is asserted.
DetectionVerdict detect_centralized(const PlanLibrary& lib, const TeamDefinition& team,
                                    const CandidateLadder& ladder, const TieBreak& tie = {});

struct DistributedResult {
    std::map<AgentId, DetectionVerdict> per_monitor;
    Outcome team = Outcome::NoFailure;  // FAILURE iff any monitor reports one
    bool guarantee_void = false;        // plan set not observably partitioned
    std::vector<PlanPair> risky;
};

/// Theorem-4 scheme: every monitor runs optimistic detection over its own
/// candidate ladder; verdicts combine by OR. `plans` is the team-plan set
/// whose observable partitioning backs the soundness+completeness guarantee.
DistributedResult detect_distributed(const PlanLibrary& lib, const TeamDefinition& team,
                                     const std::map<AgentId, CandidateLadder>& per_monitor,
                                     const std::vector<PlanId>& plans, const TieBreak& tie = {});

/// Mutual exclusion at one depth: failures are equalities. Soundness comes
/// from maximal incoherence, completeness from maximal coherence, so the
/// policy-to-extreme mapping is inverted here.
DetectionVerdict detect_mutex(const CandidateSets& group, int depth, Policy policy,
                              const TieBreak& tie = {});

using SimilarityRelation = std::function<bool(const PlanId&, const PlanId&)>;

/// Role-similarity check over individual plans: benefit of the doubt, failure
/// only when no candidate pair is similar.
DetectionVerdict detect_role_similarity(const PlanLibrary& lib, const TeamDefinition& team,
                                        const AgentId& agent_a, const AgentId& agent_b,
                                        const std::vector<PlanId>& cands_a,
                                        const std::vector<PlanId>& cands_b,
                                        const SimilarityRelation& similar);

/// The 2x2 detected-vs-ground-truth mapping. POSSIBLE_FAILURE is classified
/// separately (needs verification) and rejected here.
DetectionClass classify(const DetectionVerdict& verdict, bool ground_truth_failure);

const char* to_string(Outcome o);
const char* to_string(DetectionClass c);

}  // namespace samon
