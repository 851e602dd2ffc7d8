#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "samon/types.hpp"

namespace samon {

/// Per-agent candidate plan sets at one hierarchy depth. The monitor's own
/// entry, when present, is pinned to a singleton (M(A,A/P) = {P}).
struct CandidateSets {
    std::vector<AgentId> agents;                    // fixed order
    std::map<AgentId, std::vector<PlanId>> sets;    // each sorted, non-empty
    std::optional<std::pair<AgentId, PlanId>> self;

    /// Effective set for one agent (self pin applied).
    std::vector<PlanId> set_for(const AgentId& a) const;
};

struct TeamHypothesis {
    std::map<AgentId, PlanId> assignment;
    Rational coherence;

    std::size_t distinct_plans() const;
};

enum class Extreme { MaxCoherent, MaxIncoherent };

/// Tie-breaking among equally extreme hypotheses: deterministic plan-id order
/// by default, or a seeded shuffle replicating random selection.
struct TieBreak {
    std::optional<std::uint64_t> seed;

    static TieBreak lexicographic() { return {}; }
    static TieBreak seeded(std::uint64_t s) { return {s}; }
};

/// Def. 1: agents-to-distinct-plans ratio.
Rational coherence(const std::map<AgentId, PlanId>& assignment);

/// Selects a hypothesis attaining the extreme coherence over the implicit
/// cartesian product of candidate sets, without materializing the product.
/// MaxCoherent solves an exact minimum hitting set over the plan universe
/// (branch-and-bound, greedy-ordered); MaxIncoherent finds a maximum system
/// of distinct representatives by augmenting-path matching and distributes
/// the leftover agents to minimize the maximum plan multiplicity.
TeamHypothesis select_extreme(const CandidateSets& cands, Extreme extreme,
                              const TieBreak& tie = {});

struct EnumerationBoundExceeded : std::runtime_error {
    std::size_t estimated;
    explicit EnumerationBoundExceeded(std::size_t est)
        : std::runtime_error("hypothesis product exceeds bound; estimated size " +
                             std::to_string(est)),
          estimated(est) {}
};

/// Test-only oracle: every element of the cartesian product, exactly once.
/// Refuses (with a size estimate) when the product exceeds `bound`.
void enumerate_hypotheses(const CandidateSets& cands, std::size_t bound,
                          const std::function<void(const TeamHypothesis&)>& fn);

}  // namespace samon
