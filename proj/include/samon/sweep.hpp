#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "samon/types.hpp"

namespace samon {

/// Exhaustive property sweep over generated two-level team libraries.
///
/// For each team size n and team-plan count k, every combination of per-role
/// signature structures (a set partition of the plans per role: plans in one
/// block look identical to that role) forms one library; every plan
/// assignment to the n agents forms one configuration. When the library
/// count for a cell exceeds `max_libraries_per_cell`, a seeded sample is
/// drawn instead, keeping the run reproducible.
struct SweepOptions {
    int min_agents = 2;
    int max_agents = 4;
    int min_plans = 2;
    int max_plans = 5;
    std::size_t max_libraries_per_cell = 48;
    std::uint64_t seed = 0;   // governs sampling only
    bool parallel = false;    // OpenMP over libraries; counts match serial
};

/// Checked guarantees, keyed by name in SweepResult::violations:
///   teamwork-sound     max-coherence detection never false-positives
///   teamwork-complete  max-incoherence detection never false-negatives
///   policy-dominance   coherent failure implies incoherent failure
///   distributed-exact  with observable partitioning, the OR-combined
///                      per-monitor verdict equals ground truth
///   key-agent-detect   a monitor whose role distinguishes its own plan from
///                      a teammate's actual plan reports the failure
///   mutex-sound        max-incoherence equality detection never
///                      false-positives
///   mutex-complete     max-coherence equality detection never
///                      false-negatives
struct SweepResult {
    std::size_t libraries = 0;
    std::size_t configurations = 0;
    std::map<std::string, std::size_t> violations;

    bool clean() const {
        for (const auto& [k, v] : violations)
            if (v != 0) return false;
        return true;
    }
};

SweepResult run_sweep(const SweepOptions& opts = {});

}  // namespace samon
