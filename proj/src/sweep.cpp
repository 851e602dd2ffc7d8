#include "samon/sweep.hpp"

#include <random>
#include <vector>

#include "samon/detection.hpp"
#include "samon/recognition.hpp"

namespace samon {

namespace {

/// All set partitions of {0..k-1} as restricted growth strings:
/// a[0] = 0 and a[i] <= max(a[0..i-1]) + 1.
std::vector<std::vector<int>> growth_strings(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int i, int mx) -> void {
        if (i == k) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, std::max(mx, v));
        }
    };
    rec(rec, 1, 0);
    return out;
}

struct Cell {
    int n = 0;  // agents, one role each
    int k = 0;  // team plans under the root
    std::vector<std::vector<int>> combos;  // per library: one partition index per role
};

struct GeneratedLibrary {
    PlanLibrary lib;
    TeamDefinition team;
    std::vector<PlanId> plans;                               // the k team plans
    std::map<PlanPair, std::set<RoleId>> keys;
    bool partitioned = false;
    // candidates[role index][plan index] = teammate candidate set at depth 2
    std::vector<std::vector<std::vector<PlanId>>> candidates;
};

GeneratedLibrary build_library(const Cell& cell, const std::vector<int>& combo,
                               const std::vector<std::vector<int>>& partitions) {
    GeneratedLibrary g;
    const int n = cell.n, k = cell.k;

    std::vector<PlanNode> nodes;
    PlanNode root;
    root.id = "root";
    root.team = true;
    for (int r = 0; r < n; ++r) root.signatures["r" + std::to_string(r)] = {"base"};
    for (int p = 0; p < k; ++p) {
        PlanNode node;
        node.id = "p" + std::to_string(p);
        node.team = true;
        for (int r = 0; r < n; ++r) {
            int block = partitions[static_cast<std::size_t>(combo[static_cast<std::size_t>(r)])]
                                  [static_cast<std::size_t>(p)];
            node.signatures["r" + std::to_string(r)] = {
                "r" + std::to_string(r) + "b" + std::to_string(block)};
        }
        root.children.push_back(node.id);
        g.plans.push_back(node.id);
        nodes.push_back(std::move(node));
    }
    std::set<RoleId> roles;
    for (int r = 0; r < n; ++r) roles.insert("r" + std::to_string(r));
    nodes.push_back(std::move(root));
    g.lib = PlanLibrary("root", std::move(nodes), std::move(roles));

    for (int r = 0; r < n; ++r)
        g.team.members.push_back({"a" + std::to_string(r), "r" + std::to_string(r)});

    g.keys = key_agents(g.lib, g.team, g.plans);
    g.partitioned = is_observably_partitioned(g.lib, g.team, g.plans).partitioned;

    // What a monitor infers about an agent of role r executing plan p:
    // feed the role's observable behavior through recognition once per pair.
    g.candidates.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        g.candidates[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(k));
        for (int p = 0; p < k; ++p) {
            AgentModel model(g.lib, "r" + std::to_string(r));
            Signature features = {"base"};
            const auto& sig = g.lib.node(g.plans[static_cast<std::size_t>(p)])
                                  .signatures.at("r" + std::to_string(r));
            features.insert(sig.begin(), sig.end());
            model.update({"x", 0, features});
            auto set = model.plans_at_depth(2);
            g.candidates[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] =
                std::vector<PlanId>(set.begin(), set.end());
        }
    }
    return g;
}

CandidateLadder build_ladder(const GeneratedLibrary& g, const std::vector<int>& assign,
                             int monitor) {
    const int n = static_cast<int>(g.team.members.size());
    CandidateLadder ladder(2);
    for (int d = 0; d < 2; ++d)
        for (const auto& m : g.team.members) ladder[static_cast<std::size_t>(d)].agents.push_back(m.agent);
    for (int a = 0; a < n; ++a) {
        const AgentId& id = g.team.members[static_cast<std::size_t>(a)].agent;
        if (a == monitor) {
            ladder[0].self = std::make_pair(id, g.lib.root());
            ladder[1].self = std::make_pair(id, g.plans[static_cast<std::size_t>(assign[static_cast<std::size_t>(a)])]);
        } else {
            ladder[0].sets[id] = {g.lib.root()};
            ladder[1].sets[id] =
                g.candidates[static_cast<std::size_t>(a)][static_cast<std::size_t>(assign[static_cast<std::size_t>(a)])];
        }
    }
    return ladder;
}

struct Tally {
    std::size_t configurations = 0;
    std::map<std::string, std::size_t> violations;

    void merge(const Tally& o) {
        configurations += o.configurations;
        for (const auto& [k, v] : o.violations) violations[k] += v;
    }
};

void check_library(const GeneratedLibrary& g, Tally& t) {
    const int n = static_cast<int>(g.team.members.size());
    const int k = static_cast<int>(g.plans.size());

    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    for (;;) {
        ++t.configurations;

        std::set<int> distinct(assign.begin(), assign.end());
        const bool gt_fail = distinct.size() >= 2;
        const bool gt_dup = distinct.size() < assign.size();

        bool any_opt_fail = false;
        for (int m = 0; m < n; ++m) {
            auto ladder = build_ladder(g, assign, m);
            auto opt = detect_teamwork(g.lib, g.team, ladder, Policy::Optimistic);
            auto pess = detect_teamwork(g.lib, g.team, ladder, Policy::Pessimistic);
            if (!gt_fail && opt.outcome == Outcome::Failure) ++t.violations["teamwork-sound"];
            if (gt_fail && pess.outcome != Outcome::Failure) ++t.violations["teamwork-complete"];
            if (opt.outcome == Outcome::Failure && pess.outcome != Outcome::Failure)
                ++t.violations["policy-dominance"];
            if (opt.outcome == Outcome::Failure) any_opt_fail = true;

            // A monitor observing a teammate whose role tells the two plans
            // apart must see the disagreement (the teammate is a key agent).
            for (int a = 0; a < n; ++a) {
                if (a == m || assign[static_cast<std::size_t>(a)] == assign[static_cast<std::size_t>(m)]) continue;
                PlanPair pair{g.plans[static_cast<std::size_t>(std::min(assign[static_cast<std::size_t>(m)], assign[static_cast<std::size_t>(a)]))],
                              g.plans[static_cast<std::size_t>(std::max(assign[static_cast<std::size_t>(m)], assign[static_cast<std::size_t>(a)]))]};
                auto it = g.keys.find(pair);
                if (it != g.keys.end() &&
                    it->second.count(g.team.members[static_cast<std::size_t>(a)].role) &&
                    opt.outcome != Outcome::Failure)
                    ++t.violations["key-agent-detect"];
            }

            auto mutex_sound = detect_mutex(ladder[1], 2, Policy::Optimistic);
            auto mutex_complete = detect_mutex(ladder[1], 2, Policy::Pessimistic);
            if (!gt_dup && mutex_sound.outcome == Outcome::Failure) ++t.violations["mutex-sound"];
            if (gt_dup && mutex_complete.outcome != Outcome::Failure) ++t.violations["mutex-complete"];
        }

        if (g.partitioned && any_opt_fail != gt_fail) ++t.violations["distributed-exact"];

        // Next assignment (odometer over k^n).
        int i = 0;
        while (i < n && ++assign[static_cast<std::size_t>(i)] == k) assign[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
    }
}

}  // namespace

SweepResult run_sweep(const SweepOptions& opts) {
    SweepResult res;
    for (int n = opts.min_agents; n <= opts.max_agents; ++n) {
        for (int k = opts.min_plans; k <= opts.max_plans; ++k) {
            auto partitions = growth_strings(k);
            const std::size_t bell = partitions.size();

            // Library = one partition per role; enumerate when small, else a
            // seeded sample of the combination space.
            Cell cell;
            cell.n = n;
            cell.k = k;
            double total = 1;
            for (int r = 0; r < n; ++r) total *= static_cast<double>(bell);
            if (total <= static_cast<double>(opts.max_libraries_per_cell)) {
                std::vector<int> combo(static_cast<std::size_t>(n), 0);
                for (;;) {
                    cell.combos.push_back(combo);
                    int i = 0;
                    while (i < n && ++combo[static_cast<std::size_t>(i)] == static_cast<int>(bell))
                        combo[static_cast<std::size_t>(i++)] = 0;
                    if (i == n) break;
                }
            } else {
                std::mt19937_64 rng(mix_seed(opts.seed, mix_seed(static_cast<std::uint64_t>(n),
                                                                 static_cast<std::uint64_t>(k))));
                std::uniform_int_distribution<int> pick(0, static_cast<int>(bell) - 1);
                for (std::size_t s = 0; s < opts.max_libraries_per_cell; ++s) {
                    std::vector<int> combo(static_cast<std::size_t>(n));
                    for (auto& c : combo) c = pick(rng);
                    cell.combos.push_back(std::move(combo));
                }
            }

            const long count = static_cast<long>(cell.combos.size());
            std::vector<Tally> tallies(static_cast<std::size_t>(count));
            if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
                for (long i = 0; i < count; ++i) {
                    auto g = build_library(cell, cell.combos[static_cast<std::size_t>(i)], partitions);
                    check_library(g, tallies[static_cast<std::size_t>(i)]);
                }
            } else {
                for (long i = 0; i < count; ++i) {
                    auto g = build_library(cell, cell.combos[static_cast<std::size_t>(i)], partitions);
                    check_library(g, tallies[static_cast<std::size_t>(i)]);
                }
            }
            for (const auto& t : tallies) {
                res.configurations += t.configurations;
                for (const auto& [key, v] : t.violations) res.violations[key] += v;
            }
            res.libraries += static_cast<std::size_t>(count);
        }
    }
    // Stable key set: report zero counts for every checked guarantee.
    for (const char* key : {"teamwork-sound", "teamwork-complete", "policy-dominance",
                            "distributed-exact", "key-agent-detect", "mutex-sound",
                            "mutex-complete"})
        res.violations.emplace(key, 0);
    return res;
}

}  // namespace samon
