#include "samon/hypothesis.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace samon {

std::vector<PlanId> CandidateSets::set_for(const AgentId& a) const {
    if (self && self->first == a) return {self->second};
    auto it = sets.find(a);
    if (it == sets.end() || it->second.empty())
        throw ModelingIncompleteError("no candidate plans for agent " + a);
    return it->second;
}

std::size_t TeamHypothesis::distinct_plans() const {
    std::set<PlanId> d;
    for (const auto& [a, p] : assignment) d.insert(p);
    return d.size();
}

Rational coherence(const std::map<AgentId, PlanId>& assignment) {
    if (assignment.empty()) throw std::invalid_argument("empty assignment");
    std::set<PlanId> d;
    for (const auto& [a, p] : assignment) d.insert(p);
    return Rational(static_cast<long long>(assignment.size()),
                    static_cast<long long>(d.size()));
}

namespace {

/// Plans in preference order: lexicographic, or a seeded shuffle of it.
std::vector<PlanId> preference_order(const std::vector<std::vector<PlanId>>& sets,
                                     const TieBreak& tie) {
    std::set<PlanId> u;
    for (const auto& s : sets) u.insert(s.begin(), s.end());
    std::vector<PlanId> order(u.begin(), u.end());
    if (tie.seed) {
        std::mt19937_64 rng(*tie.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

/// First minimum-size subset of `order` whose plans together hit every
/// agent's set, in combination order. Masks index agents (<= 64).
bool find_hitting(const std::vector<std::uint64_t>& plan_mask, std::uint64_t goal,
                  std::size_t start, std::size_t slots, std::uint64_t covered,
                  std::vector<std::size_t>& chosen) {
    if (covered == goal) return true;
    if (slots == 0) return false;
    for (std::size_t i = start; i + slots <= plan_mask.size(); ++i) {
        if ((plan_mask[i] & ~covered) == 0) continue;  // adds nothing
        chosen.push_back(i);
        if (find_hitting(plan_mask, goal, i + 1, slots - 1, covered | plan_mask[i], chosen))
            return true;
        chosen.pop_back();
    }
    return false;
}

TeamHypothesis max_coherent(const std::vector<AgentId>& agents,
                            const std::vector<std::vector<PlanId>>& sets,
                            const std::vector<PlanId>& order) {
    const std::size_t n = agents.size();
    std::vector<std::uint64_t> plan_mask(order.size(), 0);
    for (std::size_t p = 0; p < order.size(); ++p)
        for (std::size_t a = 0; a < n; ++a)
            if (std::find(sets[a].begin(), sets[a].end(), order[p]) != sets[a].end())
                plan_mask[p] |= 1ull << a;
    const std::uint64_t goal = n == 64 ? ~0ull : (1ull << n) - 1;

    std::vector<std::size_t> chosen;
    for (std::size_t size = 1; size <= order.size(); ++size) {
        if (find_hitting(plan_mask, goal, 0, size, 0, chosen)) break;
        chosen.clear();
    }
    if (chosen.empty() && n > 0)
        throw ModelingIncompleteError("candidate sets cannot be hit");

    TeamHypothesis h;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t ci : chosen) {
            if (plan_mask[ci] & (1ull << a)) {
                h.assignment[agents[a]] = order[ci];
                break;
            }
        }
    }
    h.coherence = coherence(h.assignment);
    return h;
}

TeamHypothesis max_incoherent(const std::vector<AgentId>& agents,
                              const std::vector<std::vector<PlanId>>& sets,
                              const std::vector<PlanId>& order) {
    const std::size_t n = agents.size();
    std::map<PlanId, std::size_t> plan_index;
    for (std::size_t p = 0; p < order.size(); ++p) plan_index[order[p]] = p;

    // Maximum matching agents -> plans (Kuhn's augmenting paths) gives the
    // largest achievable number of distinct plans.
    std::vector<int> owner(order.size(), -1);  // plan index -> agent index
    std::vector<int> matched(n, -1);           // agent index -> plan index
    std::function<bool(std::size_t, std::vector<bool>&)> try_augment =
        [&](std::size_t a, std::vector<bool>& used) {
            for (const auto& pid : order) {
                std::size_t p = plan_index.at(pid);
                if (used[p]) continue;
                if (std::find(sets[a].begin(), sets[a].end(), pid) == sets[a].end()) continue;
                used[p] = true;
                if (owner[p] < 0 ||
                    try_augment(static_cast<std::size_t>(owner[p]), used)) {
                    owner[p] = static_cast<int>(a);
                    matched[a] = static_cast<int>(p);
                    return true;
                }
            }
            return false;
        };
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> used(order.size(), false);
        try_augment(a, used);
    }

    TeamHypothesis h;
    std::map<PlanId, int> multiplicity;
    for (std::size_t a = 0; a < n; ++a) {
        if (matched[a] >= 0) {
            const auto& pid = order[static_cast<std::size_t>(matched[a])];
            h.assignment[agents[a]] = pid;
            multiplicity[pid]++;
        }
    }
    // Leftover agents cannot add a new distinct plan; spread them to keep
    // the maximum multiplicity low, ties by preference order.
    for (std::size_t a = 0; a < n; ++a) {
        if (matched[a] >= 0) continue;
        const PlanId* best = nullptr;
        int best_mult = 0;
        for (const auto& pid : order) {
            if (std::find(sets[a].begin(), sets[a].end(), pid) == sets[a].end()) continue;
            int m = multiplicity.count(pid) ? multiplicity.at(pid) : 0;
            if (!best || m < best_mult) {
                best = &pid;
                best_mult = m;
            }
        }
        if (!best) throw ModelingIncompleteError("no candidate plans for agent " + agents[a]);
        h.assignment[agents[a]] = *best;
        multiplicity[*best]++;
    }
    h.coherence = coherence(h.assignment);
    return h;
}

}  // namespace

TeamHypothesis select_extreme(const CandidateSets& cands, Extreme extreme, const TieBreak& tie) {
    if (cands.agents.empty()) throw std::invalid_argument("no agents");
    if (cands.agents.size() > 64) throw std::invalid_argument("too many agents");
    std::vector<std::vector<PlanId>> sets;
    sets.reserve(cands.agents.size());
    for (const auto& a : cands.agents) sets.push_back(cands.set_for(a));
    auto order = preference_order(sets, tie);
    return extreme == Extreme::MaxCoherent ? max_coherent(cands.agents, sets, order)
                                           : max_incoherent(cands.agents, sets, order);
}

void enumerate_hypotheses(const CandidateSets& cands, std::size_t bound,
                          const std::function<void(const TeamHypothesis&)>& fn) {
    std::vector<std::vector<PlanId>> sets;
    for (const auto& a : cands.agents) sets.push_back(cands.set_for(a));

    std::size_t total = 1;
    for (const auto& s : sets) {
        if (s.empty()) throw ModelingIncompleteError("empty candidate set");
        if (total > bound / s.size() + 1) throw EnumerationBoundExceeded(bound + 1);
        total *= s.size();
    }
    if (total > bound) throw EnumerationBoundExceeded(total);

    std::vector<std::size_t> idx(sets.size(), 0);
    while (true) {
        TeamHypothesis h;
        for (std::size_t i = 0; i < sets.size(); ++i)
            h.assignment[cands.agents[i]] = sets[i][idx[i]];
        h.coherence = coherence(h.assignment);
        fn(h);

        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == sets[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
}

}  // namespace samon
