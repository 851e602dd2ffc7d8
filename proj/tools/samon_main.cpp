#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "samon/json_io.hpp"
#include "samon/scenario.hpp"
#include "samon/trace.hpp"

namespace {

using namespace samon;

constexpr int kExitOk = 0;
constexpr int kExitDetected = 1;  // validation violations / analysis errors
constexpr int kExitUsage = 2;     // bad invocation, unreadable input

std::string default_format() {
    const char* env = std::getenv("SAMON_FORMAT");
    if (env && std::string(env) == "csv") return "csv";
    return "text";
}

/// Library files may be bare or wrapped as {"library":..., "team":...}.
nlohmann::json library_section(const nlohmann::json& j) {
    return j.contains("library") ? j.at("library") : j;
}

TeamDefinition team_section(const nlohmann::json& j) {
    if (!j.contains("team")) throw ConfigError("input has no 'team' section");
    return team_from_json(j.at("team"));
}

int cmd_validate(const std::string& path) {
    nlohmann::json j;
    try {
        j = read_json_file(path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        PlanLibrary lib = library_from_json(library_section(j));
        std::cout << "ok: " << lib.all_ids().size() << " plans, max depth " << lib.max_depth()
                  << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitDetected;
    }
}

std::string join(const std::set<RoleId>& roles) {
    std::string out;
    for (const auto& r : roles) {
        if (!out.empty()) out += ";";
        out += r;
    }
    return out.empty() ? "-" : out;
}

int cmd_keyagents(const std::string& path, const std::string& format, bool risky_only) {
    nlohmann::json j;
    try {
        j = read_json_file(path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        PlanLibrary lib = library_from_json(library_section(j));
        TeamDefinition team = team_section(j);
        auto plans = lib.plans_at_depth(2);
        std::erase_if(plans, [&](const PlanId& p) { return !lib.node(p).team; });

        if (risky_only) {
            auto risky = risky_points(lib, team, plans);
            auto rep = is_observably_partitioned(lib, team, plans);
            if (format == "csv") {
                std::cout << "plan_a,plan_b\n";
                for (const auto& [a, b] : risky) std::cout << a << "," << b << "\n";
            } else {
                if (risky.empty())
                    std::cout << "no risky pairs; plan set is observably partitioned\n";
                else
                    for (const auto& [a, b] : risky) std::cout << a << " / " << b << "\n";
                std::cout << "observably partitioned: " << (rep.partitioned ? "yes" : "no")
                          << "\n";
            }
            return kExitOk;
        }

        auto keys = key_agents(lib, team, plans);
        if (format == "csv") {
            std::cout << "plan_a,plan_b,key_roles\n";
            for (const auto& [pair, roles] : keys)
                std::cout << pair.first << "," << pair.second << "," << join(roles) << "\n";
        } else {
            for (const auto& [pair, roles] : keys)
                std::cout << pair.first << " / " << pair.second << ": " << join(roles) << "\n";
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitDetected;
    }
}

std::string hyp_or_dash(const std::map<AgentId, PlanId>& m, const AgentId& a) {
    auto it = m.find(a);
    return it == m.end() ? "-" : it->second;
}

int cmd_permute(const std::string& path, const std::string& monitor, const std::string& policy,
                std::optional<std::uint64_t> seed, const std::string& format, bool parallel) {
    Scenario sc;
    try {
        sc = load_scenario(path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("cannot read file") != std::string::npos ? kExitUsage
                                                                                   : kExitDetected;
    }

    if (monitor != kAllMonitors) {
        bool known = false;
        for (const auto& m : sc.team.members) known = known || m.agent == monitor;
        if (!known) {
            std::cerr << "error: unknown monitor id '" << monitor << "'\n";
            return kExitUsage;
        }
    }

    RunMode mode;
    if (policy == "optimistic") mode = RunMode::Optimistic;
    else if (policy == "pessimistic") mode = RunMode::Pessimistic;
    else if (policy == "centralized") mode = RunMode::Centralized;
    else if (policy == "distributed") mode = RunMode::Distributed;
    else {
        std::cerr << "error: unknown policy '" << policy << "'\n";
        return kExitUsage;
    }

    TieBreak tie;
    if (seed) tie = TieBreak::seeded(*seed);

    std::vector<PermutationRun> runs;
    try {
        runs = run_permutations(sc, monitor, mode, tie, parallel);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDetected;
    }

    std::vector<AgentId> agents;
    for (const auto& m : sc.team.members) agents.push_back(m.agent);

    if (format == "csv") {
        std::cout << "case,monitor,policy";
        for (const auto& a : agents) std::cout << ",hyp_" << a;
        for (const auto& a : agents) std::cout << ",actual_" << a;
        std::cout << ",verdict,class,diagnosis,guarantee_void\n";
        for (const auto& r : runs) {
            std::cout << r.case_id << "," << r.monitor << "," << to_string(r.mode);
            for (const auto& a : agents) std::cout << "," << hyp_or_dash(r.hypothesized, a);
            for (const auto& a : agents) std::cout << "," << hyp_or_dash(r.actual, a);
            std::cout << "," << to_string(r.outcome) << ","
                      << (r.cls ? to_string(*r.cls) : "verify") << "," << to_string(r.diagnosis)
                      << "," << (r.guarantee_void ? "1" : "0") << "\n";
        }
    } else {
        std::cout << std::left << std::setw(5) << "case" << std::setw(9) << "monitor";
        for (const auto& a : agents) std::cout << std::setw(16) << ("hyp_" + a);
        std::cout << std::setw(18) << "verdict" << std::setw(8) << "class" << std::setw(10)
                  << "diagnosis" << "\n";
        for (const auto& r : runs) {
            std::cout << std::left << std::setw(5) << r.case_id << std::setw(9) << r.monitor;
            for (const auto& a : agents)
                std::cout << std::setw(16) << hyp_or_dash(r.hypothesized, a);
            std::cout << std::setw(18) << to_string(r.outcome) << std::setw(8)
                      << (r.cls ? to_string(*r.cls) : "verify") << std::setw(10)
                      << to_string(r.diagnosis);
            if (r.guarantee_void) std::cout << " (guarantee void)";
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_analyze(const std::string& path, const std::string& format) {
    Trace t;
    try {
        t = parse_trace_file(path);
    } catch (const TraceFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("cannot read file") != std::string::npos ? kExitUsage
                                                                                   : kExitDetected;
    }

    auto switches = detect_switches(t);
    Rational ata = average_time_to_agree(t);
    Rational agree = agreement_level(t);

    // Histogram of distinct plans per tick (1 = full agreement).
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& tick : t.ticks) {
        std::set<PlanId> distinct;
        for (const auto& [a, p] : tick) distinct.insert(p);
        ++histogram[distinct.size()];
    }

    std::ostringstream ata_s, agree_s;
    ata_s << std::fixed << std::setprecision(2) << ata.to_double();
    agree_s << std::fixed << std::setprecision(2) << agree.to_double();

    if (format == "csv") {
        std::cout << "switch,begin,end,length\n";
        for (std::size_t i = 0; i < switches.size(); ++i)
            std::cout << i + 1 << "," << switches[i].begin << "," << switches[i].end << ","
                      << switches[i].length() << "\n";
        std::cout << "metric,value\n";
        std::cout << "ticks," << t.tick_count() << "\n";
        std::cout << "switches," << switches.size() << "\n";
        std::cout << "ata," << ata_s.str() << "\n";
        std::cout << "agreement," << agree_s.str() << "\n";
        for (const auto& [k, v] : histogram)
            std::cout << "ticks_with_" << k << "_plans," << v << "\n";
    } else {
        std::cout << "ticks: " << t.tick_count() << ", agents: " << t.agents.size() << "\n";
        std::cout << "switches (" << switches.size() << "):\n";
        for (const auto& s : switches)
            std::cout << "  [" << s.begin << ", " << s.end << ") length " << s.length() << "\n";
        std::cout << "average time to agreement: " << ata_s.str() << "\n";
        std::cout << "agreement level: " << agree_s.str() << "\n";
        std::cout << "distinct-plans histogram:\n";
        for (const auto& [k, v] : histogram)
            std::cout << "  " << k << " plan(s): " << v << " tick(s)\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Team-coherence failure detection toolkit"};
    app.require_subcommand(1);

    std::string format = default_format();

    auto* validate = app.add_subcommand("validate", "Check a plan library file");
    std::string v_path;
    validate->add_option("file", v_path, "library JSON file")->required();

    auto* permute = app.add_subcommand("permute", "Run all scenario cases and print the results");
    std::string p_path, monitor = samon::kAllMonitors, policy = "optimistic";
    std::optional<std::uint64_t> seed;
    bool parallel = false;
    permute->add_option("file", p_path, "scenario JSON file")->required();
    permute->add_option("--monitor", monitor, "monitoring agent id, or 'all'");
    permute->add_option("--policy", policy, "optimistic|pessimistic|centralized|distributed");
    permute->add_option("--seed", seed, "random tie-break seed (omit for deterministic order)");
    permute->add_flag("--parallel", parallel, "run cases in parallel");
    permute->add_option("--format", format, "text|csv");

    auto* keyagents = app.add_subcommand("keyagents", "Pairwise key-role analysis");
    std::string k_path;
    keyagents->add_option("file", k_path, "library JSON file")->required();
    keyagents->add_option("--format", format, "text|csv");

    auto* risky = app.add_subcommand("risky", "Plan pairs with no key agent");
    std::string r_path;
    risky->add_option("file", r_path, "library JSON file")->required();
    risky->add_option("--format", format, "text|csv");

    auto* analyze = app.add_subcommand("analyze", "Off-line trace metrics");
    std::string a_path;
    analyze->add_option("file", a_path, "trace CSV file")->required();
    analyze->add_option("--format", format, "text|csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (format != "text" && format != "csv") {
        std::cerr << "error: unknown format '" << format << "'\n";
        return kExitUsage;
    }

    if (validate->parsed()) return cmd_validate(v_path);
    if (permute->parsed()) return cmd_permute(p_path, monitor, policy, seed, format, parallel);
    if (keyagents->parsed()) return cmd_keyagents(k_path, format, false);
    if (risky->parsed()) return cmd_keyagents(r_path, format, true);
    if (analyze->parsed()) return cmd_analyze(a_path, format);
    return kExitUsage;
}
