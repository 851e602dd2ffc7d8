#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "samon/diagnosis.hpp"
#include "samon/json_io.hpp"

using namespace samon;

namespace {

PlanLibrary bundled_library() {
    auto j = read_json_file(std::string(SAMON_DATA_DIR) + "/modsaf_library.json");
    return library_from_json(j.at("library"));
}

bool holds(const BeliefSet& bs, const std::string& name, bool positive) {
    auto it = bs.literals.find(name);
    return it != bs.literals.end() && it->second.first == positive;
}

}  // namespace

TEST_CASE("unterminated plans ascribe negated termination conditions") {
    auto lib = bundled_library();
    // An agent still flying the route believes none of the reasons to stop.
    auto b1 = ascribe_beliefs(lib, "A1", {"execute-mission", "fly-flight-plan", "fly-route"}, {});
    CHECK(b1.literals.size() == 3);
    CHECK(holds(b1, "WayPoint", false));
    CHECK(holds(b1, "Enemy", false));
    CHECK(holds(b1, "HaltOrder", false));
    for (const auto& [name, lit] : b1.literals)
        CHECK(lit.second == Provenance::NegatedTermination);
}

TEST_CASE("freshly selected plans also assert their preconditions") {
    auto lib = bundled_library();
    auto b2 = ascribe_beliefs(lib, "A2", {"execute-mission", "wait-at-point", "just-wait"},
                              {"wait-at-point", "just-wait"});
    CHECK(b2.literals.size() == 2);
    CHECK(holds(b2, "WayPoint", true));
    CHECK(b2.literals.at("WayPoint").second == Provenance::AssertedPrecondition);
    CHECK(holds(b2, "ScoutMessageReceived", false));

    // Same path, not fresh: only the termination belief remains.
    auto stale = ascribe_beliefs(lib, "A2", {"execute-mission", "wait-at-point", "just-wait"}, {});
    CHECK(stale.literals.size() == 1);
    CHECK(holds(stale, "ScoutMessageReceived", false));
}

TEST_CASE("the two-agent waypoint disagreement yields exactly one contradiction") {
    auto lib = bundled_library();
    auto b1 = ascribe_beliefs(lib, "A1", {"execute-mission", "fly-flight-plan", "fly-route"}, {});
    auto b2 = ascribe_beliefs(lib, "A2", {"execute-mission", "wait-at-point", "just-wait"},
                              {"wait-at-point", "just-wait"});
    auto d = check_consistency({b1, b2});
    CHECK(d.verified);
    REQUIRE(d.contradictions.size() == 1);
    CHECK(d.contradictions.begin()->first == "WayPoint");
    CHECK(d.contradictions.at("WayPoint") == std::set<AgentId>{"A1", "A2"});
}

TEST_CASE("consistent belief sets verify nothing") {
    auto lib = bundled_library();
    auto b1 = ascribe_beliefs(lib, "A1", {"execute-mission", "fly-flight-plan", "fly-route"}, {});
    auto b2 = ascribe_beliefs(lib, "A2", {"execute-mission", "fly-flight-plan", "fly-route"}, {});
    auto d = check_consistency({b1, b2});
    CHECK(!d.verified);
    CHECK(d.contradictions.empty());
}

TEST_CASE("diagnose_failure wires hypotheses through ascription") {
    auto lib = bundled_library();
    std::vector<AgentPathHypothesis> hyps{
        {"A1", {"execute-mission", "fly-flight-plan", "fly-route"}, {}},
        {"A2", {"execute-mission", "wait-at-point", "just-wait"}, {"wait-at-point"}},
        {"A3", {"execute-mission", "wait-at-point", "scout-forward"}, {"wait-at-point"}}};
    auto d = diagnose_failure(lib, hyps);
    CHECK(d.verified);
    CHECK(d.contradictions.count("WayPoint"));
    CHECK(d.contradictions.at("WayPoint").count("A1"));
}

TEST_CASE("invalid hypothesis paths are rejected") {
    auto lib = bundled_library();
    CHECK_THROWS_AS(ascribe_beliefs(lib, "A1", {"execute-mission", "just-wait"}, {}),
                    ConfigError);
    CHECK_THROWS_AS(ascribe_beliefs(lib, "A1", {"wait-at-point"}, {}), ConfigError);
}

TEST_CASE("internally contradictory ascription is an error, not a diagnosis") {
    // A freshly selected plan whose precondition its own parent's
    // termination negates: the agent cannot hold both.
    std::vector<PlanNode> nodes{
        {"root", true, {"p"}, {}, {std::vector<Literal>{{"X", true}}}, {{"r", {"a"}}}},
        {"p", false, {}, {std::vector<Literal>{{"X", true}}}, {}, {{"r", {"a"}}}}};
    PlanLibrary lib("root", nodes, {"r"});
    CHECK_THROWS_AS(ascribe_beliefs(lib, "A1", {"root", "p"}, {"p"}), AscriptionError);
    // Without the fresh-selection assertion there is no clash.
    auto bs = ascribe_beliefs(lib, "A1", {"root", "p"}, {});
    CHECK(holds(bs, "X", false));
}
