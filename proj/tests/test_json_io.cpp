#include <doctest.h>

#include "helpers.hpp"

TEST_CASE("instance documents round-trip exactly") {
  lc::Instance inst = lc::generate_instance(4, 2, 3, 12345);
  inst.birthday = 1;
  lc::Json doc = lc::emit_instance(inst);
  lc::Instance back = lc::parse_instance(doc);
  CHECK(back.layers == inst.layers);
  CHECK(back.birthday == 1);
  REQUIRE(back.agent_count() == inst.agent_count());
  for (int i = 0; i < inst.agent_count(); ++i) {
    const auto& a = dynamic_cast<const lc::AdditiveValuation&>(*inst.agents[size_t(i)]);
    const auto& b = dynamic_cast<const lc::AdditiveValuation&>(*back.agents[size_t(i)]);
    REQUIRE(a.density().size() == b.density().size());
    for (size_t l = 0; l < a.density().size(); ++l) {
      REQUIRE(a.density()[l].size() == b.density()[l].size());
      for (size_t s = 0; s < a.density()[l].size(); ++s) {
        CHECK(a.density()[l][s].from == b.density()[l][s].from);
        CHECK(a.density()[l][s].to == b.density()[l][s].to);
        CHECK(a.density()[l][s].value == b.density()[l][s].value);
      }
    }
  }
  CHECK(lc::emit_instance(back).dump() == doc.dump());
}

TEST_CASE("rational strings parse exactly, not as floats") {
  lc::Json doc = {{"layers", 1},
                  {"agents", lc::Json::array({lc::Json{
                       {"name", "a"},
                       {"density", lc::Json::array({lc::Json::array(
                                       {lc::Json{{"from", "0"}, {"to", "1/3"}, {"value", "2"}}})})},
                   }})}};
  lc::Instance inst = lc::parse_instance(doc);
  const auto& a = dynamic_cast<const lc::AdditiveValuation&>(*inst.agents[0]);
  CHECK(a.density()[0][0].to == rat(1, 3));
}

TEST_CASE("schema violations carry field diagnostics") {
  lc::Json negative = {{"layers", 1},
                       {"agents", lc::Json::array({lc::Json{
                            {"density", lc::Json::array({lc::Json::array({lc::Json{
                                            {"from", "0"}, {"to", "1"}, {"value", "-1"}}})})},
                        }})}};
  CHECK_THROWS_WITH_AS(lc::parse_instance(negative),
                       "agents[0].density[0][0]: negative density", lc::parse_error);

  lc::Json bad_layers = {{"layers", 2},
                         {"agents", lc::Json::array({lc::Json{
                              {"density", lc::Json::array({lc::Json::array()})},
                          }})}};
  CHECK_THROWS_AS(lc::parse_instance(bad_layers), lc::parse_error);

  lc::Json bad_birthday = {{"layers", 1},
                           {"birthday", 5},
                           {"agents", lc::Json::array({lc::Json{
                                {"density", lc::Json::array({lc::Json::array()})},
                            }})}};
  CHECK_THROWS_AS(lc::parse_instance(bad_birthday), lc::parse_error);
}

TEST_CASE("generation is deterministic in the seed") {
  lc::Instance a = lc::generate_instance(5, 2, 4, 99);
  lc::Instance b = lc::generate_instance(5, 2, 4, 99);
  CHECK(lc::emit_instance(a).dump() == lc::emit_instance(b).dump());
  lc::Instance c = lc::generate_instance(5, 2, 4, 100);
  CHECK(lc::emit_instance(a).dump() != lc::emit_instance(c).dump());
}

TEST_CASE("division and assignment documents round-trip") {
  lc::Instance inst = lc::generate_instance(4, 2, 2, 321);
  lc::Solution sol = lc::solve_two_layer(inst, rat(1, 10));
  lc::BirthdayCheck check =
      lc::check_eps_envy_free_all_birthday(inst, sol.division, sol.assignments, rat(1, 10));
  lc::Json doc = lc::emit_solution(inst, sol, "two-layer", check);

  lc::MultiDivision division = lc::parse_division(doc["division"], 2);
  REQUIRE(division.bundle_count() == 3);
  for (int b = 0; b < 3; ++b)
    CHECK(lc::sym_diff_distance(division.bundles[size_t(b)], sol.division.bundles[size_t(b)]) ==
          rat(0));

  auto assignments = lc::parse_assignments(doc["assignments"], inst.agent_count());
  REQUIRE(assignments.size() == 3);
  for (const auto& [jstar, pi] : assignments)
    CHECK(pi.bundle_of == sol.assignments.at(jstar).bundle_of);
}
