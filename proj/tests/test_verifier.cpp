#include <doctest.h>

#include "layercake/fptas_solver.hpp"
#include "layercake/verifier.hpp"

#include "helpers.hpp"

using lc::GroupAssignment;
using lc::LayeredPiece;
using lc::MultiDivision;
using lc::Piece;

namespace {

MultiDivision halves() {
  return MultiDivision({LayeredPiece({Piece::single(rat(0), rat(1, 2))}),
                        LayeredPiece({Piece::single(rat(1, 2), rat(1))})});
}

}  // namespace

TEST_CASE("max envy is zero when all bundles are equally valued") {
  lc::Instance inst = uniform_instance(2, 1);
  GroupAssignment pi{-1, {0, 1}};
  CHECK(lc::max_envy(inst, halves(), pi) == rat(0));
}

TEST_CASE("max envy reports the worst deficit with a witness") {
  // Both agents value only the left half; the right half is worthless.
  lc::Instance inst;
  inst.layers = 1;
  inst.agents = {additive({{lc::DensitySegment{rat(0), rat(1, 2), rat(2)}}}),
                 additive({{lc::DensitySegment{rat(0), rat(1, 2), rat(2)}}})};
  GroupAssignment pi{-1, {0, 1}};
  lc::EnvyWitness witness;
  CHECK(lc::max_envy(inst, halves(), pi, true, &witness) == rat(1));
  CHECK(witness.agent == 1);
  CHECK(witness.envied_bundle == 0);
}

TEST_CASE("exact envy-freeness implies proportionality") {
  lc::Instance inst = uniform_instance(2, 1);
  GroupAssignment pi{-1, {0, 1}};
  CHECK(lc::max_envy(inst, halves(), pi) == rat(0));
  lc::ProportionalCheck check = lc::check_proportional(inst, halves(), pi, 2, rat(0));
  CHECK(check.pass);
  CHECK(check.worst_margin == rat(0));
}

TEST_CASE("birthday check flags a mispinned assignment") {
  lc::Instance inst = uniform_instance(3, 2);
  lc::Solution sol = lc::solve_two_layer(inst, rat(1, 10));
  lc::BirthdayCheck good =
      lc::check_eps_envy_free_all_birthday(inst, sol.division, sol.assignments, rat(1, 10));
  CHECK(good.pass);

  auto broken = sol.assignments;
  broken.at(1).bundle_of[size_t(inst.birthday_agent())] = 0;
  lc::BirthdayCheck bad =
      lc::check_eps_envy_free_all_birthday(inst, sol.division, broken, rat(1, 10));
  CHECK_FALSE(bad.pass);
  CHECK(bad.failure == "birthday agent not pinned to its chosen bundle");
}

TEST_CASE("birthday check flags out-of-bound group sizes") {
  lc::Instance inst = uniform_instance(3, 2);
  lc::Solution sol = lc::solve_two_layer(inst, rat(1, 10));
  auto lopsided = sol.assignments;
  lopsided.at(0).bundle_of = {0, 0, 0};
  lc::BirthdayCheck bad =
      lc::check_eps_envy_free_all_birthday(inst, sol.division, lopsided, rat(1, 10));
  CHECK_FALSE(bad.pass);
}

TEST_CASE("proportional check flags lopsided sizes and short shares") {
  lc::Instance inst = uniform_instance(2, 1);
  GroupAssignment both_left{-1, {0, 0}};
  lc::ProportionalCheck sizes = lc::check_proportional(inst, halves(), both_left, 2, rat(1));
  CHECK_FALSE(sizes.sizes_ok);

  // Agent 1 gets the (worthless to her) right half with a tight epsilon.
  lc::Instance skew;
  skew.layers = 1;
  skew.agents = {additive(std::vector<std::vector<lc::DensitySegment>>{flat(1)}),
                 additive({{lc::DensitySegment{rat(0), rat(1, 2), rat(2)}}})};
  GroupAssignment pi{-1, {0, 1}};
  lc::ProportionalCheck short_share = lc::check_proportional(skew, halves(), pi, 2, rat(1, 10));
  CHECK_FALSE(short_share.pass);
  CHECK(short_share.worst_agent == 1);
  CHECK(short_share.worst_margin == rat(-1, 2));
}

namespace {

// Deliberately understates its Lipschitz constant.
struct LyingOracle : lc::Valuation {
  lc::Rational value(const lc::LayeredPiece& piece) const override {
    return rat(10) * piece.measure();
  }
  lc::Rational lipschitz() const override { return rat(1); }
  int layer_count() const override { return 1; }
};

}  // namespace

TEST_CASE("lipschitz spot check accepts honest oracles and catches liars") {
  lc::Instance honest = lc::generate_instance(3, 2, 3, 4242);
  CHECK(lc::spot_check_lipschitz(honest, 50, 1));

  lc::Instance lying;
  lying.layers = 1;
  lying.agents = {std::make_shared<LyingOracle>()};
  CHECK_FALSE(lc::spot_check_lipschitz(lying, 50, 1));
}

TEST_CASE("verifier output is invariant under bundle relabeling") {
  lc::Instance inst = lc::generate_instance(4, 2, 3, 777);
  lc::Solution sol = lc::solve_two_layer(inst, rat(1, 10));
  const GroupAssignment& pi = sol.assignments.at(0);
  lc::Rational base = lc::max_envy(inst, sol.division, pi, false);

  // Swap bundles 1 and 2 everywhere and relabel the assignment accordingly.
  MultiDivision permuted({sol.division.bundles[0], sol.division.bundles[2],
                          sol.division.bundles[1]});
  GroupAssignment relabeled = pi;
  for (int& b : relabeled.bundle_of) b = b == 1 ? 2 : b == 2 ? 1 : b;
  CHECK(lc::max_envy(inst, permuted, relabeled, false) == base);
}
