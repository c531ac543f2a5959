#include <doctest.h>

#include "layercake/preference_field.hpp"

#include "helpers.hpp"

using lc::GridVertex;
using lc::PreferenceField;
using lc::Side;
using lc::TargetGeometry;

namespace {

// Brute-force color oracle: evaluate the three bundles directly and apply the
// published tie-breaking rule. Kept independent of PreferenceField::color.
int expected_color(const lc::ValuationPtr& agent, const lc::Rational& x, const lc::Rational& y) {
  lc::MultiDivision d = lc::two_knife_divide(x, y);
  std::array<lc::Rational, 3> v;
  std::array<bool, 3> zero{};
  for (int j = 0; j < 3; ++j) {
    v[size_t(j)] = agent->value(d.bundles[size_t(j)]);
    zero[size_t(j)] = d.bundles[size_t(j)].measure().is_zero();
  }
  lc::Rational best(-1);
  for (int j = 0; j < 3; ++j)
    if (!zero[size_t(j)] && v[size_t(j)] > best) best = v[size_t(j)];
  std::array<bool, 3> tied{};
  for (int j = 0; j < 3; ++j) tied[size_t(j)] = !zero[size_t(j)] && v[size_t(j)] == best;
  if (tied[0]) return 1;
  if (tied[1] && tied[2]) return x <= y ? 2 : 3;
  return tied[1] ? 2 : 3;
}

PreferenceField field_for(const lc::Instance& inst, long long n_grid) {
  return PreferenceField(inst, n_grid, TargetGeometry::two_layer(inst.agent_count()));
}

}  // namespace

TEST_CASE("colors at the top and bottom boundary rows") {
  // Agent putting all value on the top layer: colors 1 anywhere at y = 1.
  lc::Instance inst;
  inst.layers = 2;
  inst.agents = {additive({flat(1), {}}), additive({flat(1), flat(1)}), additive({flat(1), {}})};
  PreferenceField field = field_for(inst, 8);
  for (long long kx = 0; kx <= 8; ++kx) {
    CHECK(field.color(0, {kx, 8}) == 1);
    // Bundle 1 is zero-length at y = 0, so it is never chosen there.
    CHECK(field.color(0, {kx, 0}) != 1);
    CHECK(field.color(1, {kx, 0}) != 1);
  }
}

TEST_CASE("color of a uniform agent at the square center") {
  lc::Instance inst = uniform_instance(3, 2);
  PreferenceField field = field_for(inst, 2);
  int expect = expected_color(inst.agents[0], rat(1, 2), rat(1, 2));
  CHECK(field.color(0, {1, 1}) == expect);
  // The middle bundle holds top [1/2,1] plus bottom [0,1/2] and wins alone.
  CHECK(expect == 2);
}

TEST_CASE("colors match the brute-force oracle on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    lc::Instance inst = lc::generate_instance(4, 2, 3, 500 + trial);
    long long n_grid = 6;
    PreferenceField field = field_for(inst, n_grid);
    for (int probe = 0; probe < 15; ++probe) {
      long long kx = (long long)(rng() % 7), ky = (long long)(rng() % 7);
      for (int agent = 0; agent < 3; ++agent)
        CHECK(field.color(agent, {kx, ky}) ==
              expected_color(inst.agents[size_t(agent)], rat(kx, n_grid), rat(ky, n_grid)));
    }
  }
}

TEST_CASE("fbar averages the color indicator vectors") {
  // Three colored agents engineered to color (0,1): top-only -> 1, the agents
  // preferring the bottom remainder -> 2.
  lc::Instance inst;
  inst.layers = 2;
  inst.agents = {additive({flat(1), {}}), additive({{}, flat(1)}), additive({{}, flat(1)}),
                 additive({flat(1), flat(1)})};
  PreferenceField field = field_for(inst, 4);
  // At (4,4): A1 = full top, A2 = full bottom, A3 = zero-length.
  CHECK(field.color(0, {4, 4}) == 1);
  CHECK(field.color(1, {4, 4}) == 2);
  CHECK(field.color(2, {4, 4}) == 2);
  lc::SimplexPoint p = field.fbar({4, 4});
  CHECK(p.z[0] == rat(1, 3));
  CHECK(p.z[1] == rat(2, 3));
  CHECK(p.z[2] == rat(0));

  lc::Instance all_top;
  all_top.layers = 2;
  all_top.agents = {additive({flat(1), {}}), additive({flat(1), {}}), additive({flat(1), {}})};
  CHECK(field_for(all_top, 4).fbar({2, 4}).z[0] == rat(1));
}

TEST_CASE("no grid vertex image lies on the perturbed line") {
  // fbar_1 is a multiple of 1/(n-1) while the line sits at 1/3 - 1/(6 n^2);
  // moreover no vertex value falls strictly between the perturbed line and
  // z1 = 1/3, so above/below the perturbed line matches above/below 1/3.
  for (int n = 3; n <= 30; ++n) {
    lc::Rational target = rat(1, 3) - rat(1, 6LL * n * n);
    for (int l = 0; l <= n - 1; ++l) {
      lc::Rational v = rat(l, n - 1);
      CHECK(v != target);
      CHECK_FALSE((target < v && v < rat(1, 3)));
    }
  }
}

TEST_CASE("one-layer omega never collides with vertex images either") {
  for (int n = 3; n <= 12; ++n)
    for (long long k1 = 1; k1 <= n - 2; ++k1) {
      lc::Rational omega1 = (rat(k1) - rat(1, 3)) / rat(n - 1);
      for (int l = 0; l <= n - 1; ++l) CHECK(rat(l, n - 1) != omega1);
    }
}

TEST_CASE("classification of a crossing against omega^delta") {
  TargetGeometry geo = TargetGeometry::two_layer(3);
  CHECK(geo.delta == rat(1, 54));
  CHECK(geo.line_z1() == rat(1, 3) - rat(1, 54));
  // Edge images (1,0,0) -> (0,1,0): the crossing has z2 = 1 - z1.
  lc::Rational z1 = geo.line_z1();
  lc::SimplexPoint crossing{{z1, rat(1) - z1, rat(0)}};
  CHECK(geo.classify(crossing) == Side::Right);
  CHECK(geo.classify(geo.omega_delta()) == Side::Center);
}

TEST_CASE("vertical monotonicity of fbar_1 on every basic line") {
  for (int trial = 0; trial < 10; ++trial) {
    lc::Instance inst = lc::generate_instance(3 + trial % 3, 2, 3, 900 + trial);
    int top = lc::top_layer(inst);
    if (top == 1) {
      lc::Instance swapped = inst;
      swapped.agents.clear();
      for (const auto& a : inst.agents)
        swapped.agents.push_back(std::make_shared<lc::SwappedLayersValuation>(a));
      inst = swapped;
    }
    long long n_grid = 8;
    PreferenceField field = field_for(inst, n_grid);
    for (long long kx = 0; kx <= n_grid; ++kx)
      for (long long ky = 0; ky < n_grid; ++ky)
        CHECK(field.fbar({kx, ky}).z[0] <= field.fbar({kx, ky + 1}).z[0]);
  }
}

TEST_CASE("boundary symmetry between the two vertical sides") {
  for (int trial = 0; trial < 10; ++trial) {
    lc::Instance inst = lc::generate_instance(4, 2, 3, 1200 + trial);
    long long n_grid = 8;
    PreferenceField field = field_for(inst, n_grid);
    for (long long ky = 0; ky <= n_grid; ++ky) {
      lc::SimplexPoint left = field.fbar({0, ky});
      lc::SimplexPoint right = field.fbar({n_grid, ky});
      CHECK(left.z[0] == right.z[0]);
      CHECK(left.z[1] == right.z[2]);
      CHECK(left.z[2] == right.z[1]);
    }
  }
}

TEST_CASE("every basic square boundary crosses the line 0 or 2 times") {
  for (int trial = 0; trial < 6; ++trial) {
    lc::Instance inst = lc::generate_instance(4, 2, 3, 1400 + trial);
    if (lc::top_layer(inst) == 1) continue;  // monotonicity needs the top on top
    long long n_grid = 6;
    PreferenceField field = field_for(inst, n_grid);
    for (long long sx = 0; sx < n_grid; ++sx)
      for (long long sy = 0; sy < n_grid; ++sy) {
        std::vector<std::pair<GridVertex, GridVertex>> edges = {
            {{sx, sy}, {sx + 1, sy}},
            {{sx, sy + 1}, {sx + 1, sy + 1}},
            {{sx, sy}, {sx, sy + 1}},
            {{sx + 1, sy}, {sx + 1, sy + 1}},
        };
        auto crossings = lc::segment_crossings(field, edges);
        CHECK((crossings.size() == 0 || crossings.size() == 2));
        if (crossings.size() == 2)
          CHECK((crossings[0].a != crossings[1].a || crossings[0].b != crossings[1].b));
      }
  }
}

TEST_CASE("unique crossing per basic line, found by binary search") {
  for (int trial = 0; trial < 8; ++trial) {
    lc::Instance inst = lc::generate_instance(5, 2, 3, 1600 + trial);
    if (lc::top_layer(inst) == 1) continue;
    long long n_grid = 8;
    PreferenceField field = field_for(inst, n_grid);
    const lc::Rational target = field.geometry().line_z1();
    for (long long kx = 0; kx <= n_grid; ++kx) {
      // Exhaustive count of straddling vertical edges on the line.
      int straddles = 0;
      long long row = -1;
      for (long long ky = 0; ky < n_grid; ++ky) {
        bool below = field.fbar({kx, ky}).z[0] < target;
        bool below_next = field.fbar({kx, ky + 1}).z[0] < target;
        if (below != below_next) {
          ++straddles;
          row = ky;
        }
      }
      CHECK(straddles == 1);
      const lc::LineCrossing& found = field.line_crossing(kx);
      CHECK(found.edge_row == row);
      CHECK(found.crossing.point.z[0] == target);
      CHECK(found.crossing.point.z[0] + found.crossing.point.z[1] + found.crossing.point.z[2] ==
            rat(1));
    }
  }
}

TEST_CASE("mirror sides at the two vertical boundaries") {
  lc::Instance inst = uniform_instance(3, 2);
  PreferenceField field = field_for(inst, 6);
  const lc::LineCrossing& left = field.line_crossing(0);
  const lc::LineCrossing& right = field.line_crossing(6);
  CHECK(left.crossing.side != Side::Center);
  bool mirrored = (left.crossing.side == Side::Left && right.crossing.side == Side::Right) ||
                  (left.crossing.side == Side::Right && right.crossing.side == Side::Left);
  CHECK(mirrored);
}

TEST_CASE("fbar_1 vanishes on the bottom edge") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    lc::Instance inst = lc::generate_instance(4, 2, 2, 1800 + trial);
    PreferenceField field = field_for(inst, 5);
    for (long long kx = 0; kx <= 5; ++kx) CHECK(field.fbar({kx, 0}).z[0] == rat(0));
  }
}

TEST_CASE("two agents split between colors 2 and 3 average to (0,1/2,1/2)") {
  // At y = 0 bundle 1 is zero-length; one agent wants the bottom-left piece
  // (bundle 2), the other the bottom-right piece (bundle 3).
  lc::Instance inst;
  inst.layers = 2;
  inst.agents = {additive({{}, {lc::DensitySegment{rat(0), rat(1, 4), rat(4)}}}),
                 additive({{}, {lc::DensitySegment{rat(1, 2), rat(1), rat(2)}}}),
                 additive({flat(1), flat(1)})};
  PreferenceField field = field_for(inst, 4);
  CHECK(field.color(0, {1, 0}) == 2);
  CHECK(field.color(1, {1, 0}) == 3);
  lc::SimplexPoint p = field.fbar({1, 0});
  CHECK(p.z[0] == rat(0));
  CHECK(p.z[1] == rat(1, 2));
  CHECK(p.z[2] == rat(1, 2));
}

TEST_CASE("agents caring only about the very top slice cross at the topmost edge") {
  lc::Instance inst;
  inst.layers = 2;
  inst.agents = {additive({{lc::DensitySegment{rat(7, 8), rat(1), rat(4)}}, {}}),
                 additive({{lc::DensitySegment{rat(7, 8), rat(1), rat(4)}}, {}}),
                 additive({flat(1), flat(1)})};
  PreferenceField field = field_for(inst, 4);
  for (long long kx = 0; kx <= 4; ++kx) {
    for (long long ky = 0; ky < 4; ++ky) {
      CHECK(field.color(0, {kx, ky}) != 1);  // A1 = top[0, y] misses the mass
    }
    CHECK(field.color(0, {kx, 4}) == 1);
    CHECK(field.line_crossing(kx).edge_row == 3);  // topmost vertical edge
  }
}
