#include "layercake/fptas_solver.hpp"

#include <algorithm>
#include <optional>

namespace layercake {

long long med_index(long long i1, long long i2) {
  if (i2 - i1 < 2) throw precondition_error("med of an interval of width <= 1/N");
  return (i1 + i2 + 1) / 2;
}

namespace {

long long ceil_log2(long long n) {
  long long bits = 0;
  long long v = 1;
  while (v < n) {
    v <<= 1;
    ++bits;
  }
  return bits;
}

// Triangles of the basic square with bottom-left corner (sx, sy); the
// triangulation diagonal runs from the top-left to the bottom-right corner.
std::array<std::array<GridVertex, 3>, 2> square_triangles(long long sx, long long sy) {
  GridVertex bl{sx, sy}, br{sx + 1, sy}, tl{sx, sy + 1}, tr{sx + 1, sy + 1};
  return {{{tl, bl, br}, {tl, tr, br}}};
}

Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

std::optional<std::array<Rational, 3>> barycentric_preimage(const std::array<SimplexPoint, 3>& z,
                                                            const SimplexPoint& omega) {
  const Rational one(1);
  std::array<std::array<Rational, 3>, 3> m;
  for (int c = 0; c < 3; ++c) {
    m[0][size_t(c)] = z[size_t(c)].z[0];
    m[1][size_t(c)] = z[size_t(c)].z[1];
    m[2][size_t(c)] = one;
  }
  std::array<Rational, 3> rhs{omega.z[0], omega.z[1], one};
  Rational det = det3(m);
  if (!det.is_zero()) {
    std::array<Rational, 3> lambda;
    for (int c = 0; c < 3; ++c) {
      auto mc = m;
      for (int r = 0; r < 3; ++r) mc[size_t(r)][size_t(c)] = rhs[size_t(r)];
      lambda[size_t(c)] = det3(mc) / det;
    }
    for (const auto& l : lambda)
      if (l.is_negative()) return std::nullopt;
    return lambda;
  }
  // Degenerate image: look for omega on a vertex or an edge of the image.
  for (int u = 0; u < 3; ++u) {
    if (z[size_t(u)] == omega) {
      std::array<Rational, 3> lambda{};
      lambda[size_t(u)] = one;
      return lambda;
    }
  }
  for (int u = 0; u < 3; ++u) {
    for (int v = u + 1; v < 3; ++v) {
      const auto& zu = z[size_t(u)];
      const auto& zv = z[size_t(v)];
      int c = -1;
      for (int d = 0; d < 3; ++d)
        if (zu.z[size_t(d)] != zv.z[size_t(d)]) c = d;
      if (c < 0) continue;
      Rational t = (omega.z[size_t(c)] - zu.z[size_t(c)]) / (zv.z[size_t(c)] - zu.z[size_t(c)]);
      if (t.is_negative() || t > one) continue;
      bool consistent = true;
      for (int d = 0; d < 3 && consistent; ++d)
        consistent = zu.z[size_t(d)] + t * (zv.z[size_t(d)] - zu.z[size_t(d)]) == omega.z[size_t(d)];
      if (!consistent) continue;
      std::array<Rational, 3> lambda{};
      lambda[size_t(u)] = one - t;
      lambda[size_t(v)] = t;
      return lambda;
    }
  }
  return std::nullopt;
}

namespace {

struct LocateResult {
  long long square_x = 0;
  long long square_y = 0;
};

// Center crossings (image exactly omega^delta) end the search early: omega
// lies in the image of a triangle adjacent to the crossing edge. Returns the
// basic square to extract from.
LocateResult center_square(const PreferenceField& field, const EdgeCrossing& crossing) {
  long long n = field.grid_n();
  std::vector<std::pair<long long, long long>> candidates;
  if (crossing.a.x == crossing.b.x) {  // vertical edge
    long long row = std::min(crossing.a.y, crossing.b.y);
    if (crossing.a.x > 0) candidates.emplace_back(crossing.a.x - 1, row);
    if (crossing.a.x < n) candidates.emplace_back(crossing.a.x, row);
  } else {  // horizontal edge
    long long col = std::min(crossing.a.x, crossing.b.x);
    if (crossing.a.y > 0) candidates.emplace_back(col, crossing.a.y - 1);
    if (crossing.a.y < n) candidates.emplace_back(col, crossing.a.y);
  }
  for (auto [sx, sy] : candidates) {
    try {
      preimage_of_omega(field, sx, sy);
      return LocateResult{sx, sy};
    } catch (const invariant_violation&) {
    }
  }
  throw invariant_violation("center crossing without a capturing square");
}

// Stage 1 + stage 2 of the double binary search. Loop invariants are checked
// at runtime; a violation means an oracle broke monotonicity.
LocateResult locate_capture_square(const PreferenceField& field) {
  const long long n = field.grid_n();

  const LineCrossing* left = &field.line_crossing(0);
  const LineCrossing* right = &field.line_crossing(n);
  if (left->crossing.side == Side::Center) return center_square(field, left->crossing);
  if (right->crossing.side == Side::Center) return center_square(field, right->crossing);
  if (left->crossing.side == right->crossing.side)
    throw invariant_violation("boundary crossings on the same side of omega^delta");

  long long lo = 0, hi = n;
  while (hi - lo > 1) {
    long long mid = med_index(lo, hi);
    const LineCrossing* probe = &field.line_crossing(mid);
    if (probe->crossing.side == Side::Center) return center_square(field, probe->crossing);
    if (probe->crossing.side != left->crossing.side) {
      hi = mid;
      right = probe;
    } else {
      lo = mid;
      left = probe;
    }
  }

  const LineCrossing* on_left_side =
      left->crossing.side == Side::Left ? left : right;
  const LineCrossing* on_right_side =
      left->crossing.side == Side::Left ? right : left;
  long long row_l = on_left_side->edge_row;
  long long row_r = on_right_side->edge_row;
  if (row_l == row_r) return LocateResult{lo, row_l};

  long long y1 = std::min(row_l, row_r);
  long long y2 = std::max(row_l, row_r) + 1;

  // Six edges incident to the corner vertices of [lo, lo+1] x [ya, yb].
  auto corner_edges = [&](long long ya, long long yb) {
    std::vector<std::pair<GridVertex, GridVertex>> edges;
    edges.push_back({{lo, ya}, {lo + 1, ya}});
    edges.push_back({{lo, yb}, {lo + 1, yb}});
    edges.push_back({{lo, ya}, {lo, ya + 1}});
    edges.push_back({{lo + 1, ya}, {lo + 1, ya + 1}});
    if (yb - 1 > ya) {
      edges.push_back({{lo, yb - 1}, {lo, yb}});
      edges.push_back({{lo + 1, yb - 1}, {lo + 1, yb}});
    }
    return edges;
  };
  auto sides_of = [&](long long ya, long long yb, bool& has_left, bool& has_right,
                      std::optional<EdgeCrossing>& center) {
    has_left = has_right = false;
    center.reset();
    for (const auto& c : segment_crossings(field, corner_edges(ya, yb))) {
      if (c.side == Side::Left) has_left = true;
      if (c.side == Side::Right) has_right = true;
      if (c.side == Side::Center && !center) center = c;
    }
  };

  while (y2 - y1 > 1) {
    long long mid = med_index(y1, y2);
    bool has_left = false, has_right = false;
    std::optional<EdgeCrossing> center;
    sides_of(y1, mid, has_left, has_right, center);
    if (center) return center_square(field, *center);
    if (has_left && has_right) {
      y2 = mid;
    } else {
      y1 = mid;
      sides_of(y1, y2, has_left, has_right, center);
      if (center) return center_square(field, *center);
      if (!has_left || !has_right)
        throw invariant_violation("six-edge invariant lost in the vertical search");
    }
  }
  return LocateResult{lo, y1};
}

WeightMatrix weights_at_star(const PreferenceField& field, const StarPoint& star,
                             const std::vector<Rational>& column_targets) {
  WeightMatrix wm;
  wm.a = column_targets;
  wm.w.assign(size_t(field.colored_agent_count()), std::vector<Rational>(3));
  for (int t = 0; t < 3; ++t) {
    if (star.weight[size_t(t)].is_zero()) continue;
    const auto& colors = field.colors(star.vertex[size_t(t)]);
    for (size_t pos = 0; pos < colors.size(); ++pos)
      wm.w[pos][size_t(colors[pos] - 1)] += star.weight[size_t(t)];
  }
  return wm;
}

Solution solve_core(const Instance& working, const TargetGeometry& geo, long long grid_n,
                    const Rational& epsilon, const std::vector<Rational>& column_targets,
                    const SolverOptions& options) {
  PreferenceField field(working, grid_n, geo, options.parallel_coloring);
  LocateResult square = locate_capture_square(field);
  StarPoint star = preimage_of_omega(field, square.square_x, square.square_y);

  Solution solution;
  solution.grid_n = grid_n;
  solution.star = star;
  solution.anchor = GridVertex{square.square_x, square.square_y};
  solution.division = two_knife_divide(field.coord(square.square_x), field.coord(square.square_y));
  solution.epsilon = epsilon;
  solution.weights = weights_at_star(field, star, column_targets);

  int birthday = working.birthday_agent();
  for (int jstar = 0; jstar < 3; ++jstar)
    solution.assignments.emplace(jstar, tum_assign(solution.weights, jstar, birthday));

  solution.oracle_calls = field.oracle_calls();
  long long budget =
      kOracleBudgetFactor * working.agent_count() * (ceil_log2(grid_n) + 1) * (ceil_log2(grid_n) + 1);
  if (solution.oracle_calls > budget)
    throw invariant_violation("oracle-call budget exceeded");
  return solution;
}

long long grid_for(const Rational& lipschitz, const Rational& epsilon) {
  if (!(epsilon > Rational(0))) throw precondition_error("epsilon must be positive");
  Rational ratio = Rational(6) * lipschitz / epsilon;
  long long n = (long long)ratio.ceil();
  return std::max<long long>(n, 1);
}

}  // namespace

StarPoint preimage_of_omega(const PreferenceField& field, long long square_x, long long square_y) {
  const SimplexPoint omega = field.geometry().omega;
  for (const auto& tri : square_triangles(square_x, square_y)) {
    std::array<SimplexPoint, 3> z;
    for (int t = 0; t < 3; ++t) z[size_t(t)] = field.fbar(tri[size_t(t)]);
    auto lambda = barycentric_preimage(z, omega);
    if (!lambda) continue;
    StarPoint star;
    star.vertex = tri;
    star.weight = *lambda;
    Rational x, y;
    for (int t = 0; t < 3; ++t) {
      x += (*lambda)[size_t(t)] * field.coord(tri[size_t(t)].x);
      y += (*lambda)[size_t(t)] * field.coord(tri[size_t(t)].y);
    }
    star.x = x;
    star.y = y;
    return star;
  }
  throw invariant_violation("no triangle of the square maps onto omega");
}

Solution solve_two_layer(const Instance& instance, const Rational& epsilon,
                         const SolverOptions& options) {
  if (instance.layers != 2) throw precondition_error("solve_two_layer: need exactly 2 layers");
  if (instance.agent_count() < 3) throw precondition_error("solve_two_layer: need n >= 3");

  int top = top_layer(instance);
  Instance working = instance;
  if (top == 1) {
    working.agents.clear();
    for (const auto& agent : instance.agents)
      working.agents.push_back(std::make_shared<SwappedLayersValuation>(agent));
  }

  Rational k = lipschitz_bound(instance);
  long long grid_n = grid_for(k, epsilon);
  TargetGeometry geo = TargetGeometry::two_layer(instance.agent_count());

  int colored = instance.agent_count() - 1;
  std::vector<Rational> targets(3, Rational((long long)colored, 3));

  Solution solution = solve_core(working, geo, grid_n, epsilon, targets, options);
  if (top == 1)
    for (auto& bundle : solution.division.bundles)
      std::swap(bundle.layers[0], bundle.layers[1]);
  return solution;
}

Solution solve_one_layer(const Instance& instance, const Rational& epsilon,
                         const std::array<long long, 3>& groups, const SolverOptions& options) {
  if (instance.layers != 1) throw precondition_error("solve_one_layer: need exactly 1 layer");
  if (instance.agent_count() < 3) throw precondition_error("solve_one_layer: need n >= 3");

  Instance padded;
  padded.layers = 2;
  padded.birthday = instance.birthday;
  padded.names = instance.names;
  for (const auto& agent : instance.agents)
    padded.agents.push_back(std::make_shared<PaddedBottomValuation>(agent));

  Rational k = lipschitz_bound(instance);
  long long grid_n = grid_for(k, epsilon);
  TargetGeometry geo = TargetGeometry::one_layer(instance.agent_count(), groups);

  const Rational third(1, 3);
  std::vector<Rational> targets;
  for (long long kj : groups) targets.push_back(Rational(kj) - third);

  Solution solution = solve_core(padded, geo, grid_n, epsilon, targets, options);
  for (auto& bundle : solution.division.bundles) bundle.layers.resize(1);
  return solution;
}

}  // namespace layercake
