#include "layercake/preference_field.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace layercake {

TargetGeometry TargetGeometry::two_layer(int n) {
  if (n < 2) throw precondition_error("two-layer target needs n >= 2");
  Rational third(1, 3);
  return TargetGeometry{SimplexPoint{{third, third, third}}, Rational(1, 6LL * n * n)};
}

TargetGeometry TargetGeometry::one_layer(int n, const std::array<long long, 3>& groups) {
  long long total = 0;
  for (long long k : groups) {
    if (k < 1) throw precondition_error("group sizes must be positive");
    total += k;
  }
  if (total != n) throw precondition_error("group sizes must sum to the agent count");
  SimplexPoint omega;
  Rational third(1, 3);
  for (int j = 0; j < 3; ++j)
    omega.z[size_t(j)] = (Rational(groups[size_t(j)]) - third) / Rational(n - 1);
  return TargetGeometry{omega, Rational(0)};
}

PreferenceField::PreferenceField(const Instance& instance, long long grid_n,
                                 TargetGeometry geometry, bool parallel_coloring)
    : instance_(instance), n_grid_(grid_n), geo_(geometry), parallel_(parallel_coloring) {
  if (grid_n < 1) throw precondition_error("grid resolution must be >= 1");
  if (instance.layers != 2) throw precondition_error("preference field expects a 2-layer instance");
  int birthday = instance.birthday_agent();
  for (int i = 0; i < instance.agent_count(); ++i)
    if (i != birthday) colored_agents_.push_back(i);
  if (colored_agents_.empty()) throw precondition_error("no non-birthday agents to color");
}

namespace {

// Tie-breaking rule: a zero-length bundle is never chosen; a tie involving
// bundle 1 resolves to 1; a tie between 2 and 3 only resolves to 2 iff x <= y.
uint8_t pick_color(const std::array<Rational, 3>& values, const std::array<bool, 3>& zero_length,
                   bool x_le_y) {
  int best = -1;
  for (int j = 0; j < 3; ++j) {
    if (zero_length[size_t(j)]) continue;
    if (best < 0 || values[size_t(j)] > values[size_t(best)]) best = j;
  }
  if (best < 0) throw invariant_violation("all bundles zero-length");
  std::array<bool, 3> tied{};
  for (int j = 0; j < 3; ++j)
    tied[size_t(j)] = !zero_length[size_t(j)] && values[size_t(j)] == values[size_t(best)];
  if (tied[0]) return 1;
  if (tied[1] && tied[2]) return x_le_y ? 2 : 3;
  return tied[1] ? 2 : 3;
}

}  // namespace

const std::vector<uint8_t>& PreferenceField::colors(GridVertex v) const {
  uint64_t key = uint64_t(v.x) * uint64_t(n_grid_ + 1) + uint64_t(v.y);
  auto it = color_memo_.find(key);
  if (it != color_memo_.end()) return it->second;

  Rational x = coord(v.x);
  Rational y = coord(v.y);
  MultiDivision division = two_knife_divide(x, y);
  std::array<bool, 3> zero_length{};
  for (int j = 0; j < 3; ++j)
    zero_length[size_t(j)] = division.bundles[size_t(j)].measure().is_zero();
  bool x_le_y = x <= y;

  std::vector<uint8_t> out(colored_agents_.size());
  auto color_one = [&](size_t pos) {
    const auto& oracle = instance_.agents[size_t(colored_agents_[pos])];
    std::array<Rational, 3> values;
    for (int j = 0; j < 3; ++j) values[size_t(j)] = oracle->value(division.bundles[size_t(j)]);
    out[pos] = pick_color(values, zero_length, x_le_y);
  };
#ifdef _OPENMP
  if (parallel_ && colored_agents_.size() > 1) {
#pragma omp parallel for schedule(static)
    for (size_t pos = 0; pos < colored_agents_.size(); ++pos) color_one(pos);
  } else {
    for (size_t pos = 0; pos < colored_agents_.size(); ++pos) color_one(pos);
  }
#else
  for (size_t pos = 0; pos < colored_agents_.size(); ++pos) color_one(pos);
#endif
  oracle_calls_ += 3 * static_cast<long long>(colored_agents_.size());
  return color_memo_.emplace(key, std::move(out)).first->second;
}

int PreferenceField::color(int agent, GridVertex v) const {
  const auto& all = colors(v);
  for (size_t pos = 0; pos < colored_agents_.size(); ++pos)
    if (colored_agents_[pos] == agent) return all[pos];
  throw precondition_error("color: agent is the birthday agent or out of range");
}

SimplexPoint PreferenceField::fbar(GridVertex v) const {
  const auto& cols = colors(v);
  std::array<long long, 3> counts{};
  for (uint8_t c : cols) counts[size_t(c - 1)]++;
  auto denom = static_cast<long long>(cols.size());
  SimplexPoint p;
  for (int j = 0; j < 3; ++j) p.z[size_t(j)] = Rational(counts[size_t(j)], denom);
  return p;
}

SimplexPoint PreferenceField::interpolate(const SimplexPoint& za, const SimplexPoint& zb,
                                          const Rational& lambda) const {
  SimplexPoint p;
  for (int j = 0; j < 3; ++j)
    p.z[size_t(j)] = za.z[size_t(j)] + lambda * (zb.z[size_t(j)] - za.z[size_t(j)]);
  return p;
}

const LineCrossing& PreferenceField::line_crossing(long long column) const {
  auto it = line_memo_.find(column);
  if (it != line_memo_.end()) return it->second;

  const Rational target = geo_.line_z1();
  Rational z_bottom = fbar({column, 0}).z[0];
  Rational z_top = fbar({column, n_grid_}).z[0];
  if (z_bottom >= target || z_top <= target)
    throw invariant_violation("basic line does not straddle the target line");

  long long lo = 0, hi = n_grid_;
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    Rational z1 = fbar({column, mid}).z[0];
    if (z1 == target) throw invariant_violation("grid vertex image on the target line");
    (z1 < target ? lo : hi) = mid;
  }

  auto cross = edge_crossing({column, lo}, {column, hi});
  if (!cross) throw invariant_violation("crossing edge lost its sign change");
  LineCrossing result{column, lo, *cross};
  return line_memo_.emplace(column, std::move(result)).first->second;
}

std::optional<EdgeCrossing> PreferenceField::edge_crossing(GridVertex a, GridVertex b) const {
  const Rational target = geo_.line_z1();
  SimplexPoint za = fbar(a);
  SimplexPoint zb = fbar(b);
  if (za.z[0] == target || zb.z[0] == target)
    throw invariant_violation("grid vertex image on the target line");
  bool a_below = za.z[0] < target;
  bool b_below = zb.z[0] < target;
  if (a_below == b_below) return std::nullopt;
  Rational lambda = (target - za.z[0]) / (zb.z[0] - za.z[0]);
  SimplexPoint p = interpolate(za, zb, lambda);
  return EdgeCrossing{a, b, lambda, p, geo_.classify(p)};
}

std::vector<EdgeCrossing> segment_crossings(
    const PreferenceField& field, const std::vector<std::pair<GridVertex, GridVertex>>& edges) {
  std::vector<EdgeCrossing> out;
  for (const auto& [a, b] : edges) {
    auto c = field.edge_crossing(a, b);
    if (c) out.push_back(*c);
  }
  return out;
}

}  // namespace layercake
