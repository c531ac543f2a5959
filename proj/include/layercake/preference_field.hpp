#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "layercake/two_knife.hpp"
#include "layercake/valuation.hpp"

namespace layercake {

// Point of the preference simplex; coordinates sum to 1.
struct SimplexPoint {
  std::array<Rational, 3> z;
  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;
};

enum class Side { Left, Right, Center };

// The perturbed target line z1 = omega1 - delta inside the simplex, split at
// its midpoint omega^delta into a left and a right half.
//   two-layer mode: omega = (1/3,1/3,1/3), delta = 1/(6 n^2)
//   one-layer mode: omega_j = (k_j - 1/3)/(n-1), delta = 0; grid-vertex images
//     have coordinates in (1/(n-1)) Z, so none lies on the line, and a
//     crossing equal to omega itself is classified Center.
struct TargetGeometry {
  SimplexPoint omega;
  Rational delta;

  static TargetGeometry two_layer(int n);
  static TargetGeometry one_layer(int n, const std::array<long long, 3>& groups);

  Rational line_z1() const { return omega.z[0] - delta; }
  Rational split_z2() const { return omega.z[1] + delta / Rational(2); }
  SimplexPoint omega_delta() const {
    Rational half = delta / Rational(2);
    return SimplexPoint{{omega.z[0] - delta, omega.z[1] + half, omega.z[2] + half}};
  }
  Side classify(const SimplexPoint& on_line) const {
    if (on_line.z[1] < split_z2()) return Side::Left;
    if (on_line.z[1] > split_z2()) return Side::Right;
    return Side::Center;
  }
};

struct GridVertex {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const GridVertex&, const GridVertex&) = default;
};

// Exact crossing of the image of a grid edge [a,b] with the target line:
// the image point is (1-lambda) fbar(a) + lambda fbar(b).
struct EdgeCrossing {
  GridVertex a;
  GridVertex b;
  Rational lambda;
  SimplexPoint point;
  Side side;
};

struct LineCrossing {
  long long column = 0;    // x = column / N
  long long edge_row = 0;  // crossing on the vertical edge rows [edge_row, edge_row+1]
  EdgeCrossing crossing;
};

// Discrete preference map over the N x N grid of knife positions, aggregated
// over the non-birthday agents. Vertex colors are memoized; the map owns the
// oracle-call counter used for the complexity contract.
class PreferenceField {
 public:
  // The instance must already be in solver layer order (layer 0 on top).
  PreferenceField(const Instance& instance, long long grid_n, TargetGeometry geometry,
                  bool parallel_coloring = false);

  long long grid_n() const { return n_grid_; }
  const TargetGeometry& geometry() const { return geo_; }
  int colored_agent_count() const { return int(colored_agents_.size()); }
  const std::vector<int>& colored_agents() const { return colored_agents_; }

  Rational coord(long long k) const { return Rational(k, n_grid_); }

  // Colors of all non-birthday agents at a grid vertex, 1-based bundle index.
  const std::vector<uint8_t>& colors(GridVertex v) const;
  int color(int agent, GridVertex v) const;

  SimplexPoint fbar(GridVertex v) const;

  // Unique crossing of the basic line x = column/N with the target line,
  // located by binary search (z1 is nondecreasing in y and the endpoint
  // values straddle the line). Memoized per column.
  const LineCrossing& line_crossing(long long column) const;

  // Crossing of an arbitrary grid edge, if its endpoint images straddle the
  // line. Endpoints exactly on the line violate the perturbation invariant.
  std::optional<EdgeCrossing> edge_crossing(GridVertex a, GridVertex b) const;

  long long oracle_calls() const { return oracle_calls_; }

 private:
  SimplexPoint interpolate(const SimplexPoint& za, const SimplexPoint& zb,
                           const Rational& lambda) const;

  const Instance& instance_;
  long long n_grid_;
  TargetGeometry geo_;
  bool parallel_;
  std::vector<int> colored_agents_;
  mutable std::unordered_map<uint64_t, std::vector<uint8_t>> color_memo_;
  mutable std::unordered_map<long long, LineCrossing> line_memo_;
  mutable long long oracle_calls_ = 0;
};

// Crossings of a set of grid edges with the target line, in input order.
std::vector<EdgeCrossing> segment_crossings(const PreferenceField& field,
                                            const std::vector<std::pair<GridVertex, GridVertex>>& edges);

}  // namespace layercake
