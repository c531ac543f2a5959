#pragma once

#include <vector>

#include "layercake/cake.hpp"

namespace layercake {

// Fractional preferences: w is (rows x q) with nonnegative entries, each row
// summing to 1 and column j summing to a[j]; the a[j] sum to the row count.
struct WeightMatrix {
  std::vector<std::vector<Rational>> w;
  std::vector<Rational> a;

  int rows() const { return int(w.size()); }
  int cols() const { return int(a.size()); }
};

void validate_weight_matrix(const WeightMatrix& wm);

// Integral assignment rounding w: row i goes to a column in its support,
// column j receives between floor(a_j) and ceil(a_j) rows, except the pinned
// column jstar which receives exactly floor(a_jstar) rows and additionally the
// birthday agent. The returned assignment covers rows()+1 agents, with the
// birthday agent at position birthday_index.
GroupAssignment tum_assign(const WeightMatrix& wm, int jstar, int birthday_index);

// Same rounding without a birthday agent or pinned column: every column gets
// between floor(a_j) and ceil(a_j) rows.
GroupAssignment assign_floor_ceil(const WeightMatrix& wm);

// Exhaustive enumeration of every assignment satisfying the support and
// column-count conditions of tum_assign; the test oracle. Guarded to small
// sizes (cols^rows <= 2^24).
std::vector<GroupAssignment> brute_force_assign(const WeightMatrix& wm, int jstar,
                                                int birthday_index);

// Minimal integer max-flow used by the assignment rounding and by the
// chessboard balance score. Deterministic: BFS augmentation over edges in
// insertion order.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);
  int add_edge(int from, int to, long long capacity);  // returns edge id
  long long run(int source, int sink);
  long long flow_on(int edge_id) const;

 private:
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, int>> edge_ref_;
  std::vector<long long> original_cap_;
};

}  // namespace layercake
