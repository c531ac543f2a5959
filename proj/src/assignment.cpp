#include "layercake/assignment.hpp"

#include <queue>

namespace layercake {

MaxFlow::MaxFlow(int node_count) : adj_(size_t(node_count)) {}

int MaxFlow::add_edge(int from, int to, long long capacity) {
  adj_[size_t(from)].push_back({to, capacity, int(adj_[size_t(to)].size())});
  adj_[size_t(to)].push_back({from, 0, int(adj_[size_t(from)].size()) - 1});
  edge_ref_.emplace_back(from, int(adj_[size_t(from)].size()) - 1);
  original_cap_.push_back(capacity);
  return int(edge_ref_.size()) - 1;
}

long long MaxFlow::run(int source, int sink) {
  long long total = 0;
  for (;;) {
    std::vector<std::pair<int, int>> parent(adj_.size(), {-1, -1});
    std::queue<int> queue;
    queue.push(source);
    parent[size_t(source)] = {source, -1};
    while (!queue.empty() && parent[size_t(sink)].first < 0) {
      int u = queue.front();
      queue.pop();
      for (size_t e = 0; e < adj_[size_t(u)].size(); ++e) {
        const Edge& edge = adj_[size_t(u)][e];
        if (edge.cap > 0 && parent[size_t(edge.to)].first < 0) {
          parent[size_t(edge.to)] = {u, int(e)};
          queue.push(edge.to);
        }
      }
    }
    if (parent[size_t(sink)].first < 0) break;
    long long push = -1;
    for (int v = sink; v != source;) {
      auto [u, e] = parent[size_t(v)];
      long long cap = adj_[size_t(u)][size_t(e)].cap;
      push = push < 0 ? cap : std::min(push, cap);
      v = u;
    }
    for (int v = sink; v != source;) {
      auto [u, e] = parent[size_t(v)];
      Edge& fwd = adj_[size_t(u)][size_t(e)];
      fwd.cap -= push;
      adj_[size_t(fwd.to)][size_t(fwd.rev)].cap += push;
      v = u;
    }
    total += push;
  }
  return total;
}

long long MaxFlow::flow_on(int edge_id) const {
  auto [from, idx] = edge_ref_[size_t(edge_id)];
  return original_cap_[size_t(edge_id)] - adj_[size_t(from)][size_t(idx)].cap;
}

void validate_weight_matrix(const WeightMatrix& wm) {
  const Rational one(1);
  Rational col_total;
  if (wm.a.empty()) throw precondition_error("weight matrix with no columns");
  for (const auto& aj : wm.a) {
    if (aj.is_negative()) throw precondition_error("negative column target");
    col_total += aj;
  }
  if (col_total != Rational(wm.rows()))
    throw precondition_error("column targets must sum to the row count");
  std::vector<Rational> col_sum(size_t(wm.cols()));
  for (const auto& row : wm.w) {
    if (int(row.size()) != wm.cols()) throw precondition_error("ragged weight matrix");
    Rational row_sum;
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_negative()) throw precondition_error("negative weight");
      row_sum += row[j];
      col_sum[j] += row[j];
    }
    if (row_sum != one) throw precondition_error("weight row does not sum to 1");
  }
  for (size_t j = 0; j < col_sum.size(); ++j)
    if (col_sum[j] != wm.a[j]) throw precondition_error("weight column does not sum to its target");
}

namespace {

// Feasible flow with per-column inflow bounds [lo_j, hi_j], every row pushed
// to exactly one supported column. Standard lower-bound reduction to plain
// max-flow with a circulation edge.
std::vector<int> route_rows(const WeightMatrix& wm, const std::vector<long long>& lo,
                            const std::vector<long long>& hi) {
  const int rows = wm.rows(), cols = wm.cols();
  // nodes: 0 = super source, 1 = super sink, 2 = s, 3 = t, then rows, then cols
  const int S = 0, T = 1, s = 2, t = 3;
  auto row_node = [&](int i) { return 4 + i; };
  auto col_node = [&](int j) { return 4 + rows + j; };
  MaxFlow flow(4 + rows + cols);
  std::vector<long long> excess(size_t(4 + rows + cols), 0);

  // s -> row: lower bound 1, upper bound 1.
  for (int i = 0; i < rows; ++i) {
    excess[size_t(row_node(i))] += 1;
    excess[size_t(s)] -= 1;
  }
  std::vector<std::vector<int>> row_edge(size_t(rows), std::vector<int>(size_t(cols), -1));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!wm.w[size_t(i)][size_t(j)].is_zero())
        row_edge[size_t(i)][size_t(j)] = flow.add_edge(row_node(i), col_node(j), 1);
  for (int j = 0; j < cols; ++j) {
    if (lo[size_t(j)] > hi[size_t(j)]) throw invariant_violation("column bounds inverted");
    flow.add_edge(col_node(j), t, hi[size_t(j)] - lo[size_t(j)]);
    excess[size_t(t)] += lo[size_t(j)];
    excess[size_t(col_node(j))] -= lo[size_t(j)];
  }
  flow.add_edge(t, s, rows);

  long long required = 0;
  for (int v = 0; v < 4 + rows + cols; ++v) {
    if (excess[size_t(v)] > 0) {
      flow.add_edge(S, v, excess[size_t(v)]);
      required += excess[size_t(v)];
    } else if (excess[size_t(v)] < 0) {
      flow.add_edge(v, T, -excess[size_t(v)]);
    }
  }
  if (flow.run(S, T) != required)
    throw invariant_violation("assignment network infeasible; weight matrix invariants broken");

  std::vector<int> routed(size_t(rows), -1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      int e = row_edge[size_t(i)][size_t(j)];
      if (e >= 0 && flow.flow_on(e) == 1) routed[size_t(i)] = j;
    }
  for (int r : routed)
    if (r < 0) throw invariant_violation("flow left a row unassigned");
  return routed;
}

GroupAssignment insert_birthday(const std::vector<int>& routed, int jstar, int birthday_index) {
  GroupAssignment out;
  out.birthday_choice = jstar;
  out.bundle_of.reserve(routed.size() + 1);
  for (size_t i = 0; i <= routed.size(); ++i) {
    if (int(i) == birthday_index) out.bundle_of.push_back(jstar);
    if (i < routed.size()) out.bundle_of.push_back(routed[i]);
  }
  return out;
}

}  // namespace

GroupAssignment tum_assign(const WeightMatrix& wm, int jstar, int birthday_index) {
  validate_weight_matrix(wm);
  if (jstar < 0 || jstar >= wm.cols()) throw precondition_error("jstar out of range");
  if (birthday_index < 0 || birthday_index > wm.rows())
    throw precondition_error("birthday index out of range");
  std::vector<long long> lo(size_t(wm.cols())), hi(size_t(wm.cols()));
  for (int j = 0; j < wm.cols(); ++j) {
    lo[size_t(j)] = (long long)wm.a[size_t(j)].floor();
    hi[size_t(j)] = (long long)wm.a[size_t(j)].ceil();
  }
  hi[size_t(jstar)] = lo[size_t(jstar)];
  return insert_birthday(route_rows(wm, lo, hi), jstar, birthday_index);
}

GroupAssignment assign_floor_ceil(const WeightMatrix& wm) {
  validate_weight_matrix(wm);
  std::vector<long long> lo(size_t(wm.cols())), hi(size_t(wm.cols()));
  for (int j = 0; j < wm.cols(); ++j) {
    lo[size_t(j)] = (long long)wm.a[size_t(j)].floor();
    hi[size_t(j)] = (long long)wm.a[size_t(j)].ceil();
  }
  GroupAssignment out;
  out.bundle_of = route_rows(wm, lo, hi);
  return out;
}

std::vector<GroupAssignment> brute_force_assign(const WeightMatrix& wm, int jstar,
                                                int birthday_index) {
  const int rows = wm.rows(), cols = wm.cols();
  double combos = 1;
  for (int i = 0; i < rows; ++i) combos *= cols;
  if (combos > double(1 << 24)) throw precondition_error("brute_force_assign: too large");

  std::vector<GroupAssignment> found;
  std::vector<int> choice(size_t(rows), 0);
  for (;;) {
    bool supported = true;
    for (int i = 0; i < rows && supported; ++i)
      supported = !wm.w[size_t(i)][size_t(choice[size_t(i)])].is_zero();
    if (supported) {
      std::vector<long long> count(size_t(cols), 0);
      for (int c : choice) count[size_t(c)]++;
      bool ok = count[size_t(jstar)] == (long long)wm.a[size_t(jstar)].floor();
      for (int j = 0; j < cols && ok; ++j) {
        if (j == jstar) continue;
        long long with_bday = count[size_t(j)];
        ok = with_bday >= (long long)wm.a[size_t(j)].floor() &&
             with_bday <= (long long)wm.a[size_t(j)].ceil();
      }
      if (ok) found.push_back(insert_birthday(choice, jstar, birthday_index));
    }
    int pos = rows - 1;
    while (pos >= 0 && choice[size_t(pos)] == cols - 1) choice[size_t(pos--)] = 0;
    if (pos < 0) break;
    choice[size_t(pos)]++;
  }
  return found;
}

}  // namespace layercake
