#include "layercake/chessboard.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace layercake {

Group Group::of_order(long long q) {
  if (q < 2) throw precondition_error("group order must be at least 2");
  long long p = 0;
  for (long long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself prime
  int k = 0;
  long long rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw precondition_error("group order is not a prime power");
  return Group(p, k, q);
}

long long Group::add(long long a, long long b) const {
  long long out = 0, place = 1;
  for (int d = 0; d < k_; ++d) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

long long Group::neg(long long a) const {
  long long out = 0, place = 1;
  for (int d = 0; d < k_; ++d) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

ChessboardPoint act(const Group& group, long long g, const ChessboardPoint& x) {
  size_t q = x.placement.row.size();
  ChessboardPoint out;
  out.placement.row.resize(q);
  out.coord.resize(q);
  for (size_t j = 0; j < q; ++j) {
    size_t target = size_t(group.add(g, (long long)j));
    out.placement.row[target] = x.placement.row[j];
    out.coord[target] = x.coord[j];
  }
  return out;
}

MultiDivision chessboard_decode(const ChessboardPoint& x, int layers, const Group& group) {
  const int q = int(x.placement.row.size());
  if (int(x.coord.size()) != q) throw precondition_error("coordinate count mismatch");
  if (layers > q) throw precondition_error("decode requires m <= q");
  {
    std::vector<int> rows = x.placement.row;
    std::sort(rows.begin(), rows.end());
    if (std::adjacent_find(rows.begin(), rows.end()) != rows.end() || rows.front() < 0 ||
        rows.back() >= 2 * q - 1)
      throw precondition_error("malformed rook placement");
  }
  Rational total;
  for (const auto& c : x.coord) {
    if (c.is_negative()) throw precondition_error("negative barycentric coordinate");
    total += c;
  }
  if (total != Rational(1)) throw precondition_error("barycentric coordinates must sum to 1");

  // rho[t] = column holding the t-th smallest row; piece t has length coord[rho[t]].
  std::vector<int> rho(static_cast<size_t>(q));
  std::iota(rho.begin(), rho.end(), 0);
  std::sort(rho.begin(), rho.end(),
            [&](int a, int b) { return x.placement.row[size_t(a)] < x.placement.row[size_t(b)]; });

  std::vector<Rational> cuts(static_cast<size_t>(q) + 1);
  for (int t = 0; t < q; ++t)
    cuts[size_t(t) + 1] = cuts[size_t(t)] + x.coord[size_t(rho[size_t(t)])];

  MultiDivision division;
  division.bundles.assign(size_t(q), LayeredPiece::empty(layers));
  std::vector<std::vector<Interval>> parts(size_t(q) * size_t(layers));
  for (int t = 0; t < q; ++t) {
    for (int l = 0; l < layers; ++l) {
      long long name = group.add((long long)rho[size_t(t)], (long long)l);
      parts[size_t(name) * size_t(layers) + size_t(l)].emplace_back(cuts[size_t(t)],
                                                                    cuts[size_t(t) + 1]);
    }
  }
  for (int b = 0; b < q; ++b)
    for (int l = 0; l < layers; ++l)
      division.bundles[size_t(b)].layers[size_t(l)] =
          Piece(std::move(parts[size_t(b) * size_t(layers) + size_t(l)]));
  return division;
}

std::vector<RookPlacement> all_placements(long long q) {
  std::vector<RookPlacement> out;
  std::vector<int> row(size_t(q), -1);
  std::vector<bool> used(size_t(2 * q - 1), false);
  auto rec = [&](auto&& self, int col) -> void {
    if (col == int(q)) {
      out.push_back(RookPlacement{row});
      return;
    }
    for (int r = 0; r < int(2 * q - 1); ++r) {
      if (used[size_t(r)]) continue;
      used[size_t(r)] = true;
      row[size_t(col)] = r;
      self(self, col + 1);
      used[size_t(r)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

// Weak compositions of r into q parts, starting at (r, 0, ..., 0).
struct CompositionIter {
  std::vector<long long> parts;

  CompositionIter(long long r, int q) : parts(size_t(q), 0) { parts.front() = r; }

  bool next() {
    int q = int(parts.size());
    if (q < 2 || parts.back() == std::accumulate(parts.begin(), parts.end(), 0LL)) return false;
    int i = q - 2;
    while (parts[size_t(i)] == 0) --i;
    long long tail = parts.back();
    parts[size_t(i)] -= 1;
    parts[size_t(q - 1)] = 0;
    parts[size_t(i + 1)] = tail + 1;
    return true;
  }
};

long long compositions_count(long long r, int q) {
  // C(r + q - 1, q - 1)
  unsigned __int128 num = 1, den = 1;
  for (int i = 1; i <= q - 1; ++i) {
    num *= (unsigned __int128)(r + i);
    den *= (unsigned __int128)i;
  }
  return (long long)(num / den);
}

struct FlowOutcome {
  long long deficit;  // q(n-1) - max flow, in scaled units
  std::vector<long long> col_flow;
  std::vector<std::vector<long long>> row_flow;
};

// Balance flow for one support pattern: every agent supplies q units, column
// capacity n-1 units. Full flow is exactly a fractional assignment with row
// sums 1 and column sums (n-1)/q supported on the preferred sets.
FlowOutcome balance_flow(const std::vector<uint32_t>& masks, int q, int agents) {
  const int s = 0, t = 1;
  auto agent_node = [&](int i) { return 2 + i; };
  auto col_node = [&](int j) { return 2 + agents + j; };
  MaxFlow flow(2 + agents + q);
  std::vector<std::vector<int>> edge(size_t(agents), std::vector<int>(size_t(q), -1));
  for (int i = 0; i < agents; ++i) flow.add_edge(s, agent_node(i), q);
  for (int i = 0; i < agents; ++i)
    for (int j = 0; j < q; ++j)
      if (masks[size_t(i)] >> j & 1)
        edge[size_t(i)][size_t(j)] = flow.add_edge(agent_node(i), col_node(j), q);
  std::vector<int> col_edge(static_cast<size_t>(q));
  for (int j = 0; j < q; ++j) col_edge[size_t(j)] = flow.add_edge(col_node(j), t, agents);

  long long value = flow.run(s, t);
  FlowOutcome out;
  out.deficit = (long long)q * agents - value;
  out.col_flow.resize(size_t(q));
  for (int j = 0; j < q; ++j) out.col_flow[size_t(j)] = flow.flow_on(col_edge[size_t(j)]);
  out.row_flow.assign(size_t(agents), std::vector<long long>(size_t(q), 0));
  for (int i = 0; i < agents; ++i)
    for (int j = 0; j < q; ++j)
      if (edge[size_t(i)][size_t(j)] >= 0)
        out.row_flow[size_t(i)][size_t(j)] = flow.flow_on(edge[size_t(i)][size_t(j)]);
  return out;
}

struct ScanBest {
  long long deficit = -1;  // -1 = nothing yet
  long long placement_idx = 0;
  long long point_idx = 0;
  std::vector<long long> coords_num;

  bool better_than(const ScanBest& other) const {
    if (other.deficit < 0) return deficit >= 0;
    if (deficit < 0) return false;
    if (deficit != other.deficit) return deficit < other.deficit;
    if (placement_idx != other.placement_idx) return placement_idx < other.placement_idx;
    return point_idx < other.point_idx;
  }
};

}  // namespace

ChessboardSearchResult grid_search_envy_free(const Instance& instance, long long q, long long r,
                                             const ChessboardSearchOptions& options) {
  Group group = Group::of_order(q);
  const int m = instance.layers;
  const int n = instance.agent_count();
  if (m > q) throw precondition_error("grid search requires m <= q");
  if (r < 1) throw precondition_error("grid resolution must be >= 1");
  const int birthday = instance.birthday_agent();

  std::vector<int> scanned_agents;
  for (int i = 0; i < n; ++i)
    if (i != birthday) scanned_agents.push_back(i);
  const int agents = int(scanned_agents.size());

  Rational k = lipschitz_bound(instance);
  Rational theta = options.theta.value_or(Rational(6) * k / Rational(r));

  const std::vector<RookPlacement> placements = all_placements(q);
  const long long total_placements = (long long)placements.size();

  auto masks_at = [&](const MultiDivision& division) {
    std::vector<uint32_t> masks(size_t(agents), 0);
    for (int a = 0; a < agents; ++a) {
      const auto& oracle = instance.agents[size_t(scanned_agents[size_t(a)])];
      std::vector<Rational> values(static_cast<size_t>(q));
      Rational best;
      for (int j = 0; j < int(q); ++j) {
        values[size_t(j)] = oracle->value(division.bundles[size_t(j)]);
        if (j == 0 || values[size_t(j)] > best) best = values[size_t(j)];
      }
      for (int j = 0; j < int(q); ++j)
        if (values[size_t(j)] + theta >= best) masks[size_t(a)] |= uint32_t(1) << j;
    }
    return masks;
  };

  using Memo = std::map<std::vector<uint32_t>, long long>;
  auto scan_placement = [&](long long pi, Memo& memo, ScanBest& best, bool early_exit) {
    CompositionIter it(r, int(q));
    long long point_idx = 0;
    do {
      long long deficit = 0;
      if (agents > 0) {
        ChessboardPoint x;
        x.placement = placements[size_t(pi)];
        x.coord.resize(size_t(q));
        for (int j = 0; j < int(q); ++j) x.coord[size_t(j)] = Rational(it.parts[size_t(j)], r);
        std::vector<uint32_t> key = masks_at(chessboard_decode(x, m, group));
        std::sort(key.begin(), key.end());
        auto found = memo.find(key);
        if (found != memo.end()) {
          deficit = found->second;
        } else {
          deficit = balance_flow(key, int(q), agents).deficit;
          memo.emplace(std::move(key), deficit);
        }
      }
      ScanBest cand{deficit, pi, point_idx, {}};
      if (cand.better_than(best)) {
        cand.coords_num = it.parts;
        best = std::move(cand);
        if (best.deficit == 0 && early_exit) return;
      }
      ++point_idx;
    } while (it.next());
  };

  ScanBest best;
#ifdef _OPENMP
  if (options.parallel) {
#pragma omp parallel
    {
      Memo memo;
      ScanBest local;
#pragma omp for schedule(static)
      for (long long pi = 0; pi < total_placements; ++pi)
        scan_placement(pi, memo, local, /*early_exit=*/false);
#pragma omp critical
      if (local.better_than(best)) best = local;
    }
  } else
#endif
  {
    Memo memo;
    for (long long pi = 0; pi < total_placements; ++pi) {
      if (!options.exhaustive && best.deficit == 0) break;
      scan_placement(pi, memo, best, !options.exhaustive);
    }
  }
  if (best.deficit < 0) throw invariant_violation("empty chessboard scan");

  ChessboardSearchResult result;
  result.theta = theta;
  result.placements_scanned = total_placements;
  result.points_scanned = compositions_count(r, int(q)) * total_placements;
  result.best.placement = placements[size_t(best.placement_idx)];
  result.best.coord.resize(size_t(q));
  for (int j = 0; j < int(q); ++j)
    result.best.coord[size_t(j)] = Rational(best.coords_num[size_t(j)], r);
  result.division = chessboard_decode(result.best, m, group);

  if (agents == 0) {
    result.balance = Rational(0);
    result.popularity.assign(size_t(q), Rational(0));
    for (int jstar = 0; jstar < int(q); ++jstar) {
      GroupAssignment pi;
      pi.birthday_choice = jstar;
      pi.bundle_of.assign(size_t(n), jstar);
      result.assignments.emplace(jstar, std::move(pi));
    }
    return result;
  }

  FlowOutcome outcome = balance_flow(masks_at(result.division), int(q), agents);
  result.popularity.resize(size_t(q));
  Rational worst;
  for (int j = 0; j < int(q); ++j) {
    result.popularity[size_t(j)] = Rational(outcome.col_flow[size_t(j)], q * (long long)agents);
    worst = Rational::max(worst, (result.popularity[size_t(j)] - Rational(1, q)).abs());
  }
  result.balance = worst;

  if (outcome.deficit == 0) {
    WeightMatrix wm;
    wm.a.assign(size_t(q), Rational(agents, q));
    wm.w.assign(size_t(agents), std::vector<Rational>(size_t(q)));
    for (int i = 0; i < agents; ++i)
      for (int j = 0; j < int(q); ++j)
        wm.w[size_t(i)][size_t(j)] = Rational(outcome.row_flow[size_t(i)][size_t(j)], q);
    for (int jstar = 0; jstar < int(q); ++jstar)
      result.assignments.emplace(jstar, tum_assign(wm, jstar, birthday));
  }
  return result;
}

EqualSizeDemoResult equal_size_demo(const Instance& one_layer, long long q, long long r,
                                    const ChessboardSearchOptions& options) {
  if (one_layer.layers != 1) throw precondition_error("equal-size demo needs a one-layer instance");

  // Stack the q blocks [l/q, (l+1)/q] into q layers, each rescaled to [0,1].
  Instance stacked;
  stacked.layers = int(q);
  stacked.birthday = one_layer.birthday;
  stacked.names = one_layer.names;
  for (const auto& agent : one_layer.agents) {
    const auto* additive = dynamic_cast<const AdditiveValuation*>(agent.get());
    if (!additive) throw precondition_error("equal-size demo needs additive valuations");
    std::vector<std::vector<DensitySegment>> density(static_cast<size_t>(q));
    for (long long l = 0; l < q; ++l) {
      Rational block_lo(l, q), block_hi(l + 1, q);
      for (const auto& seg : additive->density()[0]) {
        Rational lo = Rational::max(seg.from, block_lo);
        Rational hi = Rational::min(seg.to, block_hi);
        if (lo < hi)
          density[size_t(l)].push_back(DensitySegment{(lo - block_lo) * Rational(q),
                                                      (hi - block_lo) * Rational(q),
                                                      seg.value / Rational(q)});
      }
    }
    stacked.agents.push_back(std::make_shared<AdditiveValuation>(std::move(density)));
  }

  EqualSizeDemoResult out;
  out.search = grid_search_envy_free(stacked, q, r, options);
  out.assignments = out.search.assignments;

  out.division.bundles.assign(out.search.division.bundles.size(), LayeredPiece::empty(1));
  for (size_t b = 0; b < out.search.division.bundles.size(); ++b) {
    std::vector<Interval> intervals;
    std::vector<Rational> lengths;
    const auto& bundle = out.search.division.bundles[b];
    for (long long l = 0; l < q; ++l) {
      lengths.push_back(bundle.layers[size_t(l)].measure() / Rational(q));
      for (const auto& iv : bundle.layers[size_t(l)].intervals()) {
        intervals.emplace_back((Rational(l) + iv.lo) / Rational(q),
                               (Rational(l) + iv.hi) / Rational(q));
      }
    }
    std::sort(lengths.begin(), lengths.end());
    out.subinterval_lengths.push_back(std::move(lengths));
    out.division.bundles[b].layers[0] = Piece(std::move(intervals));
  }
  return out;
}

}  // namespace layercake
