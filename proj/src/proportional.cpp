#include "layercake/proportional.hpp"

#include <algorithm>
#include <map>

namespace layercake {

MergePlan make_merge_plan(int layers, int qprime) {
  if (layers < 1 || qprime < 1) throw precondition_error("merge plan needs positive sizes");
  MergePlan plan;
  plan.qprime = qprime;
  int base = layers / qprime, rem = layers % qprime;
  for (int i = 0; i < qprime; ++i) plan.counts.push_back(base + (i < rem ? 1 : 0));
  return plan;
}

namespace {

const AdditiveValuation& as_additive(const ValuationPtr& v) {
  const auto* additive = dynamic_cast<const AdditiveValuation*>(v.get());
  if (!additive) throw precondition_error("proportional division requires additive valuations");
  return *additive;
}

// Sum of step densities over a set of layers, emitted as non-overlapping
// segments of positive value.
std::vector<DensitySegment> sum_layers(const std::vector<std::vector<DensitySegment>>& density,
                                       int from_layer, int count) {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (int l = from_layer; l < from_layer + count; ++l)
    for (const auto& seg : density[size_t(l)]) {
      cuts.push_back(seg.from);
      cuts.push_back(seg.to);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensitySegment> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
    Rational total;
    for (int l = from_layer; l < from_layer + count; ++l)
      for (const auto& seg : density[size_t(l)])
        if (seg.from <= mid && mid <= seg.to) total += seg.value;
    if (!total.is_zero()) out.push_back(DensitySegment{cuts[i], cuts[i + 1], total});
  }
  return out;
}

}  // namespace

Instance merge_instance(const Instance& instance, const MergePlan& plan) {
  Instance merged;
  merged.layers = plan.qprime;
  merged.birthday = instance.birthday;
  merged.names = instance.names;
  for (const auto& agent : instance.agents) {
    const auto& additive = as_additive(agent);
    std::vector<std::vector<DensitySegment>> density(size_t(plan.qprime));
    int offset = 0;
    for (int l = 0; l < plan.qprime; ++l) {
      density[size_t(l)] = sum_layers(additive.density(), offset, plan.counts[size_t(l)]);
      offset += plan.counts[size_t(l)];
    }
    merged.agents.push_back(std::make_shared<AdditiveValuation>(std::move(density)));
  }
  return merged;
}

TwoGroupSolution solve_two_group_long_knife(const Instance& instance, const Rational& epsilon,
                                            const SolverOptions&) {
  if (instance.layers != 2) throw precondition_error("long-knife split expects 2 layers");
  const int n = instance.agent_count();
  if (n < 1) throw precondition_error("long-knife split needs at least one agent");
  if (!(epsilon > Rational(0))) throw precondition_error("epsilon must be positive");

  Rational k = lipschitz_bound(instance);
  long long grid_n = std::max<long long>(1, (long long)(Rational(4) * k / epsilon).ceil());
  const Rational half(1, 2);

  auto bundles_at = [&](const Rational& x) {
    LayeredPiece b0({Piece::single(Rational(0), x), Piece::single(x, Rational(1))});
    LayeredPiece b1({Piece::single(x, Rational(1)), Piece::single(Rational(0), x)});
    return MultiDivision({b0, b1});
  };

  std::map<long long, std::vector<uint8_t>> color_memo;
  auto colors = [&](long long kx) -> const std::vector<uint8_t>& {
    auto it = color_memo.find(kx);
    if (it != color_memo.end()) return it->second;
    Rational x(kx, grid_n);
    MultiDivision division = bundles_at(x);
    std::vector<uint8_t> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Rational v0 = instance.agents[size_t(i)]->value(division.bundles[0]);
      Rational v1 = instance.agents[size_t(i)]->value(division.bundles[1]);
      out[size_t(i)] = v0 > v1 ? 0 : v1 > v0 ? 1 : (x <= half ? 0 : 1);
    }
    return color_memo.emplace(kx, std::move(out)).first->second;
  };
  auto fbar1 = [&](long long kx) {
    const auto& c = colors(kx);
    long long count = (long long)std::count(c.begin(), c.end(), uint8_t(0));
    return Rational(count, n);
  };

  std::optional<long long> exact_vertex;
  long long edge_lo = 0;
  Rational z_lo = fbar1(0), z_hi = fbar1(grid_n);
  if (z_lo == half) {
    exact_vertex = 0;
  } else if (z_hi == half) {
    exact_vertex = grid_n;
  } else {
    if ((z_lo < half) == (z_hi < half))
      throw invariant_violation("long-knife boundary identity broken: no straddle");
    long long lo = 0, hi = grid_n;
    while (hi - lo > 1) {
      long long mid = lo + (hi - lo) / 2;
      Rational zm = fbar1(mid);
      if (zm == half) {
        exact_vertex = mid;
        break;
      }
      if ((zm < half) == (z_lo < half)) {
        lo = mid;
        z_lo = zm;
      } else {
        hi = mid;
        z_hi = zm;
      }
    }
    edge_lo = lo;
  }

  TwoGroupSolution out;
  WeightMatrix wm;
  wm.a.assign(2, Rational(n, 2));
  wm.w.assign(size_t(n), std::vector<Rational>(2));
  long long anchor;
  if (exact_vertex) {
    anchor = *exact_vertex;
    out.star_x = Rational(anchor, grid_n);
    const auto& c = colors(anchor);
    for (int i = 0; i < n; ++i) wm.w[size_t(i)][c[size_t(i)]] = Rational(1);
  } else {
    Rational lambda = (half - z_lo) / (z_hi - z_lo);
    out.star_x = (Rational(edge_lo) + lambda) / Rational(grid_n);
    const auto& c_lo = colors(edge_lo);
    const auto& c_hi = colors(edge_lo + 1);
    for (int i = 0; i < n; ++i) {
      wm.w[size_t(i)][c_lo[size_t(i)]] += Rational(1) - lambda;
      wm.w[size_t(i)][c_hi[size_t(i)]] += lambda;
    }
    anchor = lambda <= half ? edge_lo : edge_lo + 1;
  }
  out.weights = wm;
  out.assignment = assign_floor_ceil(wm);
  out.division = bundles_at(Rational(anchor, grid_n));
  return out;
}

namespace {

struct Block {
  int orig_layer;  // -1 = padding
  Interval orig;
  Rational lo, hi;  // span in the cake's own coordinates
};

struct Cake {
  std::vector<std::vector<Block>> layers;
  int layer_count() const { return int(layers.size()); }
};

using AgentDensity = std::vector<std::vector<DensitySegment>>;  // per layer

Cake root_cake(int layers) {
  Cake cake;
  for (int l = 0; l < layers; ++l)
    cake.layers.push_back({Block{l, Interval(Rational(0), Rational(1)), Rational(0), Rational(1)}});
  return cake;
}

Instance instance_on(const std::vector<AgentDensity>& densities, int layers) {
  Instance out;
  out.layers = layers;
  for (const auto& d : densities) out.agents.push_back(std::make_shared<AdditiveValuation>(d));
  return out;
}

// One piece per merged layer describing what bundle jp receives.
using MergedPieces = std::vector<Piece>;

struct ChildCake {
  Cake cake;
  std::vector<AgentDensity> densities;
};

// Step 3: concatenate the allocated pieces into a child cake of max(counts)
// layers, padding short merged layers so every child layer has the same block
// offsets, then rescale to [0,1].
ChildCake concatenate(const Cake& cake, const std::vector<AgentDensity>& densities,
                      const MergePlan& plan, const MergedPieces& allocation) {
  const int m_child = *std::max_element(plan.counts.begin(), plan.counts.end());
  ChildCake child;
  child.cake.layers.assign(size_t(m_child), {});
  child.densities.assign(densities.size(), AgentDensity(size_t(m_child)));

  std::vector<int> offset(plan.counts.size() + 1, 0);
  for (size_t lp = 0; lp < plan.counts.size(); ++lp)
    offset[lp + 1] = offset[lp] + plan.counts[lp];

  for (int t = 0; t < m_child; ++t) {
    Rational pos(0);
    for (size_t lp = 0; lp < plan.counts.size(); ++lp) {
      for (const auto& iv : allocation[lp].intervals()) {
        Rational len = iv.length();
        if (len.is_zero()) continue;
        if (t < plan.counts[lp]) {
          int src = offset[lp] + t;
          for (const auto& block : cake.layers[size_t(src)]) {
            Rational lo = Rational::max(iv.lo, block.lo);
            Rational hi = Rational::min(iv.hi, block.hi);
            if (!(lo < hi)) continue;
            Rational child_lo = pos + (lo - iv.lo);
            Rational child_hi = pos + (hi - iv.lo);
            if (block.orig_layer < 0) {
              child.cake.layers[size_t(t)].push_back(
                  Block{-1, block.orig, child_lo, child_hi});
            } else {
              Rational scale = (block.orig.hi - block.orig.lo) / (block.hi - block.lo);
              Interval orig(block.orig.lo + (lo - block.lo) * scale,
                            block.orig.lo + (hi - block.lo) * scale);
              child.cake.layers[size_t(t)].push_back(Block{block.orig_layer, orig, child_lo, child_hi});
            }
          }
          for (size_t a = 0; a < densities.size(); ++a) {
            for (const auto& seg : densities[a][size_t(src)]) {
              Rational lo = Rational::max(iv.lo, seg.from);
              Rational hi = Rational::min(iv.hi, seg.to);
              if (!(lo < hi)) continue;
              child.densities[a][size_t(t)].push_back(
                  DensitySegment{pos + (lo - iv.lo), pos + (hi - iv.lo), seg.value});
            }
          }
        } else {
          child.cake.layers[size_t(t)].push_back(
              Block{-1, Interval(Rational(0), Rational(0)), pos, pos + len});
        }
        pos += len;
      }
    }
  }

  // Total physical length; identical for every child layer by construction.
  Rational total(0);
  for (size_t lp = 0; lp < plan.counts.size(); ++lp) total += allocation[lp].measure();
  if (total.is_zero()) {
    child.cake.layers.clear();
    for (auto& d : child.densities) d.clear();
    return child;
  }
  for (auto& layer : child.cake.layers)
    for (auto& block : layer) {
      block.lo /= total;
      block.hi /= total;
    }
  for (auto& agent : child.densities)
    for (auto& layer : agent)
      for (auto& seg : layer) {
        seg.from /= total;
        seg.to /= total;
        seg.value *= total;
      }

  // Drop layers that carry no real geometry; they have nothing to allocate.
  std::vector<size_t> keep;
  for (size_t t = 0; t < child.cake.layers.size(); ++t)
    for (const auto& block : child.cake.layers[t])
      if (block.orig_layer >= 0 && block.lo < block.hi) {
        keep.push_back(t);
        break;
      }
  Cake pruned;
  std::vector<AgentDensity> pruned_density(child.densities.size());
  for (size_t t : keep) {
    pruned.layers.push_back(std::move(child.cake.layers[t]));
    for (size_t a = 0; a < child.densities.size(); ++a)
      pruned_density[a].push_back(std::move(child.densities[a][t]));
  }
  child.cake = std::move(pruned);
  child.densities = std::move(pruned_density);
  return child;
}

LayeredPiece cake_as_original_piece(const Cake& cake, int original_layers) {
  std::vector<std::vector<Interval>> per_layer(static_cast<size_t>(original_layers));
  for (const auto& layer : cake.layers)
    for (const auto& block : layer)
      if (block.orig_layer >= 0) per_layer[size_t(block.orig_layer)].push_back(block.orig);
  LayeredPiece out;
  for (auto& ivs : per_layer) out.layers.push_back(Piece(std::move(ivs)));
  return out;
}

struct RecursionContext {
  int original_layers;
  Rational eps_level;
  const SolverOptions* options;
  std::vector<LayeredPiece> bundles;
  std::vector<int> assignment;  // per original agent
};

void solve_recursive(RecursionContext& ctx, const Cake& cake,
                     const std::vector<AgentDensity>& densities, const std::vector<int>& scope,
                     long long q) {
  if (q == 1) {
    int bundle_index = int(ctx.bundles.size());
    ctx.bundles.push_back(cake_as_original_piece(cake, ctx.original_layers));
    for (int agent : scope) ctx.assignment[size_t(agent)] = bundle_index;
    return;
  }

  const int m_cur = cake.layer_count();
  if (m_cur == 0) {
    // Nothing left to divide; empty bundles, agents spread evenly.
    for (long long b = 0; b < q; ++b)
      ctx.bundles.push_back(LayeredPiece::empty(ctx.original_layers));
    int base = int(ctx.bundles.size()) - int(q);
    for (size_t i = 0; i < scope.size(); ++i)
      ctx.assignment[size_t(scope[i])] = base + int(i % size_t(q));
    return;
  }

  const int qprime = q % 3 == 0 ? 3 : 2;
  const long long q_rest = q / qprime;
  MergePlan plan = make_merge_plan(m_cur, qprime);

  std::vector<MergedPieces> allocation(static_cast<size_t>(qprime), MergedPieces(static_cast<size_t>(qprime)));
  std::vector<int> group_of(scope.size(), -1);

  if (qprime == 3) {
    if (m_cur > 2)
      throw precondition_error(
          "a factor of 3 can only be consumed while at most 2 layers remain");
    std::vector<AgentDensity> solver_density;
    for (size_t i = 0; i < scope.size(); ++i) solver_density.push_back(densities[i]);

    Solution sol;
    if (m_cur == 2) {
      Instance solver_instance = instance_on(solver_density, 2);
      // Dummy birthday agent: the recursion has no birthday feature, so every
      // real agent must be colored.
      solver_instance.agents.push_back(std::make_shared<AdditiveValuation>(
          std::vector<std::vector<DensitySegment>>(2)));
      solver_instance.birthday = solver_instance.agent_count() - 1;
      sol = solve_two_layer(solver_instance, ctx.eps_level, *ctx.options);
    } else {
      Instance solver_instance = instance_on(solver_density, 1);
      solver_instance.agents.push_back(std::make_shared<AdditiveValuation>(
          std::vector<std::vector<DensitySegment>>(1)));
      solver_instance.birthday = solver_instance.agent_count() - 1;
      long long n1 = solver_instance.agent_count();
      std::array<long long, 3> groups{n1 / 3 + (n1 % 3 > 0 ? 1 : 0),
                                      n1 / 3 + (n1 % 3 > 1 ? 1 : 0), n1 / 3};
      sol = solve_one_layer(solver_instance, ctx.eps_level, groups, *ctx.options);
    }
    const GroupAssignment& pi = sol.assignments.at(0);  // dummy picks bundle 0
    for (size_t i = 0; i < scope.size(); ++i) group_of[i] = pi.bundle_of[i];
    for (int jp = 0; jp < 3; ++jp)
      for (int l = 0; l < m_cur; ++l)
        allocation[size_t(jp)][size_t(l)] = sol.division.bundles[size_t(jp)].layers[size_t(l)];
  } else {
    std::vector<AgentDensity> merged_density;
    for (size_t i = 0; i < scope.size(); ++i) {
      AgentDensity d(2);
      int off = 0;
      for (int lp = 0; lp < 2; ++lp) {
        d[size_t(lp)] = sum_layers(densities[i], off, plan.counts[size_t(lp)]);
        off += plan.counts[size_t(lp)];
      }
      merged_density.push_back(std::move(d));
    }
    TwoGroupSolution split =
        solve_two_group_long_knife(instance_on(merged_density, 2), ctx.eps_level, *ctx.options);
    for (size_t i = 0; i < scope.size(); ++i) group_of[i] = split.assignment.bundle_of[i];
    for (int jp = 0; jp < 2; ++jp)
      for (int lp = 0; lp < 2; ++lp)
        allocation[size_t(jp)][size_t(lp)] = split.division.bundles[size_t(jp)].layers[size_t(lp)];
  }

  for (int jp = 0; jp < qprime; ++jp) {
    std::vector<int> child_scope;
    std::vector<AgentDensity> child_input;
    for (size_t i = 0; i < scope.size(); ++i)
      if (group_of[i] == jp) {
        child_scope.push_back(scope[i]);
        child_input.push_back(densities[i]);
      }
    // The 3-path solves on the unmerged layers, so its allocation is indexed
    // by current layers; re-group it into merged-layer pieces for Step 3.
    MergedPieces merged_allocation(static_cast<size_t>(qprime));
    if (qprime == 3) {
      // counts are (1,1,0) or (1,0,0): merged layer lp is current layer lp.
      for (int lp = 0; lp < qprime; ++lp)
        merged_allocation[size_t(lp)] =
            plan.counts[size_t(lp)] > 0 ? allocation[size_t(jp)][size_t(lp)] : Piece();
    } else {
      merged_allocation = allocation[size_t(jp)];
    }
    ChildCake child = concatenate(cake, child_input, plan, merged_allocation);
    solve_recursive(ctx, child.cake, child.densities, child_scope, q_rest);
  }
}

}  // namespace

ProportionalSolution solve_proportional(const Instance& instance, long long q,
                                        const Rational& epsilon, const SolverOptions& options) {
  const int n = instance.agent_count();
  const int m = instance.layers;
  if (q < 1) throw precondition_error("q must be positive");
  if (m > q || q > n) throw precondition_error("need m <= q <= n");
  if (!(epsilon > Rational(0))) throw precondition_error("epsilon must be positive");

  int levels = 0;
  long long rest = q;
  while (rest % 2 == 0) {
    rest /= 2;
    ++levels;
  }
  while (rest % 3 == 0) {
    rest /= 3;
    ++levels;
  }
  if (rest != 1)
    throw precondition_error("unsupported q: prime factors must lie in {2, 3}");
  if (m > 2 && (q % 3 == 0))
    throw precondition_error("q with a factor of 3 supports at most 2 layers");

  std::vector<AgentDensity> densities;
  for (const auto& agent : instance.agents) densities.push_back(as_additive(agent).density());

  RecursionContext ctx;
  ctx.original_layers = m;
  ctx.eps_level = levels > 0 ? epsilon / Rational(levels) : epsilon;
  ctx.options = &options;
  ctx.assignment.assign(size_t(n), 0);

  std::vector<int> scope(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) scope[size_t(i)] = i;
  solve_recursive(ctx, root_cake(m), densities, scope, q);

  ProportionalSolution out;
  out.division = MultiDivision(std::move(ctx.bundles));
  out.assignment.bundle_of = std::move(ctx.assignment);
  out.epsilon = epsilon;
  out.q = q;
  return out;
}

}  // namespace layercake
