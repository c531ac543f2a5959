#include "layercake/verifier.hpp"

#include <algorithm>
#include <random>

namespace layercake {

Rational max_envy(const Instance& instance, const MultiDivision& division,
                  const GroupAssignment& assignment, bool include_birthday,
                  EnvyWitness* witness) {
  if (int(assignment.bundle_of.size()) != instance.agent_count())
    throw precondition_error("assignment does not cover all agents");
  Rational worst;
  int birthday = instance.birthday_agent();
  for (int i = 0; i < instance.agent_count(); ++i) {
    if (!include_birthday && i == birthday) continue;
    const auto& oracle = instance.agents[size_t(i)];
    Rational own = oracle->value(division.bundles.at(size_t(assignment.bundle_of[size_t(i)])));
    for (int j = 0; j < division.bundle_count(); ++j) {
      Rational envy = oracle->value(division.bundles[size_t(j)]) - own;
      if (envy > worst) {
        worst = envy;
        if (witness) *witness = EnvyWitness{i, j, envy};
      }
    }
  }
  return worst;
}

BirthdayCheck check_eps_envy_free_all_birthday(
    const Instance& instance, const MultiDivision& division,
    const std::map<int, GroupAssignment>& assignments, const Rational& eps,
    const std::optional<std::array<long long, 3>>& exact_sizes) {
  BirthdayCheck report;
  PartitionFlags flags = check_partition(division, instance.layers);
  report.structure_ok = flags.complete && flags.feasible;
  report.contiguous = flags.contiguous;
  if (!report.structure_ok) report.failure = "division is not a feasible partition";

  const int n = instance.agent_count();
  const int birthday = instance.birthday_agent();
  const long long lo = n / 3, hi = (n + 2) / 3;
  bool ok = report.structure_ok;

  for (int jstar = 0; jstar < 3; ++jstar) {
    auto it = assignments.find(jstar);
    if (it == assignments.end()) {
      ok = false;
      report.failure = "missing assignment for a birthday choice";
      continue;
    }
    const GroupAssignment& pi = it->second;
    if (int(pi.bundle_of.size()) != n || pi.bundle_of[size_t(birthday)] != jstar) {
      ok = false;
      report.failure = "birthday agent not pinned to its chosen bundle";
      continue;
    }
    EnvyWitness witness;
    Rational envy = max_envy(instance, division, pi, /*include_birthday=*/false, &witness);
    report.envy_per_jstar[jstar] = envy;
    if (envy > eps) {
      ok = false;
      report.failure = "envy above epsilon";
      if (!report.worst || witness.envy > report.worst->envy) report.worst = witness;
    }
    auto sizes = pi.sizes(3);
    report.sizes_per_jstar[jstar] = sizes;
    for (int j = 0; j < 3; ++j) {
      long long want_lo = exact_sizes ? (*exact_sizes)[size_t(j)] : lo;
      long long want_hi = exact_sizes ? (*exact_sizes)[size_t(j)] : hi;
      if (sizes[size_t(j)] < want_lo || sizes[size_t(j)] > want_hi) {
        ok = false;
        report.failure = "group size outside the declared bounds";
      }
    }
  }
  report.pass = ok;
  return report;
}

ProportionalCheck check_proportional(const Instance& instance, const MultiDivision& division,
                                     const GroupAssignment& assignment, long long q,
                                     const Rational& eps) {
  ProportionalCheck report;
  PartitionFlags flags = check_partition(division, instance.layers);
  report.structure_ok = flags.complete && flags.feasible;
  if (!report.structure_ok) report.failure = "division is not a feasible partition";

  LayeredPiece whole = LayeredPiece::empty(instance.layers);
  for (auto& layer : whole.layers) layer = Piece::single(Rational(0), Rational(1));

  bool first = true;
  for (int i = 0; i < instance.agent_count(); ++i) {
    const auto& oracle = instance.agents[size_t(i)];
    Rational alpha = oracle->value(whole);
    Rational got = oracle->value(division.bundles.at(size_t(assignment.bundle_of.at(size_t(i)))));
    Rational margin = got - alpha / Rational(q);
    if (first || margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_agent = i;
      first = false;
    }
  }
  report.sizes = assignment.sizes(int(q));
  auto [mn, mx] = std::minmax_element(report.sizes.begin(), report.sizes.end());
  report.sizes_ok = *mx - *mn <= 1;
  if (!report.sizes_ok) report.failure = "group sizes differ by more than one";

  report.pass = report.structure_ok && report.sizes_ok && !(report.worst_margin < -eps);
  if (report.pass) report.failure.clear();
  else if (report.failure.empty()) report.failure = "proportional share missed beyond epsilon";
  return report;
}

bool spot_check_lipschitz(const Instance& instance, int samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  auto random_piece = [&]() {
    LayeredPiece piece;
    for (int l = 0; l < instance.layers; ++l) {
      long long den = 1 + (long long)(rng() % 16);
      long long a = (long long)(rng() % (unsigned long long)(den + 1));
      long long b = (long long)(rng() % (unsigned long long)(den + 1));
      if (a > b) std::swap(a, b);
      piece.layers.push_back(Piece::single(Rational(a, den), Rational(b, den)));
    }
    return piece;
  };
  for (int trial = 0; trial < samples; ++trial) {
    LayeredPiece a = random_piece();
    LayeredPiece b = random_piece();
    Rational dist = sym_diff_distance(a, b);
    for (const auto& oracle : instance.agents) {
      if ((oracle->value(a) - oracle->value(b)).abs() > oracle->lipschitz() * dist) return false;
    }
  }
  return true;
}

}  // namespace layercake
