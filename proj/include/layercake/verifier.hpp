#pragma once

#include <map>
#include <optional>
#include <string>

#include "layercake/valuation.hpp"

namespace layercake {

// Certification of solver outputs. Bundle values are re-derived here from the
// raw intervals through the valuation oracles only; no solver code path is
// reused.

struct EnvyWitness {
  int agent = -1;
  int envied_bundle = -1;
  Rational envy;
};

// max over the selected agents of (max_j v_i(A_j) - v_i(A_pi(i))).
Rational max_envy(const Instance& instance, const MultiDivision& division,
                  const GroupAssignment& assignment, bool include_birthday = true,
                  EnvyWitness* witness = nullptr);

struct BirthdayCheck {
  bool pass = false;
  bool structure_ok = false;  // complete + feasible
  bool contiguous = false;
  std::map<int, Rational> envy_per_jstar;
  std::map<int, std::vector<int>> sizes_per_jstar;
  std::optional<EnvyWitness> worst;
  std::string failure;
};

// For every birthday choice j*: pi_jstar pins the birthday agent to j*, the
// non-birthday agents have envy at most eps, and group sizes are within the
// declared bounds (floor/ceil(n/3), or exactly `exact_sizes` when given).
BirthdayCheck check_eps_envy_free_all_birthday(
    const Instance& instance, const MultiDivision& division,
    const std::map<int, GroupAssignment>& assignments, const Rational& eps,
    const std::optional<std::array<long long, 3>>& exact_sizes = std::nullopt);

struct ProportionalCheck {
  bool pass = false;
  bool structure_ok = false;
  bool sizes_ok = false;
  Rational worst_margin;  // min over agents of v_i(A_pi(i)) - alpha_i / q
  int worst_agent = -1;
  std::vector<int> sizes;
  std::string failure;
};

// Every agent receives value at least alpha_i/q - eps, where alpha_i is the
// agent's value for the entire layered cake; sizes within one of each other.
ProportionalCheck check_proportional(const Instance& instance, const MultiDivision& division,
                                     const GroupAssignment& assignment, long long q,
                                     const Rational& eps);

// Custom oracles are trusted to be monotone and Lipschitz; this samples
// random layered-piece pairs and reports whether the declared constants hold
// on all of them. Deterministic in the seed.
bool spot_check_lipschitz(const Instance& instance, int samples, unsigned long long seed);

}  // namespace layercake
