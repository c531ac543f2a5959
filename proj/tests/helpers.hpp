#pragma once

#include <random>

#include "layercake/json_io.hpp"

namespace lc = layercake;

// Shared builders for test instances; every test fixes its own seed.

inline lc::Rational rat(long long n, long long d = 1) { return lc::Rational(n, d); }

inline std::vector<lc::DensitySegment> flat(long long num, long long den = 1) {
  return {lc::DensitySegment{rat(0), rat(1), rat(num, den)}};
}

inline lc::ValuationPtr additive(std::vector<std::vector<lc::DensitySegment>> density) {
  return std::make_shared<lc::AdditiveValuation>(std::move(density));
}

// n agents with density 1 on every layer.
inline lc::Instance uniform_instance(int n, int m) {
  lc::Instance inst;
  inst.layers = m;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<lc::DensitySegment>> d;
    for (int l = 0; l < m; ++l) d.push_back(flat(1));
    inst.agents.push_back(additive(std::move(d)));
  }
  return inst;
}

inline lc::Rational random_rational01(std::mt19937_64& rng, long long max_den = 24) {
  long long den = 1 + (long long)(rng() % (unsigned long long)max_den);
  long long num = (long long)(rng() % (unsigned long long)(den + 1));
  return rat(num, den);
}

inline lc::Piece random_piece(std::mt19937_64& rng, int max_intervals = 3) {
  std::vector<lc::Interval> ivs;
  int count = int(rng() % (unsigned long long)(max_intervals + 1));
  for (int i = 0; i < count; ++i) {
    lc::Rational a = random_rational01(rng);
    lc::Rational b = random_rational01(rng);
    if (b < a) std::swap(a, b);
    ivs.emplace_back(a, b);
  }
  return lc::Piece(std::move(ivs));
}

inline lc::LayeredPiece random_layered_piece(std::mt19937_64& rng, int m) {
  lc::LayeredPiece p;
  for (int l = 0; l < m; ++l) p.layers.push_back(random_piece(rng));
  return p;
}
