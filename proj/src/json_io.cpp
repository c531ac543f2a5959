#include "layercake/json_io.hpp"

#include <fstream>
#include <random>

namespace layercake {

namespace {

Rational rational_field(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::exception& e) {
    throw parse_error(where + ": " + e.what());
  }
  throw parse_error(where + ": expected a rational string or integer");
}

std::string rstr(const Rational& r) { return r.str(); }

Json interval_json(const Interval& iv) { return Json::array({rstr(iv.lo), rstr(iv.hi)}); }

Json piece_json(const Piece& piece) {
  Json out = Json::array();
  for (const auto& iv : piece.intervals()) out.push_back(interval_json(iv));
  return out;
}

Json division_json(const MultiDivision& division) {
  Json bundles = Json::array();
  for (const auto& bundle : division.bundles) {
    Json layers = Json::array();
    for (const auto& piece : bundle.layers) layers.push_back(piece_json(piece));
    bundles.push_back(layers);
  }
  return bundles;
}

Json assignment_json(const GroupAssignment& pi) {
  Json out = Json::array();
  for (int b : pi.bundle_of) out.push_back(b + 1);  // 1-based bundles on the wire
  return out;
}

Json sizes_json(const std::vector<int>& sizes) {
  Json out = Json::array();
  for (int s : sizes) out.push_back(s);
  return out;
}

}  // namespace

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) throw parse_error("instance: expected an object");
  if (!doc.contains("layers") || !doc["layers"].is_number_integer())
    throw parse_error("instance.layers: expected an integer");
  Instance out;
  out.layers = doc["layers"].get<int>();
  if (out.layers < 1) throw parse_error("instance.layers: must be >= 1");
  if (!doc.contains("agents") || !doc["agents"].is_array() || doc["agents"].empty())
    throw parse_error("instance.agents: expected a non-empty array");

  int agent_idx = 0;
  for (const auto& agent : doc["agents"]) {
    std::string where = "agents[" + std::to_string(agent_idx) + "]";
    out.names.push_back(agent.contains("name") ? agent["name"].get<std::string>()
                                               : "agent" + std::to_string(agent_idx + 1));
    if (!agent.contains("density") || !agent["density"].is_array() ||
        int(agent["density"].size()) != out.layers)
      throw parse_error(where + ".density: expected one segment list per layer");
    std::vector<std::vector<DensitySegment>> density;
    int layer_idx = 0;
    for (const auto& layer : agent["density"]) {
      std::string lwhere = where + ".density[" + std::to_string(layer_idx) + "]";
      if (!layer.is_array()) throw parse_error(lwhere + ": expected an array of segments");
      std::vector<DensitySegment> segments;
      int seg_idx = 0;
      for (const auto& seg : layer) {
        std::string swhere = lwhere + "[" + std::to_string(seg_idx) + "]";
        DensitySegment s{rational_field(seg.value("from", Json()), swhere + ".from"),
                         rational_field(seg.value("to", Json()), swhere + ".to"),
                         rational_field(seg.value("value", Json()), swhere + ".value")};
        if (s.value.is_negative()) throw parse_error(swhere + ": negative density");
        if (s.from > s.to || s.from < Rational(0) || s.to > Rational(1))
          throw parse_error(swhere + ": segment must satisfy 0 <= from <= to <= 1");
        segments.push_back(std::move(s));
        ++seg_idx;
      }
      density.push_back(std::move(segments));
      ++layer_idx;
    }
    try {
      out.agents.push_back(std::make_shared<AdditiveValuation>(std::move(density)));
    } catch (const precondition_error& e) {
      throw parse_error(where + ".density: " + e.what());
    }
    ++agent_idx;
  }

  if (doc.contains("birthday")) {
    if (!doc["birthday"].is_number_integer()) throw parse_error("instance.birthday: expected an integer");
    out.birthday = doc["birthday"].get<int>();
    if (out.birthday < 0 || out.birthday >= out.agent_count())
      throw parse_error("instance.birthday: out of range");
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open instance file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(doc);
}

Json emit_instance(const Instance& instance) {
  Json doc;
  doc["layers"] = instance.layers;
  if (instance.birthday >= 0) doc["birthday"] = instance.birthday;
  Json agents = Json::array();
  for (int i = 0; i < instance.agent_count(); ++i) {
    const auto* additive = dynamic_cast<const AdditiveValuation*>(instance.agents[size_t(i)].get());
    if (!additive) throw precondition_error("only additive valuations are serializable");
    Json agent;
    agent["name"] = i < int(instance.names.size()) ? instance.names[size_t(i)]
                                                   : "agent" + std::to_string(i + 1);
    Json density = Json::array();
    for (const auto& layer : additive->density()) {
      Json segs = Json::array();
      for (const auto& seg : layer)
        segs.push_back(Json{{"from", rstr(seg.from)}, {"to", rstr(seg.to)}, {"value", rstr(seg.value)}});
      density.push_back(segs);
    }
    agent["density"] = density;
    agents.push_back(agent);
  }
  doc["agents"] = agents;
  return doc;
}

Json emit_solution(const Instance& instance, const Solution& solution, const std::string& mode,
                   const BirthdayCheck& check,
                   const std::optional<std::array<long long, 3>>& groups) {
  Json doc;
  doc["mode"] = mode;
  if (groups) doc["groups"] = Json::array({(*groups)[0], (*groups)[1], (*groups)[2]});
  doc["division"] = division_json(solution.division);
  doc["star_point"] = Json::array({rstr(solution.star.x), rstr(solution.star.y)});
  doc["anchor_vertex"] = Json::array({solution.anchor.x, solution.anchor.y});
  doc["grid"] = solution.grid_n;
  Json weights = Json::array();
  for (const auto& row : solution.weights.w) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rstr(v));
    weights.push_back(r);
  }
  doc["weights"] = weights;
  Json assignments;
  for (const auto& [jstar, pi] : solution.assignments)
    assignments[std::to_string(jstar + 1)] = assignment_json(pi);
  doc["assignments"] = assignments;

  Json certificate;
  certificate["epsilon"] = rstr(solution.epsilon);
  Json envy;
  for (const auto& [jstar, value] : check.envy_per_jstar) envy[std::to_string(jstar + 1)] = rstr(value);
  certificate["max_envy_per_jstar"] = envy;
  Json sizes;
  for (const auto& [jstar, s] : check.sizes_per_jstar) sizes[std::to_string(jstar + 1)] = sizes_json(s);
  certificate["sizes"] = sizes;
  certificate["oracle_calls"] = solution.oracle_calls;
  certificate["pass"] = check.pass;
  doc["certificate"] = certificate;
  (void)instance;
  return doc;
}

Json emit_proportional(const Instance& instance, const ProportionalSolution& solution,
                       const ProportionalCheck& check) {
  Json doc;
  doc["mode"] = "proportional";
  doc["q"] = solution.q;
  doc["division"] = division_json(solution.division);
  doc["assignment"] = assignment_json(solution.assignment);
  Json certificate;
  certificate["epsilon"] = rstr(solution.epsilon);
  certificate["worst_margin"] = rstr(check.worst_margin);
  certificate["worst_agent"] = check.worst_agent;
  certificate["sizes"] = sizes_json(check.sizes);
  certificate["pass"] = check.pass;
  doc["certificate"] = certificate;
  (void)instance;
  return doc;
}

Json emit_chessboard(const Instance& instance, const ChessboardSearchResult& result, long long q,
                     long long resolution) {
  Json doc;
  doc["mode"] = "chessboard-search";
  doc["q"] = q;
  doc["resolution"] = resolution;
  Json placement = Json::array();
  for (int r : result.best.placement.row) placement.push_back(r + 1);  // 1-based rows
  doc["placement_rows"] = placement;
  Json coords = Json::array();
  for (const auto& c : result.best.coord) coords.push_back(rstr(c));
  doc["coords"] = coords;
  doc["division"] = division_json(result.division);
  Json popularity = Json::array();
  for (const auto& p : result.popularity) popularity.push_back(rstr(p));
  doc["popularity"] = popularity;
  doc["balance"] = rstr(result.balance);
  doc["theta"] = rstr(result.theta);
  doc["points_scanned"] = result.points_scanned;
  Json assignments;
  for (const auto& [jstar, pi] : result.assignments)
    assignments[std::to_string(jstar + 1)] = assignment_json(pi);
  doc["assignments"] = assignments;
  (void)instance;
  return doc;
}

Json emit_equal_size(const Instance& instance, const EqualSizeDemoResult& result, long long q,
                     long long resolution) {
  Json doc;
  doc["mode"] = "equal-size-demo";
  doc["q"] = q;
  doc["resolution"] = resolution;
  doc["division"] = division_json(result.division);
  Json lengths = Json::array();
  for (const auto& per_bundle_lengths : result.subinterval_lengths) {
    Json per_bundle = Json::array();
    for (const auto& len : per_bundle_lengths) per_bundle.push_back(rstr(len));
    lengths.push_back(per_bundle);
  }
  doc["subinterval_lengths"] = lengths;
  Json assignments;
  for (const auto& [jstar, pi] : result.assignments)
    assignments[std::to_string(jstar + 1)] = assignment_json(pi);
  doc["assignments"] = assignments;
  doc["balance"] = rstr(result.search.balance);
  doc["theta"] = rstr(result.search.theta);
  (void)instance;
  return doc;
}

MultiDivision parse_division(const Json& j, int layers) {
  if (!j.is_array()) throw parse_error("division: expected an array of bundles");
  MultiDivision out;
  int b = 0;
  for (const auto& bundle : j) {
    std::string where = "division[" + std::to_string(b) + "]";
    if (!bundle.is_array() || int(bundle.size()) != layers)
      throw parse_error(where + ": expected one piece per layer");
    LayeredPiece piece;
    int l = 0;
    for (const auto& layer : bundle) {
      std::vector<Interval> ivs;
      int k = 0;
      for (const auto& iv : layer) {
        std::string iwhere = where + "[" + std::to_string(l) + "][" + std::to_string(k) + "]";
        if (!iv.is_array() || iv.size() != 2) throw parse_error(iwhere + ": expected [lo, hi]");
        Rational lo = rational_field(iv[0], iwhere + ".lo");
        Rational hi = rational_field(iv[1], iwhere + ".hi");
        if (lo > hi) throw parse_error(iwhere + ": lo > hi");
        ivs.emplace_back(lo, hi);
        ++k;
      }
      piece.layers.push_back(Piece(std::move(ivs)));
      ++l;
    }
    out.bundles.push_back(std::move(piece));
    ++b;
  }
  return out;
}

namespace {

GroupAssignment parse_assignment_array(const Json& j, int agent_count, const std::string& where) {
  if (!j.is_array() || int(j.size()) != agent_count)
    throw parse_error(where + ": expected one bundle per agent");
  GroupAssignment pi;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 1)
      throw parse_error(where + ": bundle indices are 1-based integers");
    pi.bundle_of.push_back(v.get<int>() - 1);
  }
  return pi;
}

}  // namespace

std::map<int, GroupAssignment> parse_assignments(const Json& j, int agent_count) {
  if (!j.is_object()) throw parse_error("assignments: expected an object keyed by j*");
  std::map<int, GroupAssignment> out;
  for (const auto& [key, value] : j.items()) {
    int jstar = std::stoi(key) - 1;
    GroupAssignment pi = parse_assignment_array(value, agent_count, "assignments[" + key + "]");
    pi.birthday_choice = jstar;
    out.emplace(jstar, std::move(pi));
  }
  return out;
}

GroupAssignment parse_single_assignment(const Json& j, int agent_count) {
  return parse_assignment_array(j, agent_count, "assignment");
}

Instance generate_instance(int agents, int layers, int segments, unsigned long long seed,
                           long long max_density) {
  if (agents < 1 || layers < 1 || segments < 1)
    throw precondition_error("generator needs positive sizes");
  std::mt19937_64 rng(seed);
  auto uniform = [&](long long lo, long long hi) {
    return lo + (long long)(rng() % (unsigned long long)(hi - lo + 1));
  };

  Instance out;
  out.layers = layers;
  for (int i = 0; i < agents; ++i) {
    std::vector<std::vector<DensitySegment>> density;
    for (int l = 0; l < layers; ++l) {
      // Random breakpoints on a denominator-4S grid, random small-rational values.
      long long den = 4LL * segments;
      std::vector<long long> cuts{0, den};
      for (int c = 0; c < segments - 1; ++c) cuts.push_back(uniform(0, den));
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      std::vector<DensitySegment> segs;
      for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        long long value_den = uniform(1, 4);
        long long value_num = uniform(0, max_density * value_den);
        segs.push_back(DensitySegment{Rational(cuts[c], den), Rational(cuts[c + 1], den),
                                      Rational(value_num, value_den)});
      }
      density.push_back(std::move(segs));
    }
    out.agents.push_back(std::make_shared<AdditiveValuation>(std::move(density)));
    out.names.push_back("agent" + std::to_string(i + 1));
  }
  return out;
}

}  // namespace layercake
