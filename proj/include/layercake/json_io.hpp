#pragma once

#include <json.hpp>

#include "layercake/chessboard.hpp"
#include "layercake/fptas_solver.hpp"
#include "layercake/proportional.hpp"
#include "layercake/verifier.hpp"

namespace layercake {

using Json = nlohmann::ordered_json;

// Thrown on malformed input documents; message carries a field path.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance document:
// { "layers": int, "birthday": int (0-based, optional, default last),
//   "agents": [ { "name": str,
//                 "density": [ [ {"from": r, "to": r, "value": r}, ... ]  per layer ] } ] }
// Rationals are strings "p/q", integers, or exact decimals.
Instance parse_instance(const Json& doc);
Instance load_instance(const std::string& path);
Json emit_instance(const Instance& instance);

Json emit_solution(const Instance& instance, const Solution& solution, const std::string& mode,
                   const BirthdayCheck& check,
                   const std::optional<std::array<long long, 3>>& groups = std::nullopt);
Json emit_proportional(const Instance& instance, const ProportionalSolution& solution,
                       const ProportionalCheck& check);
Json emit_chessboard(const Instance& instance, const ChessboardSearchResult& result, long long q,
                     long long resolution);
Json emit_equal_size(const Instance& instance, const EqualSizeDemoResult& result, long long q,
                     long long resolution);

// Division / assignment readers for `verify`.
MultiDivision parse_division(const Json& j, int layers);
std::map<int, GroupAssignment> parse_assignments(const Json& j, int agent_count);
GroupAssignment parse_single_assignment(const Json& j, int agent_count);

// Deterministic random instance generator (fixed engine, fixed draw order, so
// one seed yields byte-identical documents everywhere).
Instance generate_instance(int agents, int layers, int segments, unsigned long long seed,
                           long long max_density = 5);

}  // namespace layercake
