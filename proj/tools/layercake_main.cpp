// layercake: fair-division solvers for one- and two-layered cakes with exact
// rational arithmetic, plus an independent verifier and a chessboard-complex
// search for small prime-power group counts.
//
// Exit codes: 0 success, 2 parse error, 3 precondition violation,
// 4 verification failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "layercake/json_io.hpp"

namespace lc = layercake;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerification = 4;

void write_output(const lc::Json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << std::endl;
  } else {
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
  }
}

lc::Rational parse_eps(const std::string& text) {
  lc::Rational eps = lc::Rational::parse(text);
  if (!(eps > lc::Rational(0))) throw lc::precondition_error("epsilon must be positive");
  return eps;
}

std::array<long long, 3> parse_groups(const std::string& text) {
  std::array<long long, 3> groups{};
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    size_t comma = i < 2 ? text.find(',', pos) : text.size();
    if (comma == std::string::npos) throw lc::precondition_error("--groups expects k1,k2,k3");
    groups[size_t(i)] = std::stoll(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return groups;
}

int run_solve_two_layer(const std::string& input, const std::string& eps_text,
                        const std::string& output, bool parallel) {
  lc::Instance instance = lc::load_instance(input);
  lc::Rational eps = parse_eps(eps_text);
  lc::SolverOptions options{parallel};
  lc::Solution solution = lc::solve_two_layer(instance, eps, options);
  lc::BirthdayCheck check =
      lc::check_eps_envy_free_all_birthday(instance, solution.division, solution.assignments, eps);
  write_output(lc::emit_solution(instance, solution, "two-layer", check), output);
  return check.pass ? kExitOk : kExitVerification;
}

int run_solve_one_layer(const std::string& input, const std::string& eps_text,
                        const std::string& groups_text, const std::string& output, bool parallel) {
  lc::Instance instance = lc::load_instance(input);
  lc::Rational eps = parse_eps(eps_text);
  auto groups = parse_groups(groups_text);
  lc::SolverOptions options{parallel};
  lc::Solution solution = lc::solve_one_layer(instance, eps, groups, options);
  lc::BirthdayCheck check = lc::check_eps_envy_free_all_birthday(instance, solution.division,
                                                                 solution.assignments, eps, groups);
  write_output(lc::emit_solution(instance, solution, "one-layer", check, groups), output);
  return check.pass ? kExitOk : kExitVerification;
}

int run_solve_proportional(const std::string& input, const std::string& eps_text, long long q,
                           const std::string& output, bool parallel) {
  lc::Instance instance = lc::load_instance(input);
  lc::Rational eps = parse_eps(eps_text);
  lc::SolverOptions options{parallel};
  lc::ProportionalSolution solution = lc::solve_proportional(instance, q, eps, options);
  lc::ProportionalCheck check =
      lc::check_proportional(instance, solution.division, solution.assignment, q, eps);
  write_output(lc::emit_proportional(instance, solution, check), output);
  return check.pass ? kExitOk : kExitVerification;
}

int run_search_chessboard(const std::string& input, long long q, long long resolution,
                          const std::string& output, bool parallel) {
  lc::Instance instance = lc::load_instance(input);
  lc::ChessboardSearchOptions options;
  options.parallel = parallel;
  lc::ChessboardSearchResult result = lc::grid_search_envy_free(instance, q, resolution, options);
  write_output(lc::emit_chessboard(instance, result, q, resolution), output);
  if (result.assignments.empty()) return kExitVerification;
  for (const auto& [jstar, pi] : result.assignments) {
    lc::Rational envy =
        lc::max_envy(instance, result.division, pi, /*include_birthday=*/false);
    if (envy > result.theta) return kExitVerification;
  }
  return kExitOk;
}

int run_demo_equal_size(const std::string& input, long long q, long long resolution,
                        const std::string& output, bool parallel) {
  lc::Instance instance = lc::load_instance(input);
  lc::ChessboardSearchOptions options;
  options.parallel = parallel;
  lc::EqualSizeDemoResult result = lc::equal_size_demo(instance, q, resolution, options);
  write_output(lc::emit_equal_size(instance, result, q, resolution), output);
  // Certification: identical subinterval-length multisets and bounded envy.
  for (size_t b = 1; b < result.subinterval_lengths.size(); ++b)
    if (result.subinterval_lengths[b] != result.subinterval_lengths[0]) return kExitVerification;
  if (result.assignments.empty()) return kExitVerification;
  for (const auto& [jstar, pi] : result.assignments) {
    lc::Rational envy = lc::max_envy(instance, result.division, pi, false);
    if (envy > result.search.theta) return kExitVerification;
  }
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& solution_path,
               const std::string& eps_text) {
  lc::Instance instance = lc::load_instance(input);
  lc::Rational eps = parse_eps(eps_text);
  std::ifstream in(solution_path);
  if (!in) throw lc::parse_error("cannot open solution file: " + solution_path);
  lc::Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw lc::parse_error(std::string("invalid JSON: ") + e.what());
  }
  std::string mode = doc.value("mode", "");
  lc::MultiDivision division = lc::parse_division(doc.at("division"), instance.layers);
  lc::Json report;
  report["mode"] = mode;
  bool pass = false;
  if (mode == "two-layer" || mode == "one-layer") {
    auto assignments = lc::parse_assignments(doc.at("assignments"), instance.agent_count());
    std::optional<std::array<long long, 3>> groups;
    if (doc.contains("groups"))
      groups = std::array<long long, 3>{doc["groups"][0].get<long long>(),
                                        doc["groups"][1].get<long long>(),
                                        doc["groups"][2].get<long long>()};
    lc::BirthdayCheck check =
        lc::check_eps_envy_free_all_birthday(instance, division, assignments, eps, groups);
    pass = check.pass;
    lc::Json envy;
    for (const auto& [jstar, value] : check.envy_per_jstar)
      envy[std::to_string(jstar + 1)] = value.str();
    report["max_envy_per_jstar"] = envy;
    if (!check.failure.empty()) report["failure"] = check.failure;
  } else if (mode == "proportional") {
    lc::GroupAssignment pi =
        lc::parse_single_assignment(doc.at("assignment"), instance.agent_count());
    long long q = doc.at("q").get<long long>();
    lc::ProportionalCheck check = lc::check_proportional(instance, division, pi, q, eps);
    pass = check.pass;
    report["worst_margin"] = check.worst_margin.str();
    if (!check.failure.empty()) report["failure"] = check.failure;
  } else {
    throw lc::parse_error("solution mode not recognized: '" + mode + "'");
  }
  report["pass"] = pass;
  std::cout << report.dump(2) << std::endl;
  return pass ? kExitOk : kExitVerification;
}

int run_gen(int agents, int layers, int segments, unsigned long long seed, long long max_density,
            const std::string& output) {
  lc::Instance instance = lc::generate_instance(agents, layers, segments, seed, max_density);
  write_output(lc::emit_instance(instance), output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair division of multi-layered cakes"};
  app.require_subcommand(1);

  std::string input, output, eps_text = "1/10", groups_text = "1,1,1", solution_path;
  long long q = 3, resolution = 60;
  int gen_agents = 3, gen_layers = 2, gen_segments = 3;
  long long gen_max_density = 5;
  unsigned long long seed = 1;
  bool parallel = false;

  auto* solve = app.add_subcommand("solve", "compute a division");
  solve->require_subcommand(1);
  auto* two = solve->add_subcommand("two-layer", "three groups on a two-layered cake");
  two->add_option("-i,--input", input)->required();
  two->add_option("--epsilon", eps_text);
  two->add_option("-o,--output", output);
  two->add_flag("--parallel", parallel);
  auto* one = solve->add_subcommand("one-layer", "three groups of chosen sizes on one layer");
  one->add_option("-i,--input", input)->required();
  one->add_option("--groups", groups_text)->required();
  one->add_option("--epsilon", eps_text);
  one->add_option("-o,--output", output);
  one->add_flag("--parallel", parallel);
  auto* prop = solve->add_subcommand("proportional", "q groups via recursive splitting");
  prop->add_option("-i,--input", input)->required();
  prop->add_option("--q", q)->required();
  prop->add_option("--epsilon", eps_text);
  prop->add_option("-o,--output", output);
  prop->add_flag("--parallel", parallel);

  auto* search = app.add_subcommand("search", "exhaustive configuration-space search");
  search->require_subcommand(1);
  auto* chess = search->add_subcommand("chessboard", "balanced q-piece long-knife divisions");
  chess->add_option("-i,--input", input)->required();
  chess->add_option("--q", q)->required();
  chess->add_option("--resolution", resolution);
  chess->add_option("-o,--output", output);
  chess->add_flag("--parallel", parallel);

  auto* demo = app.add_subcommand("demo", "derived constructions");
  demo->require_subcommand(1);
  auto* equal = demo->add_subcommand("equal-size", "envy-free division with equal-size pieces");
  equal->add_option("-i,--input", input)->required();
  equal->add_option("--q", q)->required();
  equal->add_option("--resolution", resolution);
  equal->add_option("-o,--output", output);
  equal->add_flag("--parallel", parallel);

  auto* verify = app.add_subcommand("verify", "re-check a solution document");
  verify->add_option("-i,--input", input)->required();
  verify->add_option("-s,--solution", solution_path)->required();
  verify->add_option("--epsilon", eps_text);

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--agents", gen_agents)->required();
  gen->add_option("--layers", gen_layers);
  gen->add_option("--segments", gen_segments);
  gen->add_option("--seed", seed);
  gen->add_option("--max-density", gen_max_density);
  gen->add_option("-o,--output", output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (two->parsed()) return run_solve_two_layer(input, eps_text, output, parallel);
    if (one->parsed()) return run_solve_one_layer(input, eps_text, groups_text, output, parallel);
    if (prop->parsed()) return run_solve_proportional(input, eps_text, q, output, parallel);
    if (chess->parsed()) return run_search_chessboard(input, q, resolution, output, parallel);
    if (equal->parsed()) return run_demo_equal_size(input, q, resolution, output, parallel);
    if (verify->parsed()) return run_verify(input, solution_path, eps_text);
    if (gen->parsed()) return run_gen(gen_agents, gen_layers, gen_segments, seed, gen_max_density, output);
  } catch (const lc::parse_error& e) {
    std::cerr << "parse error: " << e.what() << std::endl;
    return kExitParse;
  } catch (const lc::precondition_error& e) {
    std::cerr << "precondition violation: " << e.what() << std::endl;
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitVerification;
  }
  return kExitPrecondition;
}
