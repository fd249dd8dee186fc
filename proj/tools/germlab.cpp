#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>

#include "germlab/analyzer.hpp"

int main(int argc, char** argv) {
  using namespace germlab;
  CLI::App app{"germlab: exact analysis of map-germs"};
  app.require_subcommand(1);
  RunOptions opt;
  bool json = false;
  std::string input;
  std::string chosen;
  const std::map<std::string, std::string> about{
      {"analyze", "invariants, weights, unfolding and quasi-homogeneity summary"},
      {"lift", "generators of the liftable vector fields with lower partners"},
      {"substantial", "is the unfolding (or the standard one) substantial"},
      {"weak", "is the unfolding (or the standard one) weakly substantial"},
      {"qh", "is an equidimensional corank-1 germ quasi-homogeneous"},
      {"mu-tau", "Milnor and Tjurina numbers and Saito's criterion"}};
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("file", input, "germ or function file, or a directory of them")->required();
    sub->add_option("--degree", opt.degree, "degree bound for jets and lift modules")->check(CLI::Range(1, 64));
    sub->add_flag("--json", json, "print the JSON report");
    sub->add_flag("--construct-coords", opt.construct_coords, "build weighted-homogeneous coordinates on YES");
    sub->add_option("--max-params", opt.max_params, "largest standard unfolding `analyze` will process");
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);

  RunResult res;
  try {
    if (std::filesystem::is_directory(input)) {
      res = run_corpus(chosen, input, opt);
    } else {
      res = run(chosen, parse_germ_file(input), opt);
    }
  } catch (const StructuralError& e) {
    std::cerr << "germlab: " << e.what() << "\n";
    return kExitInputError;
  }
  if (json) {
    std::cout << res.report.dump(2) << "\n";
  } else {
    render_text(std::cout, res.report);
  }
  if (res.report.contains("error")) std::cerr << "germlab: " << res.report["error"]["message"].get<std::string>() << "\n";
  return res.exit_code;
}
