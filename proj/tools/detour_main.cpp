#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "detour/cli.hpp"
#include "detour/io.hpp"

int main(int argc, char** argv) {
  using namespace detour;

  CLI::App app{"Repairs paths so they avoid removed points, using ball-boundary detours."};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string svg;
  int samples = 0;
  double delta_fraction = 0.0;
  std::string extent;
  std::string mode;
  auto* repair = app.add_subcommand("repair", "repair the path of a problem file");
  repair->add_option("input", input, "problem file")->required();
  repair->add_option("-o,--output", output, "result file")->required();
  repair->add_option("--svg", svg, "write a 2D plot");
  repair->add_option("--samples", samples, "validation samples")->check(CLI::Range(2, 1 << 28));
  repair->add_option("--delta-fraction", delta_fraction, "working radius as a fraction in (0, 1)");
  repair->add_option("--splice-extent", extent, "tightest|widest")
      ->check(CLI::IsMember({"tightest", "widest"}));
  repair->add_option("--mode", mode, "scheduled|iterative")
      ->check(CLI::IsMember({"scheduled", "iterative"}));

  std::string check_input;
  std::string check_result;
  auto* check = app.add_subcommand("check", "re-validate a stored result against its problem");
  check->add_option("input", check_input, "problem file")->required();
  check->add_option("result", check_result, "result file")->required();

  std::string demo_name;
  std::string demo_dir = ".";
  auto* demo = app.add_subcommand("demo", "write a named demo problem, result and plot");
  demo->add_option("name", demo_name,
                   "single|multi|lattice|corollary|line-negative|chebyshev")
      ->required();
  demo->add_option("-d,--dir", demo_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  if (*repair) {
    cli::RepairFlags flags;
    if (!svg.empty()) flags.svg = svg;
    if (repair->count("--samples")) flags.samples = samples;
    if (repair->count("--delta-fraction")) flags.delta_fraction = delta_fraction;
    if (!extent.empty()) flags.splice_extent = io::parse_splice_extent(extent);
    if (!mode.empty()) flags.mode = io::parse_puncture_mode(mode);
    return cli::cmd_repair(input, output, flags, std::cerr);
  }
  if (*check) return cli::cmd_check(check_input, check_result, std::cerr);
  return cli::cmd_demo(demo_name, demo_dir, std::cerr);
}
