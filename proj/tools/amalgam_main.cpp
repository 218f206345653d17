#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "amal/parser.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-ring amalgamation workbench"};

  std::string session_file, inline_program, format = "text", kb_path;
  amal::CliOptions opts;
  long max_ring_size = 0, max_ideals = 0;

  app.add_option("session", session_file, "Session file to run")
      ->check(CLI::ExistingFile);
  app.add_option("-e,--eval", inline_program, "Program text to run directly");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--assert", opts.assert_mode,
               "Exit nonzero when a checked property is false");
  app.add_option("--seed", opts.seed, "Seed for sampled checks");
  app.add_option("--jobs", opts.jobs, "Worker count for verify/search");
  app.add_option("--max-ring-size", max_ring_size, "Ring size cap");
  app.add_option("--max-ideals", max_ideals, "Ideal enumeration cap");
  app.add_option("--degree", opts.degree,
                 "Degree bound for the direct Gaussian check");
  app.add_option("--samples", opts.samples,
                 "Sample budget for the direct Gaussian check");
  app.add_option("--max-size", opts.search_max_size,
                 "Default size cap for search corpora");
  app.add_option("--kb", kb_path, "Knowledge base file (default: shipped)")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  opts.structured = format == "structured";
  opts.kb_path = kb_path;
  if (max_ring_size > 0) amal::limits().ring_size_cap = max_ring_size;
  if (max_ideals > 0) amal::limits().ideal_cap = max_ideals;
  amal::limits().seed = opts.seed;

  std::string source;
  if (!inline_program.empty()) {
    source = inline_program;
  } else if (!session_file.empty()) {
    std::ifstream in(session_file);
    std::stringstream ss;
    ss << in.rdbuf();
    source = ss.str();
  } else {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    source = ss.str();
  }

  return amal::run_program(source, opts, std::cout, std::cerr);
}
