// Copyright 2026 The locdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "locdisc/cli.hpp"

namespace {

using locdisc::cli::Format;

const std::map<std::string, Format> kFormats = {{"table", Format::Table}, {"json", Format::Json}};

void add_output_flags(CLI::App* cmd, Format& format, std::optional<std::string>& out_dir) {
  cmd->add_option("--output", format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  cmd->add_option("--out-dir", out_dir, "Directory for JSON artifacts");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = locdisc::cli;

  CLI::App app{"Minimum-error discrimination of product-state ensembles under LOCC"};
  app.set_version_flag("--version", LOCDISC_VERSION);
  app.require_subcommand(1);

  Format format = Format::Table;
  std::optional<std::string> out_dir;

  cli::ReproduceOptions ropt;
  auto* reproduce = app.add_subcommand("reproduce", "Recompute the published values and compare");
  reproduce->add_option("--tol", ropt.tol, "Override solver and certification tolerances")
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--max-iter", ropt.max_iter, "Iteration cap for the optimizer")
      ->check(CLI::PositiveNumber);
  add_output_flags(reproduce, format, out_dir);

  cli::OptimizeOptions oopt;
  std::optional<std::uint64_t> seed;
  auto* optimize = app.add_subcommand("optimize", "Run the iterative minimum-error optimizer");
  optimize->add_option("--ensemble", oopt.ensemble, "Catalog name or ensemble JSON file")->required();
  optimize->add_option("--tol", oopt.tol, "Certification tolerance")->check(CLI::PositiveNumber);
  optimize->add_option("--max-iter", oopt.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  optimize->add_option("--seed", seed, "Start from a random full-rank POVM with this seed");
  add_output_flags(optimize, format, out_dir);

  std::string v_ensemble, v_povm;
  double v_tol = locdisc::default_helstrom_tolerance;
  auto* verify = app.add_subcommand("verify", "Check the optimality conditions for a POVM");
  verify->add_option("--ensemble", v_ensemble, "Catalog name or ensemble JSON file")->required();
  verify->add_option("--povm", v_povm, "POVM JSON file")->required();
  verify->add_option("--tol", v_tol, "Certification tolerance")->check(CLI::PositiveNumber);
  add_output_flags(verify, format, out_dir);

  cli::SimulateOptions sopt;
  auto* simulate = app.add_subcommand("simulate", "Evaluate and sample an LOCC protocol");
  simulate->add_option("--protocol", sopt.protocol, "Built-in name or protocol JSON file")->required();
  simulate->add_option("--ensemble", sopt.ensemble, "Ensemble override");
  simulate->add_option("--shots", sopt.shots, "Number of Monte-Carlo shots")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sopt.seed, "RNG seed");
  add_output_flags(simulate, format, out_dir);

  auto* catalog = app.add_subcommand("catalog", "List named ensembles and built-in protocols");
  catalog->add_option("--output", format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kInput;
  }

  try {
    if (*reproduce) return cli::cmd_reproduce(ropt, format, out_dir, std::cout);
    if (*optimize) {
      oopt.seed = seed;
      oopt.format = format;
      oopt.out_dir = out_dir;
      return cli::cmd_optimize(oopt, std::cout, std::cerr);
    }
    if (*verify) return cli::cmd_verify(v_ensemble, v_povm, v_tol, format, std::cout, std::cerr);
    if (*simulate) {
      sopt.format = format;
      sopt.out_dir = out_dir;
      return cli::cmd_simulate(sopt, std::cout, std::cerr);
    }
    if (*catalog) return cli::cmd_catalog(format, std::cout);
  } catch (const locdisc::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFail;
  }
  return cli::kInput;
}
