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

#ifndef LOCDISC_CLI_HPP
#define LOCDISC_CLI_HPP

/**
 * @file cli.hpp
 * @brief The command verbs behind the `locdisc` executable: reproduce,
 *        optimize, verify, simulate and catalog.
 *
 * Each verb writes to caller-supplied streams and returns the process exit
 * code: 0 success, 1 verification or acceptance failure, 2 input error.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "locdisc/catalog.hpp"
#include "locdisc/helstrom.hpp"
#include "locdisc/json_io.hpp"
#include "locdisc/locc.hpp"
#include "locdisc/optimizer.hpp"

#ifndef LOCDISC_VERSION
#define LOCDISC_VERSION "0.0.0"
#endif

namespace locdisc::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kInput = 2 };

enum class Format { Table, Json };

// ---------------------------------------------------------------------------
// Named inputs

struct NamedEnsemble {
  std::string description;
  std::function<Ensemble()> make;
};

inline const std::map<std::string, NamedEnsemble>& ensemble_registry() {
  static const std::map<std::string, NamedEnsemble> reg = {
      {"gv", {"two-qubit product basis, 4 equiprobable states", catalog::gv_ensemble}},
      {"twofour", {"2x4 product basis, 8 equiprobable states", catalog::twofour_ensemble}},
      {"domino", {"3x3 domino basis, 9 equiprobable states", catalog::domino_ensemble}},
      {"domino-rows", {"domino row mixtures rho_0..rho_2", catalog::domino_row_mixtures}},
      {"gv-bob-tau", {"Bob's S_00 vs S_11 assignment for gv (tau_0, tau_1)", catalog::gv_bob_tau}},
      {"gv-bob-subsets",
       {"Bob's 4-subset assignment for gv (effective guess operators, scaled)",
        [] { return catalog::guess_problem_ensemble(catalog::gv_bob_guess_operators()); }}},
      {"twofour-alice-rows",
       {"Alice-reduced row mixtures of the 2x4 basis", catalog::twofour_alice_rows}},
      {"domino-sigma",
       {"sigma_0..sigma_7 with priors 1/8, objective scale 8/3", catalog::domino_sigma_ensemble}},
      {"domino-rows-alice",
       {"Alice's 27-guess-function problem for the domino rows (scaled)",
        [] { return catalog::guess_problem_ensemble(catalog::domino_alice_guess_operators()); }}},
  };
  return reg;
}

/// A registry name, or else a path to an ensemble JSON file.
inline Ensemble load_ensemble(const std::string& source) {
  const auto& reg = ensemble_registry();
  if (auto it = reg.find(source); it != reg.end()) return it->second.make();
  if (!std::filesystem::exists(source)) {
    throw InputError("--ensemble: '" + source + "' is neither a catalog name nor a file");
  }
  return ensemble_from_json(parse_json_file(source));
}

inline Povm load_povm(const std::string& file) { return povm_from_json(parse_json_file(file)); }

inline LoccProtocol load_protocol(const std::string& source) {
  auto builtins = builtin_protocols();
  if (auto it = builtins.find(source); it != builtins.end()) return it->second;
  if (!std::filesystem::exists(source)) {
    throw InputError("--protocol: '" + source + "' is neither a built-in name nor a file");
  }
  return protocol_from_json(parse_json_file(source));
}

inline void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write");
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceRow {
  enum class Kind { Close, Greater, Check, Display };

  std::string quantity;
  std::optional<double> computed;
  std::optional<double> published;
  double tolerance = 0.0;
  Kind kind = Kind::Close;
  bool pass = false;
  std::string note;
};

inline const char* to_string(ReproduceRow::Kind k) {
  switch (k) {
    case ReproduceRow::Kind::Close: return "close";
    case ReproduceRow::Kind::Greater: return "greater";
    case ReproduceRow::Kind::Check: return "check";
    case ReproduceRow::Kind::Display: return "display";
  }
  return "";
}

struct ReproduceReport {
  std::vector<ReproduceRow> rows;
  bool overall_pass = false;
  std::string tool_version = LOCDISC_VERSION;
  double wall_clock_seconds = 0.0;
};

struct ReproduceOptions {
  /// Replaces the tolerance of every solver-accuracy row and the
  /// certification tolerance handed to the solvers.
  std::optional<double> tol;
  int max_iter = 20000;
};

/// Rounding tolerance for values quoted to three decimals.
inline constexpr double three_decimals = 5e-4;
/// Tolerance for analytic values.
inline constexpr double analytic = 1e-9;

inline ReproduceReport run_reproduce(const ReproduceOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const double cos2 = 0.5 * (1.0 + 1.0 / std::sqrt(2.0));
  const double cert = opt.tol.value_or(default_helstrom_tolerance);
  auto solver_tol = [&](double dflt) { return opt.tol.value_or(dflt); };

  ReproduceReport rep;
  auto close = [&](std::string q, double computed, double published, double tol, std::string note = {}) {
    rep.rows.push_back({std::move(q), computed, published, tol, ReproduceRow::Kind::Close,
                        std::abs(computed - published) <= tol, std::move(note)});
  };

  const Ensemble gv = catalog::gv_ensemble();
  const Ensemble twofour = catalog::twofour_ensemble();
  const Ensemble domino = catalog::domino_ensemble();

  close("gv_forward success", evaluate_exact(gv_forward(), gv), 1.0, analytic,
        "perfect with one message A->B");
  close("gv_backward_breidbart success", evaluate_exact(gv_backward_breidbart(), gv), cos2, analytic,
        "cos^2(pi/8)");
  close("gv_backward_alternate success", evaluate_exact(gv_backward_alternate(), gv), cos2, analytic,
        "degenerate optimum");
  const LoccProtocol tw = twofour_two_way();
  close("twofour_two_way success", evaluate_exact(tw, twofour), 1.0, analytic);
  close("twofour_two_way messages", validate_protocol(tw).messages, 2.0, 0.0);
  close("twofour_oneway_AB success", evaluate_exact(twofour_oneway_ab(), twofour), cos2, analytic);
  close("twofour_oneway_BA success", evaluate_exact(twofour_oneway_ba(), twofour), cos2, analytic);

  const IterateOptions iopt{cert, opt.max_iter, 10};
  const OneWayAnalyses an = oneway_bound_analyses(iopt);
  for (const ReductionResult* r : {&an.gv_backward, &an.twofour_ab, &an.twofour_ba}) {
    close("one-way bound, " + r->name + " [iterative]", r->iterative, cos2, solver_tol(1e-6));
  }

  const SymmetricGammaSolution& sol = an.domino;
  close("domino p", sol.p, 0.110, three_decimals, "three-decimal rounding");
  close("domino q", sol.q, 0.093, three_decimals, "three-decimal rounding");
  close("domino one-way success (8/3)(2p+q)", sol.success, 0.836, three_decimals,
        "three-decimal rounding; headline figure ~84%");
  rep.rows.push_back({"domino success from rounded p=0.110, q=0.093", 8.0 / 3.0 * (2 * 0.110 + 0.093),
                      std::nullopt, 0.0, ReproduceRow::Kind::Display, true,
                      "display only; shows the effect of rounding p and q"});

  const Ensemble rows_alice = catalog::guess_problem_ensemble(catalog::domino_alice_guess_operators());
  const IterateResult it27 = iterate_min_error(rows_alice, iopt);
  close("domino 27-function problem [iterative]", scaled_success(rows_alice, it27.povm), sol.success,
        solver_tol(1e-5), "iterative optimizer vs symmetric construction");

  const double protocol_value = evaluate_exact(domino_oneway(sol.povm), domino);
  close("domino_oneway protocol vs subset formula", protocol_value,
        subset_success_probability(catalog::sigma_operators(), sol.povm), solver_tol(1e-10));

  rep.rows.push_back({"domino one-way error", 1.0 - sol.success, 0.16, 0.0, ReproduceRow::Kind::Greater,
                      1.0 - sol.success > 0.16, "must exceed 16%"});

  const GuessOptimalityReport g27 = verify_guess_function_optimality(
      sol.gamma, catalog::domino_alice_guess_operators(), 8, solver_tol(tol::certification));
  rep.rows.push_back({"27 guess functions: kernel hits (all PSD)", static_cast<double>(g27.kernel_hits),
                      8.0, solver_tol(tol::certification), ReproduceRow::Kind::Check, g27.pass,
                      "min non-kernel eigenvalue " + std::to_string(g27.min_non_kernel)});

  const double compl_tol = solver_tol(tol::certification);
  rep.rows.push_back({"domino POVM completeness residual", sol.completeness_residual, 0.0, compl_tol,
                      ReproduceRow::Kind::Check, sol.completeness_residual <= compl_tol, ""});

  const HelstromReport hr = check_helstrom_conditions(catalog::domino_sigma_ensemble(), sol.povm, cert);
  const double worst = std::max({-hr.min_eigenvalue(), hr.max_stationarity_residual,
                                 hr.max_pairwise_residual, hr.gamma_antihermitian_residual});
  rep.rows.push_back({"Helstrom conditions, sigma ensemble (worst violation)", worst, 0.0, cert,
                      ReproduceRow::Kind::Check, hr.pass, ""});

  rep.rows.push_back({"two-way LOCC error bound for domino states (prior work)", std::nullopt, 1.9e-8,
                      0.0, ReproduceRow::Kind::Display, true, "display only; not computed by this tool"});

  rep.overall_pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.pass; });
  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline Json to_json(const ReproduceReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"quantity", r.quantity},
                    {"computed", r.computed ? Json(*r.computed) : Json(nullptr)},
                    {"published", r.published ? Json(*r.published) : Json(nullptr)},
                    {"tolerance", r.tolerance},
                    {"comparison", to_string(r.kind)},
                    {"pass", r.pass},
                    {"note", r.note}});
  }
  return {{"rows", std::move(rows)},
          {"overall_pass", rep.overall_pass},
          {"tool_version", rep.tool_version},
          {"wall_clock_seconds", rep.wall_clock_seconds}};
}

inline void print_table(std::ostream& out, const ReproduceReport& rep) {
  out << std::left << std::setw(58) << "quantity" << std::setw(18) << "computed" << std::setw(12)
      << "published" << std::setw(10) << "tol" << "result\n";
  out << std::string(104, '-') << '\n';
  for (const auto& r : rep.rows) {
    std::ostringstream c, p, t;
    c << std::setprecision(10);
    if (r.computed) c << *r.computed; else c << "-";
    p << std::setprecision(7);
    if (r.published) p << (r.kind == ReproduceRow::Kind::Greater ? "> " : "") << *r.published; else p << "-";
    t << std::setprecision(2) << r.tolerance;
    const char* res = r.kind == ReproduceRow::Kind::Display ? "info" : (r.pass ? "PASS" : "FAIL");
    out << std::left << std::setw(58) << r.quantity << std::setw(18) << c.str() << std::setw(12) << p.str()
        << std::setw(10) << t.str() << res;
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << '\n';
  }
  out << std::string(104, '-') << '\n';
  out << "overall: " << (rep.overall_pass ? "PASS" : "FAIL") << "  version " << rep.tool_version
      << "  " << std::setprecision(3) << rep.wall_clock_seconds << " s\n";
}

inline int cmd_reproduce(const ReproduceOptions& opt, Format format,
                         const std::optional<std::string>& out_dir, std::ostream& out) {
  const ReproduceReport rep = run_reproduce(opt);
  if (format == Format::Json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    print_table(out, rep);
  }
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_file(std::filesystem::path(*out_dir) / "reproduce.json", to_json(rep));
  }
  return rep.overall_pass ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// optimize / verify

struct OptimizeOptions {
  std::string ensemble;
  double tol = default_helstrom_tolerance;
  int max_iter = 20000;
  std::optional<std::uint64_t> seed;  ///< random full-rank start; uniform start when absent
  Format format = Format::Table;
  std::optional<std::string> out_dir;
};

inline int cmd_optimize(const OptimizeOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<Ensemble> ensemble;
  try {
    ensemble = load_ensemble(opt.ensemble);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  const Povm init = opt.seed ? random_povm(ensemble->dim(), ensemble->size(), *opt.seed)
                             : uniform_povm(ensemble->dim(), ensemble->size());
  const IterateResult res = iterate_min_error(*ensemble, init, {opt.tol, opt.max_iter, 10});
  const HelstromReport& rep = res.trace.final_report;
  const double objective = scaled_success(*ensemble, res.povm);

  Json summary = {{"ensemble", opt.ensemble},
                  {"success", rep.success},
                  {"objective", objective},
                  {"objective_scale", ensemble->objective_scale()},
                  {"iterations", res.trace.iterations},
                  {"converged", res.trace.converged},
                  {"monotone", res.trace.max_decrease <= 1e-12}};
  if (opt.out_dir) {
    try {
      std::filesystem::create_directories(*opt.out_dir);
      write_file(std::filesystem::path(*opt.out_dir) / "povm.json", to_json(res.povm));
      write_file(std::filesystem::path(*opt.out_dir) / "report.json", to_json(rep));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kInput;
    }
  }
  if (opt.format == Format::Json) {
    out << Json({{"summary", summary}, {"povm", to_json(res.povm)}, {"report", to_json(rep)}}).dump(2)
        << '\n';
  } else {
    out << std::setprecision(12) << "ensemble    " << opt.ensemble << '\n'
        << "objective   " << objective << "  (success " << rep.success << " x scale "
        << ensemble->objective_scale() << ")\n"
        << "iterations  " << res.trace.iterations << (res.trace.converged ? "  converged" : "  NOT converged")
        << '\n'
        << "helstrom    " << (rep.pass ? "PASS" : "FAIL") << "  min eig " << rep.min_eigenvalue()
        << "  stationarity " << rep.max_stationarity_residual << "  pairwise " << rep.max_pairwise_residual
        << "  tol " << rep.tolerance << '\n';
  }
  if (!res.trace.converged) err << "optimizer did not converge within " << opt.max_iter << " iterations\n";
  return rep.pass ? kOk : kFail;
}

inline int cmd_verify(const std::string& ensemble_source, const std::string& povm_file, double tol,
                      Format format, std::ostream& out, std::ostream& err) {
  HelstromReport rep;
  try {
    const Ensemble ensemble = load_ensemble(ensemble_source);
    const Povm povm = load_povm(povm_file);
    if (povm.dim() != ensemble.dim() || povm.size() != ensemble.size()) {
      throw InputError("POVM has " + std::to_string(povm.size()) + " effects of dimension " +
                       std::to_string(povm.dim()) + "; ensemble has " + std::to_string(ensemble.size()) +
                       " states of dimension " + std::to_string(ensemble.dim()));
    }
    const PovmReport pr = validate_povm(povm, tol);
    if (!pr.pass) {
      err << "POVM invalid: completeness residual " << pr.completeness_residual << ", min effect eigenvalue "
          << pr.min_effect_eigenvalue << '\n';
    }
    rep = check_helstrom_conditions(ensemble, povm, tol);
    rep.pass = rep.pass && pr.pass;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  if (format == Format::Json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    out << std::setprecision(12) << "helstrom " << (rep.pass ? "PASS" : "FAIL") << "\n  success "
        << rep.success << "\n  min eigenvalue of Gamma - p_j rho_j " << rep.min_eigenvalue()
        << "\n  stationarity residual " << rep.max_stationarity_residual << "\n  pairwise residual "
        << rep.max_pairwise_residual << "\n  Gamma anti-Hermitian residual "
        << rep.gamma_antihermitian_residual << "\n  tolerance " << rep.tolerance << '\n';
  }
  return rep.pass ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// simulate / catalog

struct SimulateOptions {
  std::string protocol;
  std::optional<std::string> ensemble;  ///< defaults to the protocol's own
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 42;
  Format format = Format::Table;
  std::optional<std::string> out_dir;
};

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const LoccProtocol proto = load_protocol(opt.protocol);
    const std::string source = opt.ensemble ? *opt.ensemble : proto.ensemble;
    if (source.empty()) throw InputError("--ensemble is required for this protocol");
    const Ensemble ensemble = load_ensemble(source);
    const ProtocolInfo info = validate_protocol(proto);
    const double exact = evaluate_exact(proto, ensemble);
    const SampleReport rep = sample(proto, ensemble, opt.shots, opt.seed);
    const double sigma = std::sqrt(std::max(0.0, exact * (1.0 - exact)) / static_cast<double>(opt.shots));
    Json j = {{"protocol", proto.name},
              {"pattern", to_string(proto.pattern)},
              {"messages", info.messages},
              {"exact", exact},
              {"sigma", sigma},
              {"deviation_in_sigma", sigma > 0 ? (rep.aggregate - exact) / sigma : 0.0},
              {"sample", to_json(rep)}};
    if (opt.out_dir) {
      std::filesystem::create_directories(*opt.out_dir);
      write_file(std::filesystem::path(*opt.out_dir) / "simulate.json", j);
    }
    if (opt.format == Format::Json) {
      out << j.dump(2) << '\n';
    } else {
      out << std::setprecision(10) << "protocol   " << proto.name << " (" << to_string(proto.pattern) << ", "
          << info.messages << " message" << (info.messages == 1 ? "" : "s") << ")\n"
          << "exact      " << exact << '\n'
          << "sampled    " << rep.aggregate << "  (" << rep.shots << " shots, seed " << rep.seed << ")\n"
          << "sigma      " << sigma << '\n';
      for (std::size_t s = 0; s < rep.labels.size(); ++s) {
        out << "  " << std::left << std::setw(12) << rep.labels[s] << rep.frequencies[s] << "  ("
            << rep.successes[s] << "/" << rep.trials[s] << ")\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

inline int cmd_catalog(Format format, std::ostream& out) {
  const auto protocols = builtin_protocols();
  if (format == Format::Json) {
    Json ens = Json::object(), prot = Json::object();
    for (const auto& [name, e] : ensemble_registry()) ens[name] = e.description;
    for (const auto& [name, p] : protocols) {
      prot[name] = {{"ensemble", p.ensemble}, {"pattern", to_string(p.pattern)},
                    {"messages", validate_protocol(p).messages}};
    }
    out << Json({{"ensembles", ens}, {"protocols", prot}}).dump(2) << '\n';
    return kOk;
  }
  out << "ensembles:\n";
  for (const auto& [name, e] : ensemble_registry()) {
    out << "  " << std::left << std::setw(20) << name << e.description << '\n';
  }
  out << "protocols:\n";
  for (const auto& [name, p] : protocols) {
    out << "  " << std::left << std::setw(24) << name << std::setw(10) << p.ensemble << to_string(p.pattern)
        << ", " << validate_protocol(p).messages << " message(s)\n";
  }
  return kOk;
}

}  // namespace locdisc::cli

#endif  // LOCDISC_CLI_HPP
