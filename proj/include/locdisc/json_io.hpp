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

#ifndef LOCDISC_JSON_IO_HPP
#define LOCDISC_JSON_IO_HPP

/**
 * @file json_io.hpp
 * @brief JSON encodings.
 *
 *   complex   [re, im]
 *   Ket       {"dim": n, "amps": [[re, im], ...]}
 *   operator  row-major nested arrays of [re, im]
 *   Ensemble  {"dims": [dA, dB], "priors": [...], "states": [Ket | operator, ...],
 *              "labels": [...]?, "objective_scale": x?}
 *   Povm      {"effects": [operator, ...]}
 *   Protocol  {"parties": ["A","B"], "dims": [dA, dB], "root": node,
 *              "name": s?, "pattern": "one-way"|"two-way"?}
 *             node = {"party": "A"|"B", "effects": [...], "children": [...]}
 *                  | {"guess": "psi_01"}
 *
 * Decoding errors throw InputError naming the offending field.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "locdisc/helstrom.hpp"
#include "locdisc/locc.hpp"
#include "locdisc/quantum.hpp"

namespace locdisc {

using Json = nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

namespace json_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline int positive_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) fail(path, "expected a positive integer");
  return j.get<int>();
}

inline Complex complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

}  // namespace json_detail

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const Ket& k) {
  Json amps = Json::array();
  for (int i = 0; i < k.dim(); ++i) amps.push_back(to_json(k[i]));
  return {{"dim", k.dim()}, {"amps", std::move(amps)}};
}

inline ComplexMatrix operator_from_json(const Json& j, const std::string& path) {
  using namespace json_detail;
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(rp, "expected a row of " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = complex(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

inline Ket ket_from_json(const Json& j, const std::string& path) {
  using namespace json_detail;
  const int dim = positive_int(field(j, "dim", path), path + ".dim");
  const Json& amps = field(j, "amps", path);
  if (!amps.is_array() || static_cast<int>(amps.size()) != dim) {
    fail(path + ".amps", "expected " + std::to_string(dim) + " amplitudes");
  }
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex(amps[i], path + ".amps[" + std::to_string(i) + "]");
  try {
    return Ket(std::move(v));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

inline Json to_json(const Ensemble& e) {
  Json states = Json::array();
  for (const auto& s : e.states()) states.push_back(s.is_pure() ? to_json(s.ket()) : to_json(s.density()));
  Json labels = Json::array();
  for (const auto& l : e.labels()) labels.push_back(l.name);
  Json out = {{"dims", e.dims()}, {"priors", e.priors()}, {"states", std::move(states)},
              {"labels", std::move(labels)}};
  if (e.objective_scale() != 1.0) out["objective_scale"] = e.objective_scale();
  return out;
}

inline Ensemble ensemble_from_json(const Json& j, const std::string& path = "ensemble") {
  using namespace json_detail;
  const Json& jd = field(j, "dims", path);
  if (!jd.is_array() || jd.empty()) fail(path + ".dims", "expected a non-empty array");
  std::vector<int> dims;
  for (std::size_t i = 0; i < jd.size(); ++i) {
    dims.push_back(positive_int(jd[i], path + ".dims[" + std::to_string(i) + "]"));
  }
  const Json& jp = field(j, "priors", path);
  if (!jp.is_array()) fail(path + ".priors", "expected an array");
  std::vector<double> priors;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    priors.push_back(number(jp[i], path + ".priors[" + std::to_string(i) + "]"));
  }
  const Json& js = field(j, "states", path);
  if (!js.is_array() || js.empty()) fail(path + ".states", "expected a non-empty array");
  if (js.size() != priors.size()) {
    fail(path + ".priors", std::to_string(priors.size()) + " priors for " +
                               std::to_string(js.size()) + " states");
  }
  std::vector<State> states;
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string sp = path + ".states[" + std::to_string(i) + "]";
    if (js[i].is_object()) {
      states.emplace_back(ket_from_json(js[i], sp));
    } else {
      try {
        states.emplace_back(DensityOperator(operator_from_json(js[i], sp)));
      } catch (const InputError&) {
        throw;
      } catch (const Error& e) {
        fail(sp, e.what());
      }
    }
  }
  std::vector<StateLabel> labels;
  if (j.contains("labels")) {
    const Json& jl = j["labels"];
    if (!jl.is_array() || jl.size() != js.size()) {
      fail(path + ".labels", "expected one label per state");
    }
    for (std::size_t i = 0; i < jl.size(); ++i) {
      if (!jl[i].is_string()) fail(path + ".labels[" + std::to_string(i) + "]", "expected a string");
      labels.push_back(StateLabel::named(jl[i].get<std::string>()));
    }
  }
  double scale = 1.0;
  if (j.contains("objective_scale")) scale = number(j["objective_scale"], path + ".objective_scale");
  try {
    return Ensemble(std::move(dims), std::move(states), std::move(priors), std::move(labels), scale);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

inline Json to_json(const Povm& p) {
  Json effects = Json::array();
  for (const auto& e : p.effects()) effects.push_back(to_json(e.matrix()));
  return {{"effects", std::move(effects)}};
}

inline Povm povm_from_json(const Json& j, const std::string& path = "povm") {
  using namespace json_detail;
  const Json& je = field(j, "effects", path);
  if (!je.is_array() || je.empty()) fail(path + ".effects", "expected a non-empty array");
  std::vector<HermitianOperator> effects;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string ep = path + ".effects[" + std::to_string(i) + "]";
    try {
      effects.emplace_back(operator_from_json(je[i], ep));
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      fail(ep, e.what());
    }
  }
  try {
    return Povm(std::move(effects));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

inline Json to_json(const PovmReport& r) {
  return {{"completeness_residual", r.completeness_residual},
          {"min_effect_eigenvalue", r.min_effect_eigenvalue},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

inline Json to_json(const HelstromReport& r) {
  return {{"gamma", to_json(r.gamma)},
          {"gamma_antihermitian_residual", r.gamma_antihermitian_residual},
          {"min_eigenvalues", r.min_eigenvalues},
          {"max_stationarity_residual", r.max_stationarity_residual},
          {"max_pairwise_residual", r.max_pairwise_residual},
          {"success", r.success},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

inline HelstromReport helstrom_report_from_json(const Json& j, const std::string& path = "report") {
  using namespace json_detail;
  HelstromReport r;
  r.gamma = operator_from_json(field(j, "gamma", path), path + ".gamma");
  r.gamma_antihermitian_residual = number(field(j, "gamma_antihermitian_residual", path), path);
  const Json& me = field(j, "min_eigenvalues", path);
  if (!me.is_array()) fail(path + ".min_eigenvalues", "expected an array");
  for (std::size_t i = 0; i < me.size(); ++i) r.min_eigenvalues.push_back(number(me[i], path));
  r.max_stationarity_residual = number(field(j, "max_stationarity_residual", path), path);
  r.max_pairwise_residual = number(field(j, "max_pairwise_residual", path), path);
  r.success = number(field(j, "success", path), path);
  r.tolerance = number(field(j, "tolerance", path), path);
  const Json& pass = field(j, "pass", path);
  if (!pass.is_boolean()) fail(path + ".pass", "expected a boolean");
  r.pass = pass.get<bool>();
  return r;
}

inline Json to_json(const ProtocolNode& n) {
  if (n.is_leaf()) return {{"guess", n.guess}};
  Json effects = Json::array(), children = Json::array();
  for (const auto& e : n.effects) effects.push_back(to_json(e));
  for (const auto& c : n.children) children.push_back(to_json(c));
  return {{"party", to_string(n.party)}, {"effects", std::move(effects)}, {"children", std::move(children)}};
}

inline Json to_json(const LoccProtocol& p) {
  Json out = {{"name", p.name},
              {"parties", {"A", "B"}},
              {"dims", {p.dims.a, p.dims.b}},
              {"pattern", to_string(p.pattern)},
              {"root", to_json(p.root)}};
  if (!p.ensemble.empty()) out["ensemble"] = p.ensemble;
  return out;
}

inline ProtocolNode protocol_node_from_json(const Json& j, const std::string& path) {
  using namespace json_detail;
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("guess")) {
    if (!j["guess"].is_string()) fail(path + ".guess", "expected a string");
    return ProtocolNode::leaf(j["guess"].get<std::string>());
  }
  const Json& party = field(j, "party", path);
  if (!party.is_string() || (party != "A" && party != "B")) fail(path + ".party", "expected \"A\" or \"B\"");
  const Json& je = field(j, "effects", path);
  const Json& jc = field(j, "children", path);
  if (!je.is_array() || je.empty()) fail(path + ".effects", "expected a non-empty array");
  if (!jc.is_array() || jc.size() != je.size()) fail(path + ".children", "expected one child per effect");
  std::vector<ComplexMatrix> effects;
  std::vector<ProtocolNode> children;
  for (std::size_t i = 0; i < je.size(); ++i) {
    effects.push_back(operator_from_json(je[i], path + ".effects[" + std::to_string(i) + "]"));
    children.push_back(protocol_node_from_json(jc[i], path + ".children[" + std::to_string(i) + "]"));
  }
  return ProtocolNode::measure(party == "A" ? Party::A : Party::B, std::move(effects), std::move(children));
}

inline LoccProtocol protocol_from_json(const Json& j, const std::string& path = "protocol") {
  using namespace json_detail;
  LoccProtocol p;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(path + ".name", "expected a string");
    p.name = j["name"].get<std::string>();
  } else {
    p.name = "custom";
  }
  const Json& parties = field(j, "parties", path);
  if (parties != Json::array({"A", "B"})) fail(path + ".parties", "expected [\"A\", \"B\"]");
  const Json& dims = field(j, "dims", path);
  if (!dims.is_array() || dims.size() != 2) fail(path + ".dims", "expected [dA, dB]");
  p.dims = {positive_int(dims[0], path + ".dims[0]"), positive_int(dims[1], path + ".dims[1]")};
  if (j.contains("pattern")) {
    const Json& pat = j["pattern"];
    if (pat == "one-way") {
      p.pattern = Communication::OneWay;
    } else if (pat == "two-way") {
      p.pattern = Communication::TwoWay;
    } else {
      fail(path + ".pattern", "expected \"one-way\" or \"two-way\"");
    }
  }
  if (j.contains("ensemble")) {
    if (!j["ensemble"].is_string()) fail(path + ".ensemble", "expected a string");
    p.ensemble = j["ensemble"].get<std::string>();
  }
  p.root = protocol_node_from_json(field(j, "root", path), path + ".root");
  try {
    validate_protocol(p);
  } catch (const ProtocolError& e) {
    fail(path, e.what());
  }
  return p;
}

inline Json to_json(const SampleReport& r) {
  return {{"protocol", r.protocol},
          {"shots", r.shots},
          {"seed", r.seed},
          {"labels", r.labels},
          {"trials", r.trials},
          {"successes", r.successes},
          {"frequencies", r.frequencies},
          {"aggregate", r.aggregate},
          {"standard_error", r.standard_error}};
}

inline Json parse_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError(file + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
}

}  // namespace locdisc

#endif  // LOCDISC_JSON_IO_HPP
