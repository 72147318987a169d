// Copyright 2026 The dplqg Authors
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

#include "dplqg/config.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dplqg/errors.h"
#include "dplqg/linalg.h"
#include "dplqg/rng.h"

namespace dplqg {
namespace {

using nlohmann::json;

Eigen::MatrixXd MatrixFromJson(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ValidationError(what + ": expected a nonempty list of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw ValidationError(what + ": ragged row " + std::to_string(i));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) {
        throw ValidationError(what + ": non-numeric entry");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd VectorFromJson(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected a list");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError(what + ": non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorToJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

const json& Require(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(ctx + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

MatrixSource SourceFromJson(const json& j, const std::string& what) {
  MatrixSource src;
  if (j.is_object()) {
    const json& rnd = Require(j, "random_pd", what);
    src.random_seed = Require(rnd, "seed", what).get<std::uint64_t>();
  } else {
    src.value = MatrixFromJson(j, what);
  }
  return src;
}

json SourceToJson(const MatrixSource& src) {
  if (src.random_seed) return {{"random_pd", {{"seed", *src.random_seed}}}};
  return MatrixToJson(*src.value);
}

AgentModel AgentFromJson(const json& j, const std::string& ctx) {
  AgentModel a;
  a.A = MatrixFromJson(Require(j, "A", ctx), ctx + ".A");
  a.B = MatrixFromJson(Require(j, "B", ctx), ctx + ".B");
  a.C = MatrixFromJson(Require(j, "C", ctx), ctx + ".C");
  a.W = MatrixFromJson(Require(j, "W", ctx), ctx + ".W");
  const json& p = Require(j, "privacy", ctx);
  a.privacy.epsilon = Require(p, "epsilon", ctx).get<double>();
  a.privacy.delta = Require(p, "delta", ctx).get<double>();
  a.privacy.adjacency_bound = Require(p, "b", ctx).get<double>();
  a.x0_mean = VectorFromJson(Require(j, "x0_mean", ctx), ctx + ".x0_mean");
  if (j.contains("x0_cov")) {
    a.x0_cov = MatrixFromJson(j.at("x0_cov"), ctx + ".x0_cov");
  }
  return a;
}

json AgentToJson(const AgentModel& a) {
  json j = {{"A", MatrixToJson(a.A)},
            {"B", MatrixToJson(a.B)},
            {"C", MatrixToJson(a.C)},
            {"W", MatrixToJson(a.W)},
            {"privacy",
             {{"epsilon", a.privacy.epsilon},
              {"delta", a.privacy.delta},
              {"b", a.privacy.adjacency_bound}}},
            {"x0_mean", VectorToJson(a.x0_mean)}};
  if (a.x0_cov) j["x0_cov"] = MatrixToJson(*a.x0_cov);
  return j;
}

}  // namespace

Eigen::MatrixXd MatrixSource::Resolve(Eigen::Index n) const {
  if (value) {
    RequireShape(*value, n, n, "cost matrix");
    return *value;
  }
  if (!random_seed) throw ValidationError("cost matrix source is empty");
  GaussianStream stream(DeriveSeed(*random_seed, 0, StreamKind::kCostMatrix));
  return RandomPositiveDefinite(n, stream);
}

ExperimentConfig ParseConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") +
                          e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.name = doc.value("name", "");
    const json& agents = Require(doc, "agents", "config");
    if (!agents.is_array() || agents.empty()) {
      throw ValidationError("config: \"agents\" must be a nonempty list");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      cfg.agents.push_back(
          AgentFromJson(agents[i], "agents[" + std::to_string(i) + "]"));
    }
    const json& cost = Require(doc, "cost", "config");
    cfg.q = SourceFromJson(Require(cost, "Q", "cost"), "cost.Q");
    cfg.r = SourceFromJson(Require(cost, "R", "cost"), "cost.R");
    if (doc.contains("simulation")) {
      const json& sim = doc.at("simulation");
      cfg.steps = sim.value("steps", cfg.steps);
      cfg.seed = sim.value("seed", cfg.seed);
    }
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
    if (doc.contains("sweep")) {
      const json& s = doc.at("sweep");
      SweepSettings sweep;
      for (const auto& e : Require(s, "epsilons", "sweep")) {
        sweep.epsilons.push_back(e.get<double>());
      }
      sweep.delta = s.value("delta", sweep.delta);
      sweep.steps = s.value("steps", sweep.steps);
      sweep.seeds = s.value("seeds", sweep.seeds);
      cfg.sweep = std::move(sweep);
    }
    if (cfg.steps < 0) throw ValidationError("config: steps must be >= 0");
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string SerializeConfig(const ExperimentConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["agents"] = json::array();
  for (const auto& a : cfg.agents) doc["agents"].push_back(AgentToJson(a));
  doc["cost"] = {{"Q", SourceToJson(cfg.q)}, {"R", SourceToJson(cfg.r)}};
  doc["simulation"] = {{"steps", cfg.steps}, {"seed", cfg.seed}};
  doc["output_dir"] = cfg.output_dir;
  if (cfg.sweep) {
    doc["sweep"] = {{"epsilons", cfg.sweep->epsilons},
                    {"delta", cfg.sweep->delta},
                    {"steps", cfg.sweep->steps},
                    {"seeds", cfg.sweep->seeds}};
  }
  return doc.dump(2) + "\n";
}

CostMatrices ResolveCost(const ExperimentConfig& config) {
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  for (const auto& a : config.agents) {
    n += a.state_dim();
    m += a.input_dim();
  }
  return CostMatrices{config.q.Resolve(n), config.r.Resolve(m)};
}

NetworkModel BuildNetwork(const ExperimentConfig& config) {
  const CostMatrices cost = ResolveCost(config);
  return AssembleNetwork(config.agents, cost.q, cost.r);
}

std::vector<AgentModel> WithPrivacy(const std::vector<AgentModel>& agents,
                                    double epsilon, double delta) {
  std::vector<AgentModel> out = agents;
  for (auto& a : out) {
    a.privacy.epsilon = epsilon;
    a.privacy.delta = delta;
  }
  return out;
}

}  // namespace dplqg
