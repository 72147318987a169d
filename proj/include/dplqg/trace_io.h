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

#ifndef DPLQG_TRACE_IO_H_
#define DPLQG_TRACE_IO_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dplqg/network_sim.h"

namespace dplqg {

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);

// "[[a, b], [c, d]]" row-major; vectors print as "[a, b]".
std::string FormatMatrix(const Eigen::MatrixXd& m);
std::string FormatVector(const Eigen::VectorXd& v);

// Trace CSV, one row per (k, agent):
//
//   k,agent_id,x_0..x_{d-1},xhat_0..,u_0..u_{m-1},ybar_0..,stage_cost,avg_cost
//
// d is the largest agent state dimension and m the largest input dimension;
// cells past an agent's own dimension are left empty. stage_cost and
// avg_cost are network-level and repeat across the agents of a step.
void WriteTraceCsv(std::ostream& out, const SimulationTrace& trace,
                   const NetworkModel& model);

// Wire log CSV, one row per message in send order:
//
//   kind,sender,receiver,k,payload_0..payload_{p-1}
//
// kind is MEASUREMENT or CONTROL; id 0 is the cloud, agents are 1..N.
void WriteWireLogCsv(std::ostream& out, const std::vector<WireMessage>& log);

std::string_view MessageKindName(MessageKind kind);

// Writes to a sibling temporary file, then renames over `path`.
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents);

}  // namespace dplqg

#endif  // DPLQG_TRACE_IO_H_
