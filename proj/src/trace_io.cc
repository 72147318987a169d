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

#include "dplqg/trace_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "dplqg/errors.h"

namespace dplqg {
namespace {

void WriteHeaderRange(std::ostream& out, std::string_view prefix,
                      Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) out << ',' << prefix << i;
}

void WritePadded(std::ostream& out, const Eigen::VectorXd& v,
                 Eigen::Index width) {
  for (Eigen::Index i = 0; i < width; ++i) {
    out << ',';
    if (i < v.size()) out << FormatDouble(v[i]);
  }
}

}  // namespace

std::string FormatDouble(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string FormatVector(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += FormatDouble(v[i]);
  }
  return s + "]";
}

std::string FormatMatrix(const Eigen::MatrixXd& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) s += ", ";
    s += FormatVector(m.row(i).transpose());
  }
  return s + "]";
}

std::string_view MessageKindName(MessageKind kind) {
  return kind == MessageKind::kMeasurement ? "MEASUREMENT" : "CONTROL";
}

void WriteTraceCsv(std::ostream& out, const SimulationTrace& trace,
                   const NetworkModel& model) {
  Eigen::Index state_width = 0;
  Eigen::Index input_width = 0;
  for (const auto& blk : model.blocks) {
    state_width = std::max(state_width, blk.state_dim);
    input_width = std::max(input_width, blk.input_dim);
  }
  out << "k,agent_id";
  WriteHeaderRange(out, "x_", state_width);
  WriteHeaderRange(out, "xhat_", state_width);
  WriteHeaderRange(out, "u_", input_width);
  WriteHeaderRange(out, "ybar_", state_width);
  out << ",stage_cost,avg_cost\n";

  for (const auto& rec : trace.steps) {
    for (std::size_t i = 0; i < model.blocks.size(); ++i) {
      const AgentBlock& blk = model.blocks[i];
      out << rec.k << ',' << AgentWireId(i);
      WritePadded(out, rec.x.segment(blk.state_offset, blk.state_dim),
                  state_width);
      WritePadded(out, rec.x_hat.segment(blk.state_offset, blk.state_dim),
                  state_width);
      WritePadded(out, rec.u.segment(blk.input_offset, blk.input_dim),
                  input_width);
      WritePadded(out, rec.y_bar.segment(blk.state_offset, blk.state_dim),
                  state_width);
      out << ',' << FormatDouble(rec.stage_cost) << ','
          << FormatDouble(rec.average_cost) << '\n';
    }
  }
}

void WriteWireLogCsv(std::ostream& out, const std::vector<WireMessage>& log) {
  Eigen::Index width = 0;
  for (const auto& msg : log) width = std::max(width, msg.payload.size());
  out << "kind,sender,receiver,k";
  WriteHeaderRange(out, "payload_", width);
  out << '\n';
  for (const auto& msg : log) {
    out << MessageKindName(msg.kind) << ',' << msg.sender << ','
        << msg.receiver << ',' << msg.k;
    WritePadded(out, msg.payload, width);
    out << '\n';
  }
}

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open " + tmp.string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw ValidationError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dplqg
