// Copyright 2026 The tepir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tepir/io.hpp"

#include <fstream>
#include <sstream>

#include "tepir/error.hpp"

namespace tepir {
namespace {

nlohmann::json sparse(const RowVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) out.push_back({i, v(i).value()});
  return out;
}

RowVector dense(const nlohmann::json& pairs, Index size, const PrimeField& f) {
  RowVector v = zero_row(f, size);
  for (const auto& p : pairs) {
    const auto i = p.at(0).get<Index>();
    if (i < 0 || i >= size) throw Error(ErrorCode::kIo, "coefficient index out of range");
    v(i) = f(p.at(1).get<std::int64_t>());
  }
  return v;
}

nlohmann::json optional_rational(const std::optional<Rational>& r) {
  return r ? nlohmann::json(to_string(*r)) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json transcript_to_json(const Transcript& t) {
  const SchemeParams& p = t.params;
  nlohmann::json dbs = nlohmann::json::array();
  for (const auto& db : t.databases) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : db) {
      nlohmann::json r = {{"round", row.round + 1},
                          {"msg_coeffs", sparse(row.query.msg)},
                          {"rand_coeffs", sparse(row.query.rand)}};
      r["answer"] = row.answer ? nlohmann::json(row.answer->value()) : nlohmann::json(nullptr);
      rows.push_back(std::move(r));
    }
    dbs.push_back(std::move(rows));
  }
  return {{"params",
           {{"n", p.n}, {"k", p.k}, {"t", p.t}, {"e", p.e}, {"q", p.q}, {"j", p.j}, {"l", p.l}}},
          {"desired_index_commitment", t.desired_index_commitment},
          {"seed_commitment", t.seed_commitment},
          {"databases", dbs}};
}

Transcript transcript_from_json(const nlohmann::json& j) {
  try {
    const auto& jp = j.at("params");
    Transcript t;
    t.params = derive(jp.at("n").get<int>(), jp.at("k").get<int>(), jp.at("t").get<int>(),
                      jp.at("e").get<int>(), jp.at("q").get<std::uint64_t>());
    const PrimeField f(t.params.q);
    const Index msg_len = t.params.k * t.params.l;
    const Index rand_len = t.params.k * t.params.rand_per_round;
    t.desired_index_commitment = j.at("desired_index_commitment").get<std::string>();
    t.seed_commitment = j.at("seed_commitment").get<std::string>();
    for (const auto& db : j.at("databases")) {
      std::vector<AnswerRow> rows;
      for (const auto& r : db) {
        AnswerRow row;
        row.round = r.at("round").get<int>() - 1;
        row.query.msg = dense(r.at("msg_coeffs"), msg_len, f);
        row.query.rand = dense(r.at("rand_coeffs"), rand_len, f);
        if (!r.at("answer").is_null()) row.answer = f(r.at("answer").get<std::int64_t>());
        rows.push_back(std::move(row));
      }
      t.databases.push_back(std::move(rows));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("malformed transcript: ") + e.what());
  }
}

nlohmann::json bound_report_json(const BoundReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"t", r.t},
          {"e", r.e},
          {"capacity_e_ge_t", optional_rational(r.capacity_e_ge_t)},
          {"outer_bound", to_string(r.outer_bound)},
          {"inner_bound", to_string(r.inner_bound)},
          {"gap", to_string(r.gap)},
          {"secrecy_lower_bound", optional_rational(r.secrecy_lower_bound)},
          {"achieved_secrecy", optional_rational(r.achieved_secrecy)},
          {"outer_decimal", to_decimal(r.outer_bound)},
          {"inner_decimal", to_decimal(r.inner_bound)}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& header) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    out += to_decimal(row.x) + "," + to_decimal(row.report.outer_bound) + "," +
           to_decimal(row.report.inner_bound) + "," + to_decimal(row.report.gap) + "\n";
  }
  return out;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  f << content;
  f.close();
  if (!f) throw Error(ErrorCode::kIo, "failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void emit_transcript(const std::string& path, const Transcript& t) {
  write_text(path, dump_json(transcript_to_json(t)));
}

Transcript load_transcript(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, path + ": " + e.what());
  }
  return transcript_from_json(j);
}

void emit_report(const std::string& path, const nlohmann::json& report) {
  write_text(path, dump_json(report));
}

void emit_csv(const std::string& path, const std::vector<SweepRow>& rows, const std::string& header) {
  write_text(path, sweep_csv(rows, header));
}

}  // namespace tepir
