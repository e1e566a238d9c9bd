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


// Persistence: transcripts and reports as JSON with sorted keys, plot data
// as CSV. All output uses LF line endings and is byte-stable for a fixed
// seed and configuration.

#ifndef TEPIR_IO_HPP_
#define TEPIR_IO_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "tepir/bounds.hpp"
#include "tepir/scheme.hpp"

namespace tepir {

// Coefficient rows are stored sparsely as [index, value] pairs.
nlohmann::json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

nlohmann::json bound_report_json(const BoundReport& r);

// Header line plus x,outer,inner,gap rows at 12 decimals.
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& header);

std::string dump_json(const nlohmann::json& j);

// Throw IoError on failure.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

void emit_transcript(const std::string& path, const Transcript& t);
Transcript load_transcript(const std::string& path);
void emit_report(const std::string& path, const nlohmann::json& report);
void emit_csv(const std::string& path, const std::vector<SweepRow>& rows, const std::string& header);

}  // namespace tepir

#endif  // TEPIR_IO_HPP_
