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

// Integer structure of the K-round retrieval scheme for N replicated
// databases, K files, T colluders and E eavesdropped links.
//
// File indices are 0-based throughout the library; subsets of files are
// bitmasks with bit i standing for file i.

#ifndef TEPIR_PARAMS_HPP_
#define TEPIR_PARAMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tepir {

using Subset = std::uint32_t;

inline int subset_size(Subset s) { return __builtin_popcount(s); }
inline bool subset_contains(Subset s, int file) { return (s >> file) & 1U; }
std::vector<int> subset_members(Subset s);
// "{1,3}" with 1-based file numbers, for reports.
std::string subset_label(Subset s);

// All nonempty subsets of K files ordered by size, then lexicographically by
// their sorted member lists.
std::vector<Subset> canonical_subsets(int k);

struct IndexRange {
  long long start = 0;
  long long size = 0;
};

struct SchemeShape {
  int n = 0;
  int k = 0;
  int t = 0;
  int e = 0;
  long long dim = 0;             // N^K, the length of every round vector
  long long j = 0;               // sum_{i<K} N^(K-1-i) T^i
  long long l = 0;               // file length in symbols
  long long round_download = 0;  // N * J
  long long rand_per_round = 0;  // E * J
  // Slot i: message positions W_i and randomness positions S_i with
  // |W_i| + |S_i| = N^K. Consecutive runs in slot order. Empty when T = N.
  std::vector<IndexRange> msg_partition;
  std::vector<IndexRange> rand_partition;

  bool all_collude() const { return t == n; }
  // N (N-T)^(|s|-1) T^(K-|s|): the per-round length of the query block for s.
  long long block_length(Subset s) const;
};

struct SchemeParams : SchemeShape {
  std::uint64_t q = 0;
};

// Integer structure only; no field is chosen. Throws InvalidParameters.
SchemeShape derive_shape(int n, int k, int t, int e);

// Full parameter set with q = q_hint or the smallest prime >= N^K + 1.
SchemeParams derive(int n, int k, int t, int e, std::optional<std::uint64_t> q_hint = std::nullopt);

struct QueryBlock {
  Subset members = 0;
  long long length = 0;      // rows per round across all databases
  long long chunk = 0;       // rows per database: length / N
  long long row_offset = 0;  // start of this block inside a database's round
};

struct DesiredBlock {
  Subset members = 0;
  long long length = 0;
  long long x_offset = 0;  // position inside V_l * S_l
  int block = 0;           // index into SubsetPlan::blocks
};

// One MDS-expanded piece of an undesired file's round vector.
struct UndesiredCode {
  Subset members = 0;           // contains the file, not the desired index
  long long alpha = 0;          // code dimension
  long long expansion = 0;      // code length (N / T) * alpha
  long long column_offset = 0;  // first of the alpha columns of S_k[:, 0:T N^(K-1)]
  long long x_offset = 0;       // first codeword symbol inside X_k
  int direct_block = 0;         // block `members`
  int mixed_block = 0;          // block `members` plus the desired index
};

// Where file k's contribution to a query block sits inside its X_k.
struct Segment {
  int block = 0;
  long long x_offset = 0;
  long long length = 0;
};

struct SubsetPlan {
  int desired = 0;
  std::vector<QueryBlock> blocks;
  std::vector<DesiredBlock> desired_family;
  // Indexed by file; empty for the desired file.
  std::vector<std::vector<UndesiredCode>> undesired;
  // Indexed by file; ordered by x_offset and covering [0, N^K).
  std::vector<std::vector<Segment>> segments;

  int block_index(Subset s) const;
};

// Block layout for retrieving file `desired` (0-based). Requires T < N.
SubsetPlan subset_plan(const SchemeShape& shape, int desired);

struct DivisibilityEntry {
  Subset members = 0;
  long long length = 0;
  bool divisible_by_n = false;
};

struct DivisibilityReport {
  std::vector<DivisibilityEntry> blocks;
  bool expansions_integral = false;  // T divides N * alpha for every undesired block
  bool j_identity = false;           // J (N - T) = N^K - T^K
  bool ok() const;
};

DivisibilityReport check_divisibilities(const SchemeShape& shape);

}  // namespace tepir

#endif  // TEPIR_PARAMS_HPP_
