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

#include "tepir/params.hpp"

#include <algorithm>

#include "tepir/error.hpp"
#include "tepir/field.hpp"

namespace tepir {
namespace {

constexpr int kMaxFiles = 20;

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::kInvalidParameters, "parameter sizes overflow 64-bit integers");
  }
  return r;
}

long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::kInvalidParameters, "parameter sizes overflow 64-bit integers");
  }
  return r;
}

long long ipow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidParameters, what);
}

}  // namespace

std::vector<int> subset_members(Subset s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

std::string subset_label(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int m : subset_members(s)) {
    if (!first) out += ",";
    out += std::to_string(m + 1);
    first = false;
  }
  return out + "}";
}

std::vector<Subset> canonical_subsets(int k) {
  std::vector<Subset> all;
  for (Subset s = 1; s < (Subset{1} << k); ++s) all.push_back(s);
  std::sort(all.begin(), all.end(), [](Subset a, Subset b) {
    if (subset_size(a) != subset_size(b)) return subset_size(a) < subset_size(b);
    return subset_members(a) < subset_members(b);
  });
  return all;
}

long long SchemeShape::block_length(Subset s) const {
  const int size = subset_size(s);
  return checked_mul(checked_mul(n, ipow(n - t, size - 1)), ipow(t, k - size));
}

SchemeShape derive_shape(int n, int k, int t, int e) {
  if (k < 1) invalid("K must be at least 1");
  if (k > kMaxFiles) invalid("K above " + std::to_string(kMaxFiles) + " is not supported");
  if (t < 1) invalid("T must be at least 1");
  if (t > n) invalid("T cannot exceed N");
  if (e < 0) invalid("E must be nonnegative");
  if (e > t) invalid("E cannot exceed T");
  if (t == n && e >= n) invalid("all-collude case needs E < N");

  SchemeShape s;
  s.n = n;
  s.k = k;
  s.t = t;
  s.e = e;
  s.dim = ipow(n, k);
  for (int i = 0; i < k; ++i) s.j = checked_add(s.j, checked_mul(ipow(n, k - 1 - i), ipow(t, i)));
  s.round_download = checked_mul(n, s.j);
  s.rand_per_round = checked_mul(e, s.j);

  if (s.all_collude()) {
    // Separate scheme: one N-symbol answer per file, masked by E symbols.
    s.l = n - e;
    return s;
  }
  s.l = checked_mul(k, s.dim) - s.rand_per_round;
  long long msg_at = 0;
  long long rand_at = 0;
  for (int i = 1; i <= k; ++i) {
    const long long r = checked_mul(checked_mul(e, ipow(t, i - 1)), ipow(n, k - i));
    s.msg_partition.push_back({msg_at, s.dim - r});
    s.rand_partition.push_back({rand_at, r});
    msg_at += s.dim - r;
    rand_at += r;
  }
  return s;
}

SchemeParams derive(int n, int k, int t, int e, std::optional<std::uint64_t> q_hint) {
  SchemeParams p;
  static_cast<SchemeShape&>(p) = derive_shape(n, k, t, e);
  const auto need = static_cast<std::uint64_t>(p.dim) + 1;
  if (q_hint) {
    if (!is_prime(*q_hint)) {
      throw Error(ErrorCode::kNonPrimeModulus, std::to_string(*q_hint) + " is not prime");
    }
    if (*q_hint < need) {
      throw Error(ErrorCode::kFieldTooSmall, "q = " + std::to_string(*q_hint) + " but at least " +
                                                 std::to_string(need) + " elements are needed");
    }
    p.q = *q_hint;
  } else {
    if (need > kMaxModulus) {
      throw Error(ErrorCode::kFieldTooSmall,
                  "N^K = " + std::to_string(p.dim) + " needs a field beyond 2^31");
    }
    p.q = next_prime(need);
  }
  if (p.q > kMaxModulus) throw Error(ErrorCode::kFieldTooSmall, "field modulus beyond 2^31");
  return p;
}

int SubsetPlan::block_index(Subset s) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].members == s) return static_cast<int>(i);
  throw Error(ErrorCode::kOutOfRange, "no block for subset " + subset_label(s));
}

SubsetPlan subset_plan(const SchemeShape& shape, int desired) {
  if (desired < 0 || desired >= shape.k) {
    throw Error(ErrorCode::kOutOfRange, "file index " + std::to_string(desired) + " outside [0, " +
                                            std::to_string(shape.k) + ")");
  }
  if (shape.all_collude()) {
    throw Error(ErrorCode::kPreconditionViolation, "subset plan needs T < N");
  }
  SubsetPlan plan;
  plan.desired = desired;

  long long row_at = 0;
  for (Subset s : canonical_subsets(shape.k)) {
    QueryBlock b;
    b.members = s;
    b.length = shape.block_length(s);
    if (b.length % shape.n != 0) {
      throw Error(ErrorCode::kIndivisibleBlock,
                  "block " + subset_label(s) + " of length " + std::to_string(b.length));
    }
    b.chunk = b.length / shape.n;
    b.row_offset = row_at;
    row_at += b.chunk;
    plan.blocks.push_back(b);
  }

  plan.undesired.resize(shape.k);
  plan.segments.resize(shape.k);
  const Subset self = Subset{1} << desired;
  long long x_at = 0;
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    const QueryBlock& b = plan.blocks[i];
    if (!(b.members & self)) continue;
    plan.desired_family.push_back({b.members, b.length, x_at, static_cast<int>(i)});
    plan.segments[desired].push_back({static_cast<int>(i), x_at, b.length});
    x_at += b.length;
  }

  for (int k = 0; k < shape.k; ++k) {
    if (k == desired) continue;
    long long col_at = 0;
    long long at = 0;
    for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
      const QueryBlock& b = plan.blocks[i];
      if (!subset_contains(b.members, k) || (b.members & self)) continue;
      UndesiredCode c;
      c.members = b.members;
      c.alpha = b.length;
      c.expansion = checked_mul(shape.n, c.alpha) / shape.t;
      c.column_offset = col_at;
      c.x_offset = at;
      c.direct_block = static_cast<int>(i);
      c.mixed_block = plan.block_index(b.members | self);
      plan.undesired[k].push_back(c);
      plan.segments[k].push_back({c.direct_block, at, c.alpha});
      plan.segments[k].push_back({c.mixed_block, at + c.alpha, c.expansion - c.alpha});
      col_at += c.alpha;
      at += c.expansion;
    }
  }
  return plan;
}

bool DivisibilityReport::ok() const {
  return j_identity && expansions_integral &&
         std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.divisible_by_n; });
}

DivisibilityReport check_divisibilities(const SchemeShape& shape) {
  DivisibilityReport r;
  r.j_identity = checked_mul(shape.j, shape.n - shape.t) ==
                 ipow(shape.n, shape.k) - ipow(shape.t, shape.k);
  r.expansions_integral = true;
  for (Subset s : canonical_subsets(shape.k)) {
    const long long len = shape.block_length(s);
    r.blocks.push_back({s, len, len % shape.n == 0});
    // Undesired blocks never contain every file, so T^(K-|s|) has a factor T.
    if (subset_size(s) < shape.k && checked_mul(shape.n, len) % shape.t != 0) {
      r.expansions_integral = false;
    }
  }
  return r;
}

}  // namespace tepir
