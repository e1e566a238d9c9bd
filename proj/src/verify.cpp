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


#include "tepir/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tepir/error.hpp"

namespace tepir {
namespace {

constexpr int kMaxListed = 8;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& label) {
  return make_stream(seed, label)();
}

std::vector<std::vector<int>> subsets_of(int n, int size) {
  std::vector<std::vector<int>> out;
  for (Subset s = 0; s < (Subset{1} << n); ++s)
    if (subset_size(s) == size) out.push_back(subset_members(s));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v) out.push_back(x + 1);
  return out;
}

// Positions of X_k that reach a database in `coalition`.
std::vector<Index> seen_positions(const SubsetPlan& plan, int k, const std::vector<int>& coalition) {
  std::vector<Index> seen;
  for (const auto& seg : plan.segments[k]) {
    const QueryBlock& blk = plan.blocks[seg.block];
    for (long long j = 0; j < seg.length; ++j) {
      const int db = static_cast<int>(j / blk.chunk);
      if (std::find(coalition.begin(), coalition.end(), db) != coalition.end()) {
        seen.push_back(seg.x_offset + j);
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

}  // namespace

nlohmann::json Report::to_json() const {
  return {{"check", check}, {"config", config}, {"pass", pass}, {"details", details}};
}

nlohmann::json config_json(const SchemeParams& p) {
  return {{"n", p.n}, {"k", p.k}, {"t", p.t}, {"e", p.e}, {"q", p.q}};
}

Report verify_correctness(const Scheme& scheme, int trials, std::uint64_t seed, Sabotage sabotage) {
  const SchemeParams& P = scheme.params();
  Report rep{"correctness", config_json(P), false, {}};
  long long passed = 0;
  long long total = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (int l = 0; l < P.k; ++l) {
    for (int trial = 0; trial < trials; ++trial) {
      const auto seeds = SessionSeeds::from_master(
          derive_seed(seed, "correctness:" + std::to_string(l) + ":" + std::to_string(trial)));
      Rng files = make_stream(seeds.message, "files");
      const MessageStore store = MessageStore::random(P, files);
      ++total;
      std::string why;
      try {
        const auto res = run_retrieval(scheme, l, store, seeds, sabotage);
        if (res.recovered == store.files[l]) {
          ++passed;
          continue;
        }
        why = "recovered file differs";
      } catch (const Error& e) {
        why = e.what();
      }
      if (failures.size() < kMaxListed) {
        failures.push_back({{"index", l + 1}, {"trial", trial}, {"reason", why}});
      }
    }
  }
  rep.pass = passed == total;
  rep.details = {{"passed", passed}, {"total", total}, {"trials_per_index", trials},
                 {"sabotage", std::string(to_string(sabotage))}, {"failures", failures}};
  return rep;
}

Report verify_system_privacy(const Scheme& scheme, const Transcript& t) {
  const SchemeParams& P = scheme.params();
  Report rep{"system-privacy", config_json(P), true, {}};
  nlohmann::json deficient = nlohmann::json::array();
  long long checked = 0;
  if (P.e > 0) {
    for (const auto& tap : scheme.tap_sets()) {
      for (int p = 0; p < P.k; ++p) {
        ++checked;
        const Index r = rank(scheme.tap_matrix(scheme.round_rows(t, tap, p), p));
        if (r == P.rand_per_round) continue;
        rep.pass = false;
        if (deficient.size() < kMaxListed) {
          deficient.push_back({{"tap_set", one_based(tap)}, {"round", p + 1}, {"rank", r}});
        }
      }
    }
  }
  rep.details = {{"checked", checked}, {"size", P.rand_per_round}, {"rank_deficient", deficient}};
  return rep;
}

Report verify_system_privacy(const Scheme& scheme,
                             const std::function<Transcript(std::uint64_t)>& generate,
                             std::uint64_t seed, int seeds) {
  Report rep{"system-privacy", config_json(scheme.params()), true, {}};
  nlohmann::json failed = nlohmann::json::array();
  long long checked = 0;
  int generation_errors = 0;
  for (int i = 0; i < seeds; ++i) {
    Report one;
    try {
      one = verify_system_privacy(scheme, generate(seed + i));
    } catch (const Error& e) {
      ++generation_errors;
      rep.pass = false;
      failed.push_back({{"seed", seed + i}, {"error", e.what()}});
      continue;
    }
    checked += one.details["checked"].get<long long>();
    if (!one.pass) {
      rep.pass = false;
      if (failed.size() < kMaxListed) {
        failed.push_back({{"seed", seed + i}, {"rank_deficient", one.details["rank_deficient"]}});
      }
    }
  }
  rep.details = {{"seeds", seeds}, {"checked", checked}, {"generation_errors", generation_errors},
                 {"failed", failed}};
  return rep;
}

Report verify_user_privacy_structural(const Scheme& scheme, const UserState& user) {
  const SchemeParams& P = scheme.params();
  const SubsetPlan& plan = scheme.plan(user.desired);
  const PrimeField& f = scheme.field();
  Report rep{"user-privacy-structural", config_json(P), true, {}};
  nlohmann::json singular = nlohmann::json::array();
  nlohmann::json deficient = nlohmann::json::array();

  int invertible = 0;
  for (int k = 0; k < P.k; ++k)
    for (int r = 0; r < P.k; ++r) {
      if (is_invertible(user.s[k][r])) {
        ++invertible;
      } else {
        rep.pass = false;
        singular.push_back({{"file", k + 1}, {"round", r + 1}});
      }
    }

  // Column map from user-matrix columns to X_k positions: identity for the
  // desired file, block-diagonal MDS generators for the others.
  const Index width = P.t * (P.dim / P.n);
  std::vector<Matrix> expand(P.k);
  for (int k = 0; k < P.k; ++k) {
    if (k == user.desired) {
      expand[k] = identity(f, P.dim);
      continue;
    }
    expand[k] = zeros(f, P.dim, P.dim);
    for (const auto& c : plan.undesired[k])
      expand[k].block(c.column_offset, c.x_offset, c.alpha, c.expansion) = scheme.mds(c.alpha);
  }

  long long selections = 0;
  for (const auto& coalition : subsets_of(P.n, P.t)) {
    for (int k = 0; k < P.k; ++k) {
      const ColumnSelection seen(seen_positions(plan, k, coalition), P.dim);
      const Matrix code = select_columns(expand[k], seen);
      for (int r = 0; r < P.k; ++r) {
        ++selections;
        const Index want = seen.size();
        const Index code_rank = rank(code);
        const Index view_rank = rank(multiply(user.s[k][r], code));
        if (want == width && code_rank == want && view_rank == want) continue;
        rep.pass = false;
        if (deficient.size() < kMaxListed) {
          deficient.push_back({{"coalition", one_based(coalition)}, {"file", k + 1},
                               {"round", r + 1}, {"columns", want}, {"code_rank", code_rank},
                               {"view_rank", view_rank}});
        }
      }
    }
  }
  rep.details = {{"invertible", invertible}, {"matrices", P.k * P.k},
                 {"singular", singular}, {"selections", selections},
                 {"selection_width", width}, {"deficient", deficient}};
  return rep;
}

std::uint64_t project_view(const Transcript& t, const std::vector<int>& coalition, int bits) {
  const SchemeParams& P = t.params;
  std::vector<std::vector<bool>> support(P.k, std::vector<bool>(P.l, false));
  std::uint64_t functional = 0;
  std::uint64_t entry = 0;
  for (int n : coalition) {
    for (const auto& row : t.databases.at(n)) {
      for (Index i = 0; i < row.query.msg.size(); ++i, ++entry) {
        const Fp c = row.query.msg(i);
        if (c.is_zero()) continue;
        support[i / P.l][i % P.l] = true;
        functional = (functional + c.value() * (mix(entry) % P.q)) % P.q;
      }
      for (Index i = 0; i < row.query.rand.size(); ++i, ++entry) {
        const Fp c = row.query.rand(i);
        if (!c.is_zero()) functional = (functional + c.value() * (mix(entry) % P.q)) % P.q;
      }
    }
  }
  std::uint64_t h = mix(functional);
  for (const auto& file : support) h = mix(h ^ std::count(file.begin(), file.end(), true));
  return bits >= 64 ? h : h & ((std::uint64_t{1} << bits) - 1);
}

Report verify_user_privacy_statistical(const Scheme& scheme, const std::vector<int>& coalition,
                                       const StatisticalOptions& opt) {
  const SchemeParams& P = scheme.params();
  if (opt.samples < 1000) throw Error(ErrorCode::kPreconditionViolation, "need at least 1000 samples");
  if (opt.projection_bits < 1 || opt.projection_bits > 16) {
    throw Error(ErrorCode::kPreconditionViolation, "projection bits must be in [1, 16]");
  }
  if (static_cast<int>(coalition.size()) != P.t) {
    throw Error(ErrorCode::kPreconditionViolation, "collusion set must have T members");
  }
  for (int n : coalition)
    if (n < 0 || n >= P.n) throw Error(ErrorCode::kOutOfRange, "collusion set member");

  Report rep{"user-privacy-statistical", config_json(P), true, {}};
  const double threshold =
      opt.tolerance + 3.0 * std::sqrt(std::ldexp(1.0, opt.projection_bits) / double(opt.samples));

  std::vector<std::map<std::uint64_t, long long>> hist(P.k);
  long long restarts = 0;
  if (P.k > 1) {
    for (int l = 0; l < P.k; ++l) {
      long long drawn = 0;
      for (long long i = 0; drawn < opt.samples; ++i) {
        const auto user_seed = derive_seed(
            opt.seed, "user-privacy:" + std::to_string(l) + ":" + std::to_string(i));
        Scheme::Session session;
        try {
          session = scheme.start_session(l, user_seed, opt.sabotage);
        } catch (const Error& e) {
          // A user whose draws are exhausted starts a fresh session.
          if (e.code() != ErrorCode::kSystemPrivacyUnsatisfied) throw;
          ++restarts;
          continue;
        }
        ++hist[l][project_view(session.transcript, coalition, opt.projection_bits)];
        ++drawn;
      }
    }
  }

  double worst = 0.0;
  nlohmann::json pairs = nlohmann::json::array();
  for (int a = 0; a < P.k; ++a)
    for (int b = a + 1; b < P.k; ++b) {
      long long diff = 0;
      for (const auto& [cell, c] : hist[a]) {
        const auto it = hist[b].find(cell);
        diff += std::llabs(c - (it == hist[b].end() ? 0 : it->second));
      }
      for (const auto& [cell, c] : hist[b])
        if (!hist[a].contains(cell)) diff += c;
      const double tv = 0.5 * double(diff) / double(opt.samples);
      worst = std::max(worst, tv);
      pairs.push_back({{"indices", {a + 1, b + 1}}, {"tv", tv}});
    }
  rep.pass = worst <= threshold;
  rep.details = {{"coalition", one_based(coalition)}, {"samples", opt.samples},
                 {"projection_bits", opt.projection_bits}, {"tolerance", opt.tolerance},
                 {"threshold", threshold}, {"max_tv", worst}, {"pairs", pairs},
                 {"restarts", restarts}, {"sabotage", std::string(to_string(opt.sabotage))}};
  return rep;
}

}  // namespace tepir
