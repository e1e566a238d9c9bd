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


// The K-round retrieval scheme. Every answer symbol is described by an
// explicit linear query over the K*L message symbols and the K*E*J common
// random symbols, so databases are generic linear maps and both privacy
// properties reduce to linear algebra on the query rows.
//
// Rounds are numbered in two ways. A logical round r fixes which slot of the
// index partitions each file uses; the physical round p is the position in
// which it is downloaded and selects the randomness block S^(p). The user
// maps one to the other through a private permutation.

#ifndef TEPIR_SCHEME_HPP_
#define TEPIR_SCHEME_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tepir/matrix.hpp"
#include "tepir/params.hpp"
#include "tepir/rational.hpp"
#include "tepir/rng.hpp"

namespace tepir {

// Deliberate defects used as negative controls by the verifier.
enum class Sabotage {
  kNone,
  kNoRotation,      // each file keeps one slot relative to the desired file in every round
  kZeroRandomness,  // randomness coefficients removed from all queries
  kSingularS,       // user matrix of file 1, logical round 1 made singular
  kNoCancel,        // decoder skips interference cancellation
};

std::string_view to_string(Sabotage s);
std::optional<Sabotage> parse_sabotage(std::string_view name);

struct MessageStore {
  std::vector<RowVector> files;  // K rows of L symbols

  static MessageStore random(const SchemeParams& params, Rng& rng);
  static MessageStore zeros(const SchemeParams& params);
  RowVector flattened() const;
};

struct CommonRandomness {
  std::vector<RowVector> rounds;  // K blocks of E*J symbols, by physical round

  static CommonRandomness random(const SchemeParams& params, Rng& rng);
  static CommonRandomness zeros(const SchemeParams& params);
  RowVector flattened() const;
};

struct UserState {
  int desired = 0;
  std::vector<std::vector<Matrix>> s;         // s[k][r], logical round r
  std::vector<std::vector<int>> msg_perm;     // per file: permuted position -> symbol index
  std::vector<int> round_order;               // physical round -> logical round
  std::vector<std::vector<std::vector<int>>> row_perm;  // [db][p]: row position -> canonical row
  std::string nonce;                          // opens the index commitment
  int resamples = 0;                          // user matrices redrawn for system privacy
};

struct LinearQuery {
  RowVector msg;   // over the K*L message symbols, file-major
  RowVector rand;  // over the K*E*J random symbols, round-major
};

struct AnswerRow {
  int round = 0;  // physical round
  LinearQuery query;
  std::optional<Fp> answer;
};

struct Transcript {
  SchemeParams params;
  std::vector<std::vector<AnswerRow>> databases;
  std::string desired_index_commitment;
  std::string seed_commitment;

  long long answer_count() const;
};

// Slot (0-based) used by file k in logical round r.
int round_slot(int k, int r, int num_files);

// Precomputed structure for one parameter set: field, master matrix and its
// inverse, subset plans and the MDS generators they need.
class Scheme {
 public:
  explicit Scheme(SchemeParams params);

  const SchemeParams& params() const { return params_; }
  const PrimeField& field() const { return field_; }
  const Matrix& master() const { return g_; }
  const Matrix& master_inverse() const { return g_inv_; }
  const SubsetPlan& plan(int desired) const { return plans_.at(desired); }
  const Matrix& mds(long long alpha) const;

  // V = [w slot; s slot] G. `w` is the permuted file (L symbols), `s` one
  // round of randomness (E*J symbols). The slot is chosen by rotation.
  RowVector build_round_vector(int k, int r, const RowVector& w, const RowVector& s) const;
  RowVector build_slot_vector(int slot, const RowVector& w, const RowVector& s) const;

  struct Block {
    Subset members = 0;
    Matrix symbols;  // one column per block position; rows are whatever V had
  };
  // V may be a 1 x N^K symbol vector or an R x N^K coefficient matrix; the
  // blocks come back with the same row meaning.
  std::vector<Block> encode_desired(const Matrix& v, const Matrix& s_l, int desired) const;
  // Pairs flattened as (direct, mixed) per undesired subset, canonical order.
  std::vector<Block> encode_undesired(const Matrix& v, const Matrix& s_k, int desired, int k) const;
  // The full N^K-column X_k in plan order.
  Matrix encode_file(const Matrix& v, const Matrix& s_k, int desired, int k) const;

  UserState sample_user_state(int desired, Rng& rng, Sabotage sabotage = Sabotage::kNone) const;
  // Redraws the user matrices until every tap set sees a full-rank
  // randomness map (at most 16 draws); throws SystemPrivacyUnsatisfied.
  UserState make_user_state(int desired, std::uint64_t user_seed,
                            Sabotage sabotage = Sabotage::kNone) const;

  // Query rows of one physical round, per database, in shuffled order.
  using RoundRows = std::vector<std::vector<AnswerRow>>;
  RoundRows assemble_round(const UserState& user, int p, Sabotage sabotage = Sabotage::kNone) const;
  Transcript assemble_queries(const UserState& user, Sabotage sabotage = Sabotage::kNone) const;

  // make_user_state followed by assemble_queries, reusing the rounds built
  // while checking the rank condition.
  struct Session {
    UserState user;
    Transcript transcript;
  };
  Session start_session(int desired, std::uint64_t user_seed,
                        Sabotage sabotage = Sabotage::kNone) const;

  // Rows of physical round p for a set of databases, in transcript order.
  std::vector<const AnswerRow*> round_rows(const Transcript& t, const std::vector<int>& dbs,
                                           int p) const;
  // All size-E sets of databases, lexicographic.
  std::vector<std::vector<int>> tap_sets() const;
  // Randomness coefficients of `rows` restricted to the E*J symbols of round p.
  Matrix tap_matrix(const std::vector<const AnswerRow*>& rows, int p) const;
  bool round_private(const RoundRows& rows, int p) const;
  // True when every size-E tap set has a full-rank randomness map in every round.
  bool system_private(const Transcript& t) const;

  RowVector decode(const Transcript& t, const UserState& user,
                   Sabotage sabotage = Sabotage::kNone) const;

 private:
  UserState draw_user_state(int desired, std::uint64_t user_seed, Sabotage sabotage,
                            std::vector<RoundRows>* accepted) const;
  Transcript transcript_of(const UserState& user, std::vector<RoundRows> rounds) const;

  SchemeParams params_;
  PrimeField field_;
  Matrix g_;
  Matrix g_inv_;
  std::vector<SubsetPlan> plans_;
  std::map<long long, Matrix> mds_;
  std::map<long long, Matrix> mds_head_inv_;
};

// Evaluates every query row on the stored symbols.
void answer(Transcript& t, const MessageStore& store, const CommonRandomness& randomness);

Fp dot(const RowVector& a, const RowVector& b);

struct RetrievalResult {
  Transcript transcript;
  UserState user;
  RowVector recovered;
  Rational rate;      // L / (K N J)
  Rational secrecy;   // K E J / L
};

RetrievalResult run_retrieval(const Scheme& scheme, int desired, const MessageStore& store,
                              const SessionSeeds& seeds, Sabotage sabotage = Sabotage::kNone);
RetrievalResult run_retrieval(const SchemeParams& params, int desired, const MessageStore& store,
                              const SessionSeeds& seeds, Sabotage sabotage = Sabotage::kNone);

// T = N: each database answers A_k = [0^E, W_k] + S_k G with G an (E, N)
// MDS generator and S_k of E shared random symbols per file.
struct AllColludeResult {
  std::vector<std::vector<Fp>> answers;  // answers[k][n]
  std::vector<RowVector> recovered;      // every file
  Rational rate;                         // (N - E) / (N K)
};

AllColludeResult run_all_collude(const SchemeParams& params, const MessageStore& store,
                                 std::uint64_t seed);

}  // namespace tepir

#endif  // TEPIR_SCHEME_HPP_
