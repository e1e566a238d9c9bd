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


#include "tepir/scheme.hpp"

#include <cstdio>

#include <openssl/evp.h>

#include "tepir/error.hpp"

namespace tepir {
namespace {

constexpr int kMaxUserDraws = 16;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kPreconditionViolation, "SHA-256 unavailable");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string random_nonce(Rng& rng) {
  char buf[17];
  std::string out;
  for (int i = 0; i < 2; ++i) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    out += buf;
  }
  return out;
}

// All size-`size` subsets of [0, n), lexicographic.
std::vector<std::vector<int>> combinations(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int slot_for(const SchemeParams& p, int k, int r, int desired, Sabotage sabotage) {
  if (sabotage == Sabotage::kNoRotation) return (k - desired + p.k) % p.k;
  return round_slot(k, r, p.k);
}

}  // namespace

std::string_view to_string(Sabotage s) {
  switch (s) {
    case Sabotage::kNone: return "none";
    case Sabotage::kNoRotation: return "no-rotation";
    case Sabotage::kZeroRandomness: return "zero-randomness";
    case Sabotage::kSingularS: return "singular-s";
    case Sabotage::kNoCancel: return "no-cancel";
  }
  return "none";
}

std::optional<Sabotage> parse_sabotage(std::string_view name) {
  for (Sabotage s : {Sabotage::kNone, Sabotage::kNoRotation, Sabotage::kZeroRandomness,
                     Sabotage::kSingularS, Sabotage::kNoCancel}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

MessageStore MessageStore::random(const SchemeParams& params, Rng& rng) {
  const PrimeField f(params.q);
  MessageStore m;
  for (int k = 0; k < params.k; ++k) m.files.push_back(random_row(f, params.l, rng));
  return m;
}

MessageStore MessageStore::zeros(const SchemeParams& params) {
  const PrimeField f(params.q);
  MessageStore m;
  m.files.assign(params.k, zero_row(f, params.l));
  return m;
}

RowVector MessageStore::flattened() const {
  Index total = 0;
  for (const auto& f : files) total += f.size();
  RowVector out(total);
  Index at = 0;
  for (const auto& f : files) {
    out.segment(at, f.size()) = f;
    at += f.size();
  }
  return out;
}

CommonRandomness CommonRandomness::random(const SchemeParams& params, Rng& rng) {
  const PrimeField f(params.q);
  CommonRandomness c;
  for (int r = 0; r < params.k; ++r) c.rounds.push_back(random_row(f, params.rand_per_round, rng));
  return c;
}

CommonRandomness CommonRandomness::zeros(const SchemeParams& params) {
  const PrimeField f(params.q);
  CommonRandomness c;
  c.rounds.assign(params.k, zero_row(f, params.rand_per_round));
  return c;
}

RowVector CommonRandomness::flattened() const {
  Index total = 0;
  for (const auto& r : rounds) total += r.size();
  RowVector out(total);
  Index at = 0;
  for (const auto& r : rounds) {
    out.segment(at, r.size()) = r;
    at += r.size();
  }
  return out;
}

long long Transcript::answer_count() const {
  long long n = 0;
  for (const auto& db : databases) n += static_cast<long long>(db.size());
  return n;
}

Fp dot(const RowVector& a, const RowVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "dot product lengths");
  Fp acc(0);
  for (Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

int round_slot(int k, int r, int num_files) { return (k + r) % num_files; }

Scheme::Scheme(SchemeParams params) : params_(std::move(params)), field_(params_.q) {
  if (params_.all_collude()) {
    throw Error(ErrorCode::kPreconditionViolation, "the K-round scheme needs T < N");
  }
  g_ = master_matrix(field_, params_.dim);
  g_inv_ = invert(g_);
  for (int l = 0; l < params_.k; ++l) {
    plans_.push_back(subset_plan(params_, l));
    for (const auto& family : plans_.back().undesired)
      for (const auto& code : family) {
        if (mds_.contains(code.alpha)) continue;
        Matrix gen = mds_generator(code.alpha, code.expansion, field_);
        mds_head_inv_[code.alpha] = invert(gen.leftCols(code.alpha));
        mds_[code.alpha] = std::move(gen);
      }
  }
}

const Matrix& Scheme::mds(long long alpha) const { return mds_.at(alpha); }

RowVector Scheme::build_slot_vector(int slot, const RowVector& w, const RowVector& s) const {
  if (w.size() != params_.l || s.size() != params_.rand_per_round) {
    throw Error(ErrorCode::kDimensionMismatch, "round vector needs L message and EJ random symbols");
  }
  if (slot < 0 || slot >= params_.k) throw Error(ErrorCode::kOutOfRange, "slot index");
  const IndexRange& wm = params_.msg_partition[slot];
  const IndexRange& sm = params_.rand_partition[slot];
  RowVector x(params_.dim);
  x.head(wm.size) = w.segment(wm.start, wm.size);
  x.tail(sm.size) = s.segment(sm.start, sm.size);
  return x * g_;
}

RowVector Scheme::build_round_vector(int k, int r, const RowVector& w, const RowVector& s) const {
  if (k < 0 || k >= params_.k || r < 0 || r >= params_.k) {
    throw Error(ErrorCode::kOutOfRange, "file or round index");
  }
  return build_slot_vector(round_slot(k, r, params_.k), w, s);
}

std::vector<Scheme::Block> Scheme::encode_desired(const Matrix& v, const Matrix& s_l,
                                                  int desired) const {
  const Matrix x = multiply(v, s_l);
  std::vector<Block> out;
  for (const auto& d : plan(desired).desired_family)
    out.push_back({d.members, x.middleCols(d.x_offset, d.length)});
  return out;
}

std::vector<Scheme::Block> Scheme::encode_undesired(const Matrix& v, const Matrix& s_k,
                                                    int desired, int k) const {
  const SubsetPlan& p = plan(desired);
  if (k == desired) throw Error(ErrorCode::kPreconditionViolation, "file is the desired one");
  const Subset self = Subset{1} << desired;
  const Matrix base = multiply(v, s_k.leftCols(params_.t * (params_.dim / params_.n)));
  std::vector<Block> out;
  for (const auto& c : p.undesired.at(k)) {
    const Matrix cw = multiply(base.middleCols(c.column_offset, c.alpha), mds(c.alpha));
    out.push_back({c.members, cw.leftCols(c.alpha)});
    out.push_back({c.members | self, cw.rightCols(c.expansion - c.alpha)});
  }
  return out;
}

Matrix Scheme::encode_file(const Matrix& v, const Matrix& s_k, int desired, int k) const {
  if (k == desired) return multiply(v, s_k);
  Matrix x(v.rows(), params_.dim);
  const auto blocks = encode_undesired(v, s_k, desired, k);
  Index at = 0;
  for (const auto& b : blocks) {
    x.middleCols(at, b.symbols.cols()) = b.symbols;
    at += b.symbols.cols();
  }
  return x;
}

UserState Scheme::sample_user_state(int desired, Rng& rng, Sabotage sabotage) const {
  if (desired < 0 || desired >= params_.k) throw Error(ErrorCode::kOutOfRange, "desired index");
  UserState u;
  u.desired = desired;
  u.s.assign(params_.k, std::vector<Matrix>(params_.k));
  for (auto& per_file : u.s)
    for (auto& m : per_file) m = sample_invertible(params_.dim, field_, rng);
  if (sabotage == Sabotage::kSingularS) u.s[0][0].col(1) = u.s[0][0].col(0);
  for (int k = 0; k < params_.k; ++k)
    u.msg_perm.push_back(random_permutation(rng, static_cast<int>(params_.l)));
  u.round_order = random_permutation(rng, params_.k);
  u.row_perm.assign(params_.n, std::vector<std::vector<int>>(params_.k));
  for (auto& per_db : u.row_perm)
    for (auto& perm : per_db) perm = random_permutation(rng, static_cast<int>(params_.j));
  u.nonce = random_nonce(rng);
  return u;
}

UserState Scheme::make_user_state(int desired, std::uint64_t user_seed, Sabotage sabotage) const {
  return draw_user_state(desired, user_seed, sabotage, nullptr);
}

UserState Scheme::draw_user_state(int desired, std::uint64_t user_seed, Sabotage sabotage,
                                  std::vector<RoundRows>* accepted) const {
  Rng rng = make_stream(user_seed, "user-state");
  UserState u = sample_user_state(desired, rng, sabotage);
  // Negative controls keep their defect visible instead of retrying it away.
  const bool retry = sabotage != Sabotage::kZeroRandomness && sabotage != Sabotage::kSingularS;
  if (!retry && !accepted) return u;
  // The rank condition of a round involves only that round's matrices, so
  // redrawing failed rounds alone gives the same conditional law as
  // redrawing everything.
  for (int p = 0; p < params_.k; ++p) {
    const int r = u.round_order[p];
    for (int draw = 1;; ++draw) {
      RoundRows rows = assemble_round(u, p, sabotage);
      if (!retry || round_private(rows, p)) {
        if (accepted) accepted->push_back(std::move(rows));
        break;
      }
      if (draw == kMaxUserDraws) {
        throw Error(ErrorCode::kSystemPrivacyUnsatisfied,
                    "no full-rank randomness map after " + std::to_string(kMaxUserDraws) +
                        " draws");
      }
      for (int k = 0; k < params_.k; ++k) u.s[k][r] = sample_invertible(params_.dim, field_, rng);
      ++u.resamples;
    }
  }
  return u;
}

Scheme::Session Scheme::start_session(int desired, std::uint64_t user_seed,
                                      Sabotage sabotage) const {
  std::vector<RoundRows> rounds;
  Session s;
  s.user = draw_user_state(desired, user_seed, sabotage, &rounds);
  s.transcript = transcript_of(s.user, std::move(rounds));
  return s;
}

Scheme::RoundRows Scheme::assemble_round(const UserState& user, int p, Sabotage sabotage) const {
  const SchemeParams& P = params_;
  const SubsetPlan& plan = this->plan(user.desired);
  const Index msg_len = P.k * P.l;
  const Index rand_len = P.k * P.rand_per_round;
  const int num_blocks = static_cast<int>(plan.blocks.size());

  // seg[k][block] = offset of file k's contribution inside X_k, or -1.
  std::vector<std::vector<long long>> seg(P.k, std::vector<long long>(num_blocks, -1));
  for (int k = 0; k < P.k; ++k)
    for (const auto& s : plan.segments[k]) seg[k][s.block] = s.x_offset;

  const int r = user.round_order[p];
  std::vector<Matrix> x(P.k);
  std::vector<int> slot(P.k);
  for (int k = 0; k < P.k; ++k) {
    slot[k] = slot_for(P, k, r, user.desired, sabotage);
    // Rows of G are the local unknowns [w slot; s slot], so encoding G
    // itself yields the coefficient columns of every output symbol.
    x[k] = encode_file(g_, user.s[k][r], user.desired, k);
  }
  auto lift = [&](int k, Index col, LinearQuery& q) {
    const IndexRange& wm = P.msg_partition[slot[k]];
    const IndexRange& sm = P.rand_partition[slot[k]];
    for (Index i = 0; i < wm.size; ++i) {
      q.msg(k * P.l + user.msg_perm[k][wm.start + i]) += x[k](i, col);
    }
    if (sabotage == Sabotage::kZeroRandomness) return;
    for (Index i = 0; i < sm.size; ++i) {
      q.rand(p * P.rand_per_round + sm.start + i) += x[k](wm.size + i, col);
    }
  };

  std::vector<std::vector<LinearQuery>> canonical(P.n, std::vector<LinearQuery>(P.j));
  for (int b = 0; b < num_blocks; ++b) {
    const QueryBlock& blk = plan.blocks[b];
    for (long long j = 0; j < blk.length; ++j) {
      LinearQuery q{zero_row(field_, msg_len), zero_row(field_, rand_len)};
      for (int k : subset_members(blk.members)) lift(k, seg[k][b] + j, q);
      const long long db = j / blk.chunk;
      canonical[db][blk.row_offset + j % blk.chunk] = std::move(q);
    }
  }
  RoundRows out(P.n);
  for (int n = 0; n < P.n; ++n)
    for (int i = 0; i < P.j; ++i)
      out[n].push_back({p, std::move(canonical[n][user.row_perm[n][p][i]]), std::nullopt});
  return out;
}

Transcript Scheme::assemble_queries(const UserState& user, Sabotage sabotage) const {
  std::vector<RoundRows> rounds;
  for (int p = 0; p < params_.k; ++p) rounds.push_back(assemble_round(user, p, sabotage));
  return transcript_of(user, std::move(rounds));
}

Transcript Scheme::transcript_of(const UserState& user, std::vector<RoundRows> rounds) const {
  Transcript t;
  t.params = params_;
  t.databases.assign(params_.n, {});
  t.desired_index_commitment = sha256_hex(user.nonce + ":" + std::to_string(user.desired + 1));
  for (auto& rows : rounds)
    for (int n = 0; n < params_.n; ++n)
      for (auto& row : rows[n]) t.databases[n].push_back(std::move(row));
  return t;
}

std::vector<const AnswerRow*> Scheme::round_rows(const Transcript& t, const std::vector<int>& dbs,
                                                 int p) const {
  std::vector<const AnswerRow*> out;
  for (int n : dbs)
    for (const auto& row : t.databases.at(n))
      if (row.round == p) out.push_back(&row);
  return out;
}

Matrix Scheme::tap_matrix(const std::vector<const AnswerRow*>& rows, int p) const {
  const Index ej = params_.rand_per_round;
  Matrix m(static_cast<Index>(rows.size()), ej);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = rows[i]->query.rand.segment(p * ej, ej);
  return m;
}

std::vector<std::vector<int>> Scheme::tap_sets() const { return combinations(params_.n, params_.e); }

bool Scheme::round_private(const RoundRows& rows, int p) const {
  if (params_.e == 0) return true;
  for (const auto& tap : tap_sets()) {
    std::vector<const AnswerRow*> view;
    for (int n : tap)
      for (const auto& row : rows[n]) view.push_back(&row);
    if (rank(tap_matrix(view, p)) != params_.rand_per_round) return false;
  }
  return true;
}

bool Scheme::system_private(const Transcript& t) const {
  if (params_.e == 0) return true;
  for (const auto& tap : tap_sets())
    for (int p = 0; p < params_.k; ++p)
      if (rank(tap_matrix(round_rows(t, tap, p), p)) != params_.rand_per_round) return false;
  return true;
}

RowVector Scheme::decode(const Transcript& t, const UserState& user, Sabotage sabotage) const {
  const SchemeParams& P = params_;
  const SubsetPlan& plan = this->plan(user.desired);
  const int l = user.desired;
  const Subset self = Subset{1} << l;
  if (static_cast<int>(t.databases.size()) != P.n) {
    throw Error(ErrorCode::kDecodeFailure, "transcript has the wrong number of databases");
  }
  RowVector permuted = zero_row(field_, P.l);

  for (int p = 0; p < P.k; ++p) {
    const int r = user.round_order[p];
    // Undo the per-database row shuffle.
    std::vector<std::vector<Fp>> canon(P.n, std::vector<Fp>(P.j));
    for (int n = 0; n < P.n; ++n) {
      const auto rows = round_rows(t, {n}, p);
      if (static_cast<long long>(rows.size()) != P.j) {
        throw Error(ErrorCode::kDecodeFailure, "database " + std::to_string(n + 1) +
                                                   " has the wrong row count in a round");
      }
      for (long long i = 0; i < P.j; ++i) {
        if (!rows[i]->answer) throw Error(ErrorCode::kDecodeFailure, "missing answer");
        canon[n][user.row_perm[n][p][i]] = *rows[i]->answer;
      }
    }
    std::vector<RowVector> q;
    for (const auto& blk : plan.blocks) {
      RowVector v(blk.length);
      for (int n = 0; n < P.n; ++n)
        for (long long c = 0; c < blk.chunk; ++c) v(n * blk.chunk + c) = canon[n][blk.row_offset + c];
      q.push_back(std::move(v));
    }
    // Blocks without l carry only interference: extend each to its full
    // MDS codeword and strip the tail from the matching mixed block.
    if (sabotage != Sabotage::kNoCancel) {
      for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
        const QueryBlock& blk = plan.blocks[b];
        if (blk.members & self) continue;
        const RowVector y = q[b] * mds_head_inv_.at(blk.length);
        const Matrix& gen = mds(blk.length);
        q[plan.block_index(blk.members | self)] -= y * gen.rightCols(gen.cols() - blk.length);
      }
    }
    RowVector x(P.dim);
    for (const auto& d : plan.desired_family) x.segment(d.x_offset, d.length) = q[d.block];
    RowVector v;
    try {
      v = x * invert(user.s[l][r]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kDecodeFailure, e.what());
    }
    const RowVector w_s = v * g_inv_;
    const IndexRange& wm = P.msg_partition[slot_for(P, l, r, l, sabotage)];
    permuted.segment(wm.start, wm.size) = w_s.head(wm.size);
  }

  RowVector out(P.l);
  for (long long pos = 0; pos < P.l; ++pos) out(user.msg_perm[l][pos]) = permuted(pos);
  return out;
}

void answer(Transcript& t, const MessageStore& store, const CommonRandomness& randomness) {
  const RowVector w = store.flattened();
  const RowVector s = randomness.flattened();
  for (auto& db : t.databases)
    for (auto& row : db) {
      if (row.query.msg.size() != w.size() || row.query.rand.size() != s.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "query does not match the stored symbols");
      }
      Fp a = dot(row.query.msg, w);
      if (s.size() > 0) a += dot(row.query.rand, s);
      row.answer = a;
    }
}

RetrievalResult run_retrieval(const Scheme& scheme, int desired, const MessageStore& store,
                              const SessionSeeds& seeds, Sabotage sabotage) {
  const SchemeParams& P = scheme.params();
  RetrievalResult res;
  auto session = scheme.start_session(desired, seeds.user, sabotage);
  res.user = std::move(session.user);
  res.transcript = std::move(session.transcript);
  res.transcript.seed_commitment =
      sha256_hex(res.user.nonce + ":" + std::to_string(seeds.user) + ":" +
                 std::to_string(seeds.common) + ":" + std::to_string(seeds.message));
  Rng common = make_stream(seeds.common, "common-randomness");
  answer(res.transcript, store, CommonRandomness::random(P, common));
  res.recovered = scheme.decode(res.transcript, res.user, sabotage);
  res.rate = Rational(P.l, P.k * P.round_download);
  res.secrecy = Rational(P.k * P.rand_per_round, P.l);
  return res;
}

RetrievalResult run_retrieval(const SchemeParams& params, int desired, const MessageStore& store,
                              const SessionSeeds& seeds, Sabotage sabotage) {
  return run_retrieval(Scheme(params), desired, store, seeds, sabotage);
}

}  // namespace tepir
