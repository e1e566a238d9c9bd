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


#include "tepir/error.hpp"
#include "tepir/scheme.hpp"

namespace tepir {

// With T = N the colluders see every query, so nothing can be hidden about
// the index: the user downloads all K files. Only the eavesdropper is
// defeated, by masking each file with E shared symbols spread through an
// (N, E) MDS code. Any E masked-only coordinates pin down the mask.
AllColludeResult run_all_collude(const SchemeParams& params, const MessageStore& store,
                                 std::uint64_t seed) {
  if (!params.all_collude()) throw Error(ErrorCode::kInvalidParameters, "all-collude needs T = N");
  if (params.e >= params.n) throw Error(ErrorCode::kInvalidParameters, "all-collude needs E < N");
  const PrimeField field(params.q);
  const Index n = params.n;
  const Index e = params.e;
  const Index l = n - e;
  if (static_cast<int>(store.files.size()) != params.k) {
    throw Error(ErrorCode::kDimensionMismatch, "message store does not hold K files");
  }

  Rng rng = make_stream(seed, "common-randomness");
  std::optional<Matrix> gen;
  std::optional<Matrix> head_inv;
  if (e > 0) {
    gen = mds_generator(e, n, field);
    head_inv = invert(gen->leftCols(e));
  }

  AllColludeResult res;
  for (int k = 0; k < params.k; ++k) {
    const RowVector& w = store.files[k];
    if (w.size() != l) throw Error(ErrorCode::kDimensionMismatch, "file length must be N - E");
    RowVector a = zero_row(field, n);
    a.tail(l) = w;
    if (gen) a += random_row(field, e, rng) * *gen;
    res.answers.emplace_back(a.data(), a.data() + n);

    RowVector mask_free = a.tail(l);
    if (gen) {
      const RowVector s = a.head(e) * *head_inv;
      mask_free -= s * gen->rightCols(l);
    }
    res.recovered.push_back(mask_free);
  }
  res.rate = Rational(n - e, n * params.k);
  return res;
}

}  // namespace tepir
