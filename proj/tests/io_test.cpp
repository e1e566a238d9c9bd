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

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "tepir/cli.hpp"
#include "tepir/error.hpp"

namespace tepir {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tepir_io_test_" + name)).string();
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "tepir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

RunConfig parse(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  args.insert(args.begin(), "tepir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data(), env);
}

ErrorCode parse_error(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

TEST(Transcript, JsonRoundTripStillDecodes) {
  const auto P = derive(3, 2, 2, 1);
  const Scheme s(P);
  const auto seeds = SessionSeeds::from_master(21);
  Rng files = make_stream(seeds.message, "files");
  const auto store = MessageStore::random(P, files);
  const auto res = run_retrieval(s, 1, store, seeds);

  const std::string path = temp_path("transcript.json");
  emit_transcript(path, res.transcript);
  const Transcript back = load_transcript(path);
  EXPECT_EQ(back.params.q, P.q);
  EXPECT_EQ(back.seed_commitment, res.transcript.seed_commitment);
  ASSERT_EQ(back.databases.size(), res.transcript.databases.size());
  for (std::size_t n = 0; n < back.databases.size(); ++n)
    for (std::size_t i = 0; i < back.databases[n].size(); ++i) {
      EXPECT_EQ(back.databases[n][i].round, res.transcript.databases[n][i].round);
      EXPECT_EQ(back.databases[n][i].query.msg, res.transcript.databases[n][i].query.msg);
      EXPECT_EQ(back.databases[n][i].query.rand, res.transcript.databases[n][i].query.rand);
      EXPECT_EQ(back.databases[n][i].answer, res.transcript.databases[n][i].answer);
    }
  // The user state is private, but it is reproducible from the user seed.
  EXPECT_EQ(s.decode(back, s.make_user_state(1, seeds.user)), store.files[1]);
  std::remove(path.c_str());
}

TEST(Transcript, StableBytesAndSparseRows) {
  const auto P = derive(3, 2, 2, 1);
  Rng rng(1);
  const auto store = MessageStore::random(P, rng);
  const auto a = dump_json(transcript_to_json(run_retrieval(P, 0, store, SessionSeeds::from_master(8)).transcript));
  const auto b = dump_json(transcript_to_json(run_retrieval(P, 0, store, SessionSeeds::from_master(8)).transcript));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find('\r'), std::string::npos);
  EXPECT_EQ(a.back(), '\n');
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["params"]["j"], 5);
  EXPECT_EQ(j["params"]["l"], 13);
  const auto& row = j["databases"][0][0];
  EXPECT_GE(row["round"].get<int>(), 1);
  for (const auto& pair : row["msg_coeffs"]) {
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_NE(pair[1], 0);
  }
}

TEST(Transcript, MalformedInput) {
  EXPECT_THROW(transcript_from_json(nlohmann::json::object()), Error);
  const std::string path = temp_path("broken.json");
  write_text(path, "{not json");
  try {
    load_transcript(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  std::remove(path.c_str());
  EXPECT_THROW(read_text(temp_path("missing/none.json")), Error);
}

TEST(BoundJson, MissingSecrecyIsNull) {
  const auto j = bound_report_json(bound_report(3, 2, 2, 1));
  EXPECT_EQ(j["inner_bound"], "13/30");
  EXPECT_EQ(j["achieved_secrecy"], "10/13");
  EXPECT_TRUE(j["capacity_e_ge_t"].is_null());
  EXPECT_TRUE(bound_report_json(bound_report(2, 2, 2, 2))["secrecy_lower_bound"].is_null());
}

TEST(Args, RunDefaultsAndSeeds) {
  const RunConfig c = parse({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1"});
  EXPECT_EQ(c.subcommand, Subcommand::kRun);
  EXPECT_EQ(c.index, 1);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_FALSE(c.q);
  EXPECT_EQ(parse({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1"}, "99").seed, 99u);
  EXPECT_EQ(parse({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--seed", "7"}, "99").seed, 7u);
  EXPECT_EQ(parse({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--sabotage", "no-cancel"}).sabotage,
            Sabotage::kNoCancel);
}

TEST(Args, VerifyDefaults) {
  const RunConfig c = parse({"verify", "--n", "4", "--k", "2", "--t", "3", "--e", "2"});
  EXPECT_EQ(c.checks.size(), 4u);
  EXPECT_EQ(c.coalition, (std::vector<int>{1, 2, 3}));
  const RunConfig d = parse({"verify", "--n", "4", "--k", "2", "--t", "3", "--e", "2", "--checks",
                             "system,correctness", "--coalition", "2", "3", "4"});
  EXPECT_EQ(d.checks, (std::vector<std::string>{"system", "correctness"}));
  EXPECT_EQ(d.coalition, (std::vector<int>{2, 3, 4}));
}

TEST(Args, ConfigFileFillsMissingValues) {
  const std::string path = temp_path("config.json");
  write_text(path, R"({"n": 3, "k": 2, "t": 2, "e": 1, "seed": 5, "q": 13})");
  const RunConfig c = parse({"run", "--config", path, "--e", "0"});
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.e, 0);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.q, 13u);
  std::remove(path.c_str());
}

TEST(Args, Errors) {
  EXPECT_EQ(parse_error({}), ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"run", "--n", "3"}), ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"run", "--n", "x", "--k", "2", "--t", "2", "--e", "1"}), ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--seed", "-1"}),
            ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--sabotage", "x"}),
            ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "3"}),
            ErrorCode::kInvalidParameters);
  EXPECT_EQ(parse_error({"run", "--n", "3", "--k", "2", "--t", "3", "--e", "1"}),
            ErrorCode::kInvalidParameters);
  EXPECT_EQ(parse_error({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--index", "3"}),
            ErrorCode::kInvalidParameters);
  EXPECT_EQ(parse_error({"figures", "--fig", "3", "--k", "2"}), ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"verify", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--checks", "bogus"}),
            ErrorCode::kUsage);
  EXPECT_EQ(parse_error({"run", "--config", temp_path("absent.json"), "--n", "3"}), ErrorCode::kIo);
}

TEST(Cli, ExitStatuses) {
  std::string out;
  EXPECT_EQ(run_cli({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1"}, &out), kExitOk);
  EXPECT_NE(out.find("rate              13/30"), std::string::npos);
  EXPECT_EQ(run_cli({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--sabotage", "no-cancel"}),
            kExitVerificationFailed);
  EXPECT_EQ(run_cli({"run", "--n", "3"}), kExitUsage);
  EXPECT_EQ(run_cli({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--q", "12"}),
            kExitInvalidParameters);
  EXPECT_EQ(run_cli({"run", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--out",
                     temp_path("no/such/dir/t.json")}),
            kExitIo);
  EXPECT_EQ(run_cli({"--help"}, &out), kExitOk);
  EXPECT_NE(out.find("all-collude"), std::string::npos);
}

TEST(Cli, JsonOutputs) {
  std::string out;
  ASSERT_EQ(run_cli({"bounds", "--n", "4", "--k", "2", "--t", "2", "--e", "1", "--json"}, &out), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out)["inner_bound"], "13/24");
  ASSERT_EQ(run_cli({"all-collude", "--n", "3", "--k", "2", "--e", "1", "--json"}, &out), kExitOk);
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["rate"], "1/3");
  EXPECT_EQ(j["outer_bound"], "1/3");
  EXPECT_EQ(j["recovered_all"], true);
  ASSERT_EQ(run_cli({"verify", "--n", "3", "--k", "2", "--t", "2", "--e", "1", "--checks",
                     "correctness,system,structural", "--trials", "3", "--seeds", "3", "--json"},
                    &out),
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out).size(), 3u);
  ASSERT_EQ(run_cli({"figures", "--fig", "2", "--k", "3"}, &out), kExitOk);
  EXPECT_EQ(out.substr(0, out.find('\n')), "e_over_n,outer,inner,gap");
}

}  // namespace
}  // namespace tepir
