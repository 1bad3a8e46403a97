// Copyright 2026 The magiclab Authors
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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "magiclab/cli.hpp"

namespace cli = magiclab::cli;

namespace {

const std::string kData = MAGICLAB_TEST_DATA;

int run_cli(const std::string &args) {
    const std::string cmd = std::string("\"") + MAGICLAB_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(StateSpec, Parses) {
    const auto s = cli::parse_state_spec("haar:n=3,seed=7");
    EXPECT_EQ(s.kind, magiclab::StateKind::haar);
    EXPECT_EQ(s.n, 3);
    EXPECT_EQ(s.seed, 7u);
    EXPECT_EQ(cli::parse_state_spec("file:x.json").path, "x.json");
    EXPECT_EQ(cli::parse_state_spec("t:n=2").kind, magiclab::StateKind::t_power);
}

TEST(StateSpec, RejectsMalformed) {
    for (const char *bad : {"t", "t:", "t:n=0", "t:n=x", "haar:n=2", "t:n=2,seed=1", "qux:n=1", "t:n=1,n=2", "file:"}) {
        EXPECT_THROW(cli::parse_state_spec(bad), std::invalid_argument) << bad;
    }
    EXPECT_THROW(cli::parse_state_spec("t:n=13"), magiclab::ResourceError);
}

TEST(Commands, Entropy) {
    const auto j = cli::cmd_entropy("t:n=1", {2, 3});
    EXPECT_NEAR(j["alpha"]["2"]["purity"].get<double>(), 0.75, 1e-14);
    EXPECT_NEAR(j["alpha"]["3"]["purity"].get<double>(), 0.625, 1e-14);
    EXPECT_THROW(cli::cmd_entropy("t:n=1", {}), std::invalid_argument);
    EXPECT_THROW(cli::cmd_entropy("t:n=1", {1}), std::invalid_argument);
}

TEST(Commands, GeneralizedPurity) {
    const auto j = cli::cmd_genpurity("golden:n=1", kData + "/omega_4444.json");
    EXPECT_LT(j["value"].get<double>(), 1e-12);
    const auto t = cli::cmd_genpurity("t:n=1", kData + "/primitive6.json");
    EXPECT_NEAR(t["value"].get<double>(), 0.625, 1e-12);
    EXPECT_TRUE(t["is_unitary"].get<bool>());
}

TEST(Commands, MonomialInspect) {
    const auto p4 = cli::cmd_monomial("inspect", kData + "/primitive4.json", 1);
    EXPECT_FALSE(p4["unitary"].get<bool>());
    EXPECT_EQ(p4["projective_order"].get<int>(), 1);
    EXPECT_DOUBLE_EQ(p4["trace_norm"]["value"].get<double>(), 8.0);
    const auto p6 = cli::cmd_monomial("inspect", kData + "/primitive6.json", 1);
    EXPECT_TRUE(p6["unitary"].get<bool>());
    EXPECT_EQ(p6["det_lambda"].get<int>(), 1);
    const auto ts = cli::cmd_monomial("transpose-search", kData + "/primitive4.json", 1);
    EXPECT_TRUE(ts["unitary_after"].get<bool>());
    EXPECT_THROW(cli::cmd_monomial("bogus", kData + "/primitive4.json", 1), std::invalid_argument);
}

TEST(Commands, CommutantGram) {
    const auto j = cli::cmd_commutant("gram", 2, 2, "");
    EXPECT_EQ(j["W"], nlohmann::json::parse("[[16.0,4.0],[4.0,16.0]]"));
    EXPECT_EQ(cli::cmd_commutant("enumerate", 4, 0, "")["count"].get<int>(), 30);
    const auto out = (std::filesystem::temp_directory_path() / "magiclab_basis_test.json").string();
    const auto summary = cli::cmd_commutant("enumerate", 3, 0, out);
    EXPECT_EQ(summary["file"], out);
    std::ifstream f(out);
    EXPECT_EQ(nlohmann::json::parse(f)["count"].get<int>(), 6);
    std::filesystem::remove(out);
    EXPECT_THROW(cli::cmd_commutant("weingarten", 4, 1, ""), std::domain_error);
}

TEST(Commands, RunGuardedMapsErrors) {
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(cli::run_guarded([] { return nlohmann::json{{"ok", true}}; }, out, err), cli::kOk);
    EXPECT_EQ(cli::run_guarded([]() -> nlohmann::json { throw std::invalid_argument("x"); }, out, err), cli::kInputError);
    EXPECT_EQ(cli::run_guarded([]() -> nlohmann::json { throw magiclab::ResourceError("x"); }, out, err),
              cli::kResourceError);
}

TEST(Executable, ExitCodes) {
    EXPECT_EQ(run_cli("entropy --state t:n=1 --alpha 2,3"), 0);
    EXPECT_EQ(run_cli("genpurity --state t:n=1 --monomial " + kData + "/missing.json"), 2);
    EXPECT_EQ(run_cli("monomial inspect " + kData + "/malformed_column.json"), 2);
    EXPECT_EQ(run_cli("commutant enumerate --k 7"), 3);
    EXPECT_EQ(run_cli("entropy --state t:n=20 --alpha 2"), 3);
    EXPECT_EQ(run_cli("entropy --nonsense"), 2);
    EXPECT_EQ(run_cli("test --state t:n=1 --task stab --k 6"), 0);
}

TEST(Executable, VerifyDetectsPerturbedGolden) {
    EXPECT_EQ(run_cli("verify --suite fast --only 3"), 0);
    EXPECT_EQ(run_cli("verify --suite fast --only 3 --golden-state file:" + kData + "/golden_perturbed.json"), 1);
}
