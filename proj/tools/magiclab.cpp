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

// magiclab: JSON on stdout, logs on stderr.
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource cap.

#include <iostream>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "magiclab/cli.hpp"

namespace mc = magiclab::cli;

int main(int argc, char **argv) {
    CLI::App app{"Stabilizer entropies, Pauli monomials and the Clifford commutant"};
    app.require_subcommand(1);

    std::string state;
    std::vector<int> alphas{2};
    auto *entropy = app.add_subcommand("entropy", "Stabilizer purities and entropies");
    entropy->add_option("--state", state, "State descriptor, e.g. t:n=2 or haar:n=3,seed=7")->required();
    entropy->add_option("--alpha", alphas, "Renyi indices (integers >= 2)")->delimiter(',');

    std::string monomial_file;
    auto *genpurity = app.add_subcommand("genpurity", "Generalized stabilizer purity of one monomial");
    genpurity->add_option("--state", state, "State descriptor")->required();
    genpurity->add_option("--monomial", monomial_file, "Monomial JSON file")->required();

    std::string action;
    int n = 1;
    auto *monomial = app.add_subcommand("monomial", "Inspect a monomial file");
    monomial->add_option("action", action, "inspect | normal-form | transpose-search")->required();
    monomial->add_option("file", monomial_file, "Monomial JSON file")->required();
    monomial->add_option("--n", n, "Qubits per copy for the trace norm");

    int k = 0;
    std::string out;
    auto *commutant = app.add_subcommand("commutant", "Commutant basis, Gram and Weingarten matrices");
    commutant->add_option("action", action, "enumerate | gram | weingarten")->required();
    commutant->add_option("--k", k, "Number of copies (2..6)")->required();
    commutant->add_option("--n", n, "Qubits per copy (gram, weingarten)");
    commutant->add_option("--out", out, "Write the full document here; stdout gets a summary");

    std::string task;
    double C = magiclab::kDefaultTolerantConstant;
    auto *test = app.add_subcommand("test", "Design error or stabilizer-testing report");
    test->add_option("--state", state, "State descriptor")->required();
    test->add_option("--task", task, "design | stab")->required();
    test->add_option("--k", k, "Number of copies")->required();
    test->add_option("--C", C, "Constant of the tolerant-testing upper bound");

    std::string suite = "fast";
    std::vector<int> only;
    std::vector<int> skip;
    std::string golden;
    auto *verify = app.add_subcommand("verify", "Run the acceptance criteria");
    verify->add_option("--suite", suite, "all | fast");
    verify->add_option("--only", only, "Criterion ids to run")->delimiter(',');
    verify->add_option("--skip", skip, "Criterion ids to skip")->delimiter(',');
    verify->add_option("--golden-state", golden, "Replace the Golden state in criterion 3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return mc::kInputError;
    }

    if (*entropy) {
        return mc::run_guarded([&] { return mc::cmd_entropy(state, alphas); }, std::cout, std::cerr);
    }
    if (*genpurity) {
        return mc::run_guarded([&] { return mc::cmd_genpurity(state, monomial_file); }, std::cout, std::cerr);
    }
    if (*monomial) {
        return mc::run_guarded([&] { return mc::cmd_monomial(action, monomial_file, n); }, std::cout, std::cerr);
    }
    if (*commutant) {
        return mc::run_guarded([&] { return mc::cmd_commutant(action, k, n, out); }, std::cout, std::cerr);
    }
    if (*test) {
        return mc::run_guarded([&] { return mc::cmd_test(state, k, task, C); }, std::cout, std::cerr);
    }
    bool passed = false;
    const int code = mc::run_guarded([&] { return mc::cmd_verify(suite, only, skip, golden, std::cerr, passed); },
                                     std::cout, std::cerr);
    return code == mc::kOk && !passed ? mc::kVerifyFailed : code;
}
