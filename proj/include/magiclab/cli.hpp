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

// Command implementations behind the magiclab executable. Each returns the JSON
// document printed on stdout; errors propagate as exceptions and are mapped to
// exit codes by run_guarded.

#ifndef MAGICLAB_CLI_HPP
#define MAGICLAB_CLI_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magiclab/acceptance.hpp"
#include "magiclab/commutant.hpp"
#include "magiclab/genpurity.hpp"
#include "magiclab/monomial.hpp"
#include "magiclab/proptest.hpp"
#include "magiclab/sre.hpp"
#include "magiclab/states.hpp"

namespace magiclab::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kResourceError = 3 };

/// A parsed state descriptor such as "haar:n=3,seed=7" or "file:psi.json".
struct StateSpec {
    std::string text;
    StateKind kind = StateKind::basis0;
    int n = 0;
    std::uint64_t seed = 0;
    std::string path;
};

inline StateSpec parse_state_spec(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("state spec '" + text + "' lacks a ':' (e.g. t:n=2)");
    }
    const std::string head = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    StateSpec s;
    s.text = text;
    if (head == "file") {
        if (rest.empty()) {
            throw std::invalid_argument("file: state spec needs a path");
        }
        s.kind = StateKind::file;
        s.path = rest;
        return s;
    }
    static const std::map<std::string, StateKind> kinds{{"basis0", StateKind::basis0},
                                                        {"t", StateKind::t_power},
                                                        {"golden", StateKind::golden_power},
                                                        {"haar", StateKind::haar},
                                                        {"stab", StateKind::random_stabilizer}};
    const auto it = kinds.find(head);
    if (it == kinds.end()) {
        throw std::invalid_argument("unknown state kind '" + head + "' (basis0, t, golden, haar, stab, file)");
    }
    s.kind = it->second;
    const bool seeded = s.kind == StateKind::haar || s.kind == StateKind::random_stabilizer;
    bool have_n = false;
    bool have_seed = false;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("malformed field '" + item + "' in state spec '" + text + "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(val, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != val.size() || val.empty()) {
            throw std::invalid_argument("field '" + key + "' needs an integer, got '" + val + "'");
        }
        if (key == "n" && !have_n) {
            if (v < 1) {
                throw std::invalid_argument("n must be >= 1");
            }
            if (v > kMaxQubits) {
                throw ResourceError("state with n = " + std::to_string(v) + " exceeds the cap of " +
                                    std::to_string(kMaxQubits) + " qubits");
            }
            s.n = static_cast<int>(v);
            have_n = true;
        } else if (key == "seed" && seeded && !have_seed) {
            if (v < 0) {
                throw std::invalid_argument("seed must be non-negative");
            }
            s.seed = static_cast<std::uint64_t>(v);
            have_seed = true;
        } else {
            throw std::invalid_argument("unexpected or repeated field '" + key + "' in state spec '" + text + "'");
        }
    }
    if (!have_n) {
        throw std::invalid_argument("state spec '" + text + "' needs n=K");
    }
    if (seeded && !have_seed) {
        throw std::invalid_argument("state spec '" + text + "' needs seed=S");
    }
    return s;
}

inline StateVec load_state(const StateSpec &s) { return make_state(s.kind, s.n, s.seed, s.path); }

inline nlohmann::json cmd_entropy(const std::string &state, const std::vector<int> &alphas) {
    if (alphas.empty()) {
        throw std::invalid_argument("at least one alpha is required");
    }
    const StateSpec spec = parse_state_spec(state);
    const StateVec psi = load_state(spec);
    require_qubits(psi.n(), kMaxQubits, "entropy");
    const PurityCalculator calc(psi);
    nlohmann::json per_alpha = nlohmann::json::object();
    for (int a : alphas) {
        per_alpha[std::to_string(a)] = {{"purity", calc.purity(a)}, {"entropy", calc.entropy(a)}};
    }
    return {{"state", spec.text}, {"n", psi.n()}, {"seed", spec.seed}, {"alpha", per_alpha}};
}

inline nlohmann::json cmd_genpurity(const std::string &state, const std::string &monomial_file) {
    const StateSpec spec = parse_state_spec(state);
    const PauliMonomial w = load_monomial_file(monomial_file);
    const StateVec psi = load_state(spec);
    const cplx z = generalized_expectation(psi, w);
    return {{"state", spec.text},
            {"n", psi.n()},
            {"seed", spec.seed},
            {"k", w.k},
            {"value", std::abs(z)},
            {"complex_value", {z.real(), z.imag()}},
            {"is_unitary", is_unitary(w)},
            {"projective_order", projective_order(w)}};
}

inline nlohmann::json matrix_rows(const BitMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows.push_back(m.row(i).to_string());
    }
    return rows;
}

inline nlohmann::json cmd_monomial(const std::string &action, const std::string &file, int n) {
    const PauliMonomial w = load_monomial_file(file);
    if (action == "inspect") {
        if (n < 1) {
            throw std::invalid_argument("--n must be >= 1");
        }
        const BitMatrix lam = lambda_matrix(w);
        const bool unitary = is_unitary(w);
        return {{"k", w.k},
                {"m", w.m()},
                {"lambda", matrix_rows(lam)},
                {"det_lambda", lam.rows() == 0 ? 1 : (det(lam) ? 1 : 0)},
                {"unitary", unitary},
                {"projective_order", projective_order(w)},
                {"trace_norm", {{"n", n}, {"value", trace_norm(w, n)}}}};
    }
    if (action == "normal-form") {
        const NormalForm nf = normal_form(w);
        return {{"k", w.k},
                {"projective_order", nf.projective_order},
                {"projective_part", monomial_to_json(nf.projective_part)},
                {"unitary_part", monomial_to_json(nf.unitary_part)}};
    }
    if (action == "transpose-search") {
        const BitVector t = find_unitarizing_transpose(w);
        return {{"k", w.k}, {"t_u", t.to_string()}, {"unitary_after", is_unitary(partial_transpose(w, t))}};
    }
    throw std::invalid_argument("unknown monomial action '" + action + "' (inspect, normal-form, transpose-search)");
}

inline nlohmann::json dense_to_json(const RMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Writes `doc` to `out` when given and returns the stdout summary; otherwise returns `doc`.
inline nlohmann::json emit(const nlohmann::json &doc, nlohmann::json summary, const std::string &out) {
    if (out.empty()) {
        return doc;
    }
    std::ofstream f(out);
    if (!f) {
        throw std::invalid_argument("cannot write '" + out + "'");
    }
    f << doc.dump(2) << '\n';
    summary["file"] = out;
    return summary;
}

inline nlohmann::json cmd_commutant(const std::string &action, int k, int n, const std::string &out) {
    if (action != "enumerate" && action != "gram" && action != "weingarten") {
        throw std::invalid_argument("unknown commutant action '" + action + "' (enumerate, gram, weingarten)");
    }
    const CommutantBasis basis = enumerate_monomials(k);
    if (action == "enumerate") {
        return emit(basis_to_json(basis), {{"k", k}, {"count", basis.size()}}, out);
    }
    if (n < 1) {
        throw std::invalid_argument("--n must be >= 1 for " + action);
    }
    const bool inverse = action == "weingarten";
    const GramData g = inverse ? weingarten(basis, n) : gram_matrix(basis, n);
    nlohmann::json summary{{"k", k}, {"n", n}, {"count", basis.size()}, {"rank", g.rank}, {"independent", g.invertible}};
    nlohmann::json doc = summary;
    doc[inverse ? "Winv" : "W"] = dense_to_json(inverse ? g.Winv : g.W);
    return emit(doc, summary, out);
}

inline nlohmann::json cmd_test(const std::string &state, int k, const std::string &task, double C) {
    const StateSpec spec = parse_state_spec(state);
    const StateVec psi = load_state(spec);
    if (k < 1) {
        throw std::invalid_argument("--k must be >= 1");
    }
    nlohmann::json j = report_to_json(run_property_test(psi, spec.text, k, task, C));
    j["seed"] = spec.seed;
    return j;
}

/// Runs the acceptance criteria; human lines go to `log`. Sets `all_passed`.
inline nlohmann::json cmd_verify(const std::string &suite, const std::vector<int> &only, const std::vector<int> &skip,
                                 const std::string &golden_state, std::ostream &log, bool &all_passed) {
    if (suite != "all" && suite != "fast") {
        throw std::invalid_argument("unknown suite '" + suite + "' (all, fast)");
    }
    acceptance::Options opt;
    opt.fast = suite == "fast";
    for (int id : only) {
        if (id < 1 || id > acceptance::kCriterionCount) {
            throw std::invalid_argument("no criterion " + std::to_string(id));
        }
        opt.only.insert(id);
    }
    opt.skip.insert(skip.begin(), skip.end());
    if (!golden_state.empty()) {
        opt.golden = load_state(parse_state_spec(golden_state));
    }
    const auto results =
        acceptance::run(opt, [&](const acceptance::Result &r) { log << acceptance::format_line(r) << std::endl; });
    all_passed = std::all_of(results.begin(), results.end(), [](const auto &r) { return r.pass; });
    for (const auto &r : results) {
        if (!r.pass) {
            log << "failing criterion: " << r.id << " (" << r.name << ")" << std::endl;
        }
    }
    return acceptance::to_json(results, opt.fast);
}

/// Runs `body`, prints its JSON to `out`, and maps exceptions to exit codes.
inline int run_guarded(const std::function<nlohmann::json()> &body, std::ostream &out, std::ostream &err) {
    try {
        out << body().dump(2) << '\n';
        return kOk;
    } catch (const ResourceError &e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceError;
    } catch (const nlohmann::json::exception &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace magiclab::cli

#endif
