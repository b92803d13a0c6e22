// Command-line front end: generate instances, run any solve pipeline,
// measure integrality gaps, and drive the randomized verification suites.
//
// Exit codes: 0 success, 1 usage or validation error, 2 infeasible,
// 3 unbounded, 4 oracle budget exceeded, 5 invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knapgap/costfree.hpp"
#include "knapgap/disjunctive.hpp"
#include "knapgap/errors.hpp"
#include "knapgap/filtering.hpp"
#include "knapgap/generator.hpp"
#include "knapgap/instance_io.hpp"
#include "knapgap/oracle.hpp"
#include "knapgap/report.hpp"
#include "knapgap/rounding.hpp"
#include "knapgap/simplex.hpp"
#include "knapgap/verify.hpp"

namespace {

using namespace knapgap;

constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnbounded = 3;
constexpr int kExitBudget = 4;
constexpr int kExitInvariant = 5;

KnapsackInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

Rational parse_rational_arg(const std::string& text, const std::string& flag) {
    auto q = parse_rational(text);
    if (!q) throw ValidationError(flag + ": expected an integer or \"p/q\"");
    return *q;
}

Json bound_to_json(const CopyBound& b) { return b.has_value() ? Json(*b) : Json("inf"); }

int run_gen(const std::string& out_path, const GenParams& params, unsigned long long seed) {
    const KnapsackInstance inst = generate_random(params, seed);
    const std::string text = serialize_instance(inst).dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ValidationError("cannot write: " + out_path);
        out << text;
    }
    return 0;
}

int run_solve(const std::string& path, const std::string& method,
              std::optional<long long> gamma, std::optional<std::string> epsilon_text,
              int threads, const std::string& trace_path, bool timings,
              unsigned long long budget) {
    const auto started = std::chrono::steady_clock::now();
    const KnapsackInstance inst = load_instance(path);
    Json doc;
    doc["method"] = method;
    doc["instance_digest"] = instance_digest(inst);

    std::optional<Rational> epsilon;
    if (epsilon_text.has_value()) epsilon = parse_rational_arg(*epsilon_text, "--epsilon");
    auto need_gamma = [&](bool squared) {
        if (gamma.has_value()) {
            if (*gamma < 0) throw ValidationError("--gamma: must be non-negative");
            return *gamma;
        }
        if (!epsilon.has_value())
            throw ValidationError("method " + method + " needs --gamma or --epsilon");
        return squared ? costfree_gamma(inst.k, *epsilon)
                       : PtasConfig{.epsilon = epsilon}.resolve_gamma(inst.k);
    };

    if (method == "naive-lp") {
        const LpSolution sol = solve_lp(naive_relaxation(inst));
        if (sol.status == LpStatus::Infeasible) {
            std::cout << Json{{"method", method}, {"status", "infeasible"}}.dump() << "\n";
            return kExitInfeasible;
        }
        if (sol.status == LpStatus::Unbounded) {
            std::cout << Json{{"method", method}, {"status", "unbounded"}}.dump() << "\n";
            return kExitUnbounded;
        }
        doc["lp_value"] = to_string(sol.objective_value);
        doc["x"] = rationals_to_json(sol.x);
        doc["fractional_coords"] = count_fractional(sol.x);
        const NormalizedInstance norm = normalize(inst);
        LpSolution perm_sol = sol;
        perm_sol.x = norm.to_normalized(sol.x);
        const auto [rounded, report] = inst.sense == Sense::Packing
                                           ? round_extreme_packing(norm, perm_sol)
                                           : round_extreme_covering(norm, perm_sol);
        doc["rounded_value"] = to_string(rounded.value);
        doc["rounding_loss"] = to_string(report.loss);
        doc["rounding_bound"] = to_string(report.bound);
        doc["solution"] = serialize_solution(norm.to_original(rounded));
    } else if (method == "ptas") {
        const long long g = need_gamma(false);
        const KnapsackInstance work = inst.sense == Sense::Covering ? cap_unbounded(inst) : inst;
        const NormalizedInstance norm = normalize(work);
        PtasOptions opts;
        opts.threads = threads;
        std::ofstream trace_out;
        if (!trace_path.empty()) {
            trace_out.open(trace_path);
            if (!trace_out) throw ValidationError("cannot write: " + trace_path);
            opts.trace = [&](const GuessTrace& t) {
                Json line;
                line["g"] = norm.to_original(t.guess.g);
                line["b_g"] = t.res.b_g;
                Json dg = Json::array();
                for (const CopyBound& b : norm.to_original(t.res.d_g)) dg.push_back(bound_to_json(b));
                line["d_g"] = std::move(dg);
                line["lp_value"] = to_string(t.lp_value);
                line["rounded"] = norm.to_original(t.rounded);
                line["candidate_value"] = to_string(t.candidate_value);
                trace_out << line.dump() << "\n";
            };
        }
        const PtasResult result = ptas_solve(norm, PtasConfig{.gamma = g}, opts);
        doc["gamma"] = g;
        doc["num_guesses"] = result.num_guesses;
        doc["best_guess"] = norm.to_original(result.best_guess.g);
        doc["solution"] = serialize_solution(norm.to_original(result.solution));
    } else if (method == "disjunctive") {
        const long long g = need_gamma(false);
        const NormalizedInstance norm = normalize(cap_unbounded(inst));
        const DisjunctiveLp dlp = build_disjunctive(norm, g);
        const DisjunctiveRoundResult result = solve_and_round(norm, g);
        doc.update(disjunctive_report(norm, dlp, result));
    } else if (method == "costfree") {
        if (inst.sense == Sense::Covering) {
            throw ContractViolation(
                "costfree: covering instances are not supported (no cost-independent analog)");
        }
        const long long g = need_gamma(true);
        const NormalizedInstance norm = normalize(cap_unbounded(inst));
        const CostfreeResult result =
            costfree_solve_gamma(norm, g, CostfreeOptions{.threads = threads});
        doc.update(costfree_report(norm, result));
    } else if (method == "dp" || method == "brute") {
        const KnapsackInstance capped = cap_unbounded(inst);
        const OracleResult result =
            method == "dp" ? dp_solve(capped, budget) : brute_force(capped, budget);
        doc["states"] = result.states;
        if (result.status == OracleStatus::Infeasible) {
            doc["status"] = "infeasible";
            std::cout << doc.dump() << "\n";
            return kExitInfeasible;
        }
        doc["status"] = "optimal";
        doc["value"] = to_string(result.value);
        doc["solution"] = serialize_solution(IntegralSolution{result.x, result.value});
    } else {
        throw ValidationError("unknown method: " + method);
    }
    if (timings) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        doc["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    std::cout << doc.dump() << "\n";
    return 0;
}

int run_gap(const std::string& path, const std::vector<long long>& gammas,
            unsigned long long budget, bool timings, int threads) {
    const KnapsackInstance inst = load_instance(path);
    GapOptions opts;
    opts.gammas = gammas;
    opts.budget = budget;
    opts.timings = timings;
    opts.threads = threads;
    bool budget_exceeded = false, violated = false;
    const Json doc = gap_report(inst, opts, &budget_exceeded, &violated);
    std::cout << doc.dump(2) << "\n";
    if (violated) return kExitInvariant;
    if (budget_exceeded) return kExitBudget;
    return 0;
}

int run_verify(const std::string& suite, unsigned long long seed, int count,
               unsigned long long budget, const std::string& dump_path) {
    const SuiteOutcome outcome = run_suite(suite, seed, count, budget);
    std::cout << "suite " << outcome.suite << ": " << (outcome.count - outcome.violations) << "/"
              << outcome.count << " ok";
    if (outcome.fallbacks > 0) std::cout << " (lambda fallbacks: " << outcome.fallbacks << ")";
    std::cout << "\n";
    if (outcome.violations == 0) return 0;
    std::cout << "violation: " << outcome.first_violation << "\n";
    if (outcome.counterexample.has_value()) {
        const std::string path =
            dump_path.empty() ? "counterexample-" + suite + ".json" : dump_path;
        std::ofstream out(path);
        out << serialize_instance(*outcome.counterexample).dump(2) << "\n";
        std::cout << "shrunk counterexample written to " << path << "\n";
    }
    return kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact LP relaxations for k-dimensional knapsack"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    GenParams params;
    unsigned long long seed = 0;
    std::string out_path, sense_text = "packing", tightness_text = "1/2";
    std::vector<long long> b_range;
    gen->add_option("--k", params.k, "number of knapsack rows");
    gen->add_option("--n", params.n, "number of items");
    gen->add_option("--sense", sense_text, "packing or covering");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out,-o", out_path, "output file (default stdout)");
    gen->add_option("--wmin", params.weight_min, "minimum weight entry");
    gen->add_option("--wmax", params.weight_max, "maximum weight entry");
    gen->add_option("--cmin", params.cost_min, "minimum cost numerator");
    gen->add_option("--cmax", params.cost_max, "maximum cost numerator");
    gen->add_option("--cden", params.cost_den_max, "maximum cost denominator");
    gen->add_option("--dmin", params.dbound_min, "minimum copy bound");
    gen->add_option("--dmax", params.dbound_max, "maximum copy bound");
    gen->add_option("--tightness", tightness_text, "rhs tightness in [0,1], rational");
    gen->add_option("--brange", b_range, "explicit b range: lo hi")->expected(2);

    // solve
    auto* solve = app.add_subcommand("solve", "run one method on an instance");
    std::string solve_path, method;
    std::optional<long long> gamma_opt;
    long long gamma_val = -1;
    std::string epsilon_text;
    int threads = 1;
    std::string trace_path;
    bool timings = false;
    unsigned long long budget = oracle_budget_from_env();
    solve->add_option("instance", solve_path, "instance JSON file")->required();
    solve->add_option("--method,-m", method, "naive-lp|ptas|disjunctive|costfree|dp|brute")
        ->required();
    solve->add_option("--gamma,-g", gamma_val, "guess size");
    solve->add_option("--epsilon,-e", epsilon_text, "accuracy, rational (\"1/2\")");
    solve->add_option("--threads,-t", threads, "worker threads for per-guess solves");
    solve->add_option("--trace", trace_path, "write a JSONL per-guess trace here");
    solve->add_flag("--timings", timings, "attach wall-clock timings to the report");
    solve->add_option("--budget", budget, "oracle state budget");

    // gap
    auto* gap = app.add_subcommand("gap", "compare relaxations against the exact optimum");
    std::string gap_path;
    std::vector<long long> gammas{1, 2};
    gap->add_option("instance", gap_path, "instance JSON file")->required();
    gap->add_option("--gammas", gammas, "guess sizes to sweep");
    gap->add_option("--budget", budget, "oracle state budget");
    gap->add_flag("--timings", timings, "attach wall-clock timings");
    gap->add_option("--threads,-t", threads, "worker threads");

    // verify
    auto* verify = app.add_subcommand("verify", "run a randomized property suite");
    std::string suite;
    int count = 100;
    unsigned long long vseed = 1;
    std::string dump_path;
    verify->add_option("suite", suite,
                       "lemma1|corollary2|ptas|disjunctive-equality|covering|costfree|oracle-agreement")
        ->required();
    verify->add_option("--count", count, "number of random instances");
    verify->add_option("--seed", vseed, "base seed");
    verify->add_option("--budget", budget, "oracle state budget");
    verify->add_option("--dump", dump_path, "counterexample output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (sense_text != "packing" && sense_text != "covering")
                throw ValidationError("--sense: expected packing or covering");
            params.sense = sense_text == "packing" ? Sense::Packing : Sense::Covering;
            params.tightness = parse_rational_arg(tightness_text, "--tightness");
            if (!b_range.empty()) params.b_range = {b_range[0], b_range[1]};
            return run_gen(out_path, params, seed);
        }
        if (solve->parsed()) {
            if (solve->count("--gamma") > 0) gamma_opt = gamma_val;
            std::optional<std::string> eps;
            if (solve->count("--epsilon") > 0) eps = epsilon_text;
            return run_solve(solve_path, method, gamma_opt, eps, threads, trace_path, timings,
                             budget);
        }
        if (gap->parsed()) return run_gap(gap_path, gammas, budget, timings, threads);
        if (verify->parsed()) return run_verify(suite, vseed, count, budget, dump_path);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const UnboundedError& e) {
        std::cerr << "unbounded: " << e.what() << "\n";
        return kExitUnbounded;
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ContractViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
