// Copyright 2025 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbmsm/env.hpp"
#include "sbmsm/exact_solver.hpp"
#include "sbmsm/greedy.hpp"
#include "sbmsm/harness.hpp"
#include "sbmsm/io.hpp"
#include "sbmsm/oracles.hpp"
#include "sbmsm/probing.hpp"

namespace {

using nlohmann::json;
using namespace sbmsm;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // validation or property failure
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

struct CommonFlags {
  double epsilon = 0.1;
  double c = 1.0;
  double delta = 0.0;  // > 0 overrides the epsilon mapping
  double xi = 0.0;
  std::string mode = "monte_carlo";
  long long q_override = 0;
  long long rollouts = 10000;
  std::uint64_t seed = 42;
  int workers = 1;
  std::string output;
};

long long sample_ceiling_from_env() {
  const char* raw = std::getenv("SBMSM_SAMPLE_CEILING");
  if (!raw) return 10000000;
  return std::stoll(raw);
}

OracleConfig make_config(const CommonFlags& flags, const Instance& instance,
                         double* delta_out, double* xi_out) {
  OracleConfig config;
  config.mode =
      flags.mode == "exact" ? OracleMode::kExact : OracleMode::kMonteCarlo;
  config.workers = flags.workers;
  config.q_override = flags.q_override;
  config.sample_ceiling = sample_ceiling_from_env();
  if (flags.delta > 0.0) {
    config.delta = flags.delta;
    config.xi = flags.xi > 0.0 ? flags.xi : flags.delta;
  } else {
    auto [d, x] = epsilon_to_params(flags.epsilon, flags.c,
                                    instance.header.lambda,
                                    instance.header.capital_lambda,
                                    instance.budget());
    config.delta = d;
    config.xi = x;
  }
  if (delta_out) *delta_out = config.delta;
  if (xi_out) *xi_out = config.xi;
  config.validate(instance);
  return config;
}

void emit(const json& j, const std::string& output) {
  std::string text = j.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    write_file(output, text);
}

int cmd_validate(const std::string& path) {
  Instance instance = load_instance(path);
  validate_instance(instance);
  json j = {{"command", "validate"}, {"instance", path}, {"status", "ok"}};
  emit(j, "");
  return kExitOk;
}

int cmd_exact(const std::string& path, const std::string& output,
              bool override_guards) {
  Instance instance = load_instance(path);
  validate_instance(instance);
  if (instance.kind() == ModelKind::kProbing)
    instance = probing_to_tabular(instance);
  SolveGuards guards;
  guards.override_guards = override_guards;
  ExactPolicy policy = solve_dp(instance, guards);
  json j = policy_to_json(policy);
  j["command"] = "exact";
  j["instance"] = path;
  j["optimal_value"] = policy.table.at(1, instance.budget());
  emit(j, output);
  return kExitOk;
}

int cmd_greedy(const std::string& path, const CommonFlags& flags,
               const std::string& trace_path) {
  Instance instance = load_instance(path);
  validate_instance(instance);
  if (flags.mode == "exact" && instance.kind() == ModelKind::kProbing)
    instance = probing_to_tabular(instance);
  double delta = 0.0, xi = 0.0;
  OracleConfig config = make_config(flags, instance, &delta, &xi);

  BudgetVector budget = budget_gr(instance, config, flags.seed);

  GreedyTrace trace;
  trace.budgets = budget;
  for (int t = 1; t <= instance.horizon(); ++t) {
    RngStream env_rng = RngStream::split(flags.seed, "multi-gr-env",
                                         static_cast<std::uint64_t>(t));
    auto env = make_round_rollout(instance, t, env_rng);
    single_gr(instance, t, budget.b[t - 1], config, *env, flags.seed, &trace);
    trace.realized_value += env->current_value();
  }

  const double range = instance.horizon() * instance.num_items() *
                       instance.header.capital_lambda;
  ValueEstimate estimate = estimate_policy_value(
      [&](RngStream& rng) {
        std::uint64_t master = rng.next_u64();
        double value = 0.0;
        for (int t = 1; t <= instance.horizon(); ++t) {
          RngStream env_rng = RngStream::split(master, "multi-gr-env",
                                               static_cast<std::uint64_t>(t));
          auto env = make_round_rollout(instance, t, env_rng);
          single_gr(instance, t, budget.b[t - 1], config, *env, master,
                    nullptr);
          value += env->current_value();
        }
        return value;
      },
      flags.rollouts, flags.seed, range);

  json j = {{"command", "greedy"},
            {"instance", path},
            {"epsilon", flags.epsilon},
            {"c", flags.c},
            {"delta", delta},
            {"xi", xi},
            {"mode", flags.mode},
            {"q_override", flags.q_override},
            {"rollouts", flags.rollouts},
            {"seed", flags.seed},
            {"workers", flags.workers},
            {"sample_ceiling", sample_ceiling_from_env()},
            {"budget_vector", budget.b},
            {"realized_value", trace.realized_value},
            {"estimate", value_estimate_to_json(estimate)}};
  emit(j, flags.output);
  if (!trace_path.empty()) write_file(trace_path, trace_to_json_lines(trace));
  return kExitOk;
}

int cmd_eval(const std::string& path, const std::string& policy_path,
             long long rollouts, std::uint64_t seed,
             const std::string& output) {
  Instance instance = load_instance(path);
  validate_instance(instance);
  if (instance.kind() == ModelKind::kProbing)
    instance = probing_to_tabular(instance);
  ExactPolicy policy = policy_from_json(json::parse(read_file(policy_path)));
  const double range = instance.horizon() * instance.num_items() *
                       instance.header.capital_lambda;
  ValueEstimate estimate = estimate_policy_value(
      [&](RngStream& rng) {
        return execute_exact_policy(policy, instance, rng).value;
      },
      rollouts, seed, range);
  json j = {{"command", "eval"},
            {"instance", path},
            {"policy", policy_path},
            {"rollouts", rollouts},
            {"seed", seed},
            {"estimate", value_estimate_to_json(estimate)}};
  emit(j, output);
  return kExitOk;
}

int cmd_gap(int T, long long rollouts, std::uint64_t seed, bool csv,
            const std::string& output) {
  GapReport report = gap_report(T, rollouts, seed);
  if (csv) {
    std::string text = gap_report_to_csv(report);
    if (output.empty())
      std::cout << text;
    else
      write_file(output, text);
  } else {
    json j = gap_report_to_json(report);
    j["command"] = "gap";
    j["rollouts"] = rollouts;
    j["seed"] = seed;
    emit(j, output);
  }
  return kExitOk;
}

int cmd_check(const std::string& path, const std::string& property,
              std::uint64_t seed, const std::string& output) {
  Instance instance = load_instance(path);
  validate_instance(instance);
  json j = {{"command", "check"},
            {"instance", path},
            {"property", property},
            {"seed", seed}};
  bool pass = false;

  if (property == "submodularity") {
    Instance tab = instance.kind() == ModelKind::kProbing
                       ? probing_to_tabular(instance)
                       : instance;
    SubmodularityCheck check = check_adaptive_submodularity(tab);
    pass = check.pass;
    if (!check.pass) j["witness"] = check.witness;
  } else if (property == "oracle-equivalence") {
    Instance tab = instance.kind() == ModelKind::kProbing
                       ? probing_to_tabular(instance)
                       : instance;
    double dp = solve_dp(tab).table.at(1, tab.budget());
    double bf = brute_force_opt(tab);
    j["exact_solver"] = dp;
    j["brute_force"] = bf;
    pass = std::abs(dp - bf) <= 1e-9;
  } else if (property == "lemma4") {
    Instance tab = instance.kind() == ModelKind::kProbing
                       ? probing_to_tabular(instance)
                       : instance;
    OracleConfig exact;
    exact.mode = OracleMode::kExact;
    pass = true;
    for (int t = 1; t <= tab.horizon(); ++t) {
      auto profile = exact_greedy_profile(tab, t);
      for (std::size_t i = 1; i < profile.size(); ++i) {
        if (profile[i] > profile[i - 1] + 1e-9) {
          pass = false;
          j["witness"] = "round " + std::to_string(t) + ": step " +
                         std::to_string(i + 1) + " increases";
        }
      }
    }
    if (pass) {
      BudgetVector chosen = budget_gr(tab, exact, seed);
      double chosen_value = greedy_expected_value(tab, chosen);
      double best = 0.0;
      std::function<void(int, int, BudgetVector&)> rec =
          [&](int t, int left, BudgetVector& acc) {
            if (t > tab.horizon()) {
              if (left == 0)
                best = std::max(best, greedy_expected_value(tab, acc));
              return;
            }
            for (int b = 0; b <= std::min(left, tab.num_items()); ++b) {
              acc.b[t - 1] = b;
              rec(t + 1, left - b, acc);
            }
          };
      BudgetVector acc;
      acc.b.assign(tab.horizon(), 0);
      rec(1, tab.budget(), acc);
      j["budget_gr_value"] = chosen_value;
      j["enumeration_max"] = best;
      pass = chosen_value >= best - 1e-9;
    }
  } else if (property == "thm1-ratio") {
    Instance tab = instance.kind() == ModelKind::kProbing
                       ? probing_to_tabular(instance)
                       : instance;
    OracleConfig exact;
    exact.mode = OracleMode::kExact;
    double opt = solve_dp(tab).table.at(1, tab.budget());
    double gr = greedy_expected_value(tab, budget_gr(tab, exact, seed));
    j["optimum"] = opt;
    j["greedy"] = gr;
    j["bound"] = 0.5 * (1.0 - std::exp(-1.0)) * opt;
    pass = gr >= 0.5 * (1.0 - std::exp(-1.0)) * opt - 1e-9;
  } else if (property == "thm2-sandwich") {
    Instance tab = instance.kind() == ModelKind::kProbing
                       ? probing_to_tabular(instance)
                       : instance;
    double opt = solve_dp(tab).table.at(1, tab.budget());
    double best = best_budget_vector_value(tab);
    j["optimum"] = opt;
    j["best_budget_vector"] = best;
    pass = opt <= 2.0 * best + 1e-9;
  } else {
    throw UsageError("unknown property: " + property);
  }

  j["pass"] = pass;
  emit(j, output);
  return pass ? kExitOk : kExitFailure;
}

int cmd_gen(const std::string& family, int T, int n, const std::string& output) {
  Instance instance = [&] {
    if (family == "remark1") return remark1_instance(T);
    if (family == "remark3") return remark3_instance(n);
    if (family == "gap") return gap_instance(T);
    throw UsageError("unknown family: " + family);
  }();
  if (output.empty())
    std::cout << instance_to_json(instance).dump(2) << "\n";
  else
    save_instance(instance, output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic budgeted multi-round submodular maximization toolkit"};
  app.require_subcommand(1);

  std::string instance_path, policy_path, property, trace_path, family;
  CommonFlags flags;
  int T = 4, n = 4;
  long long rollouts = 10000;
  std::uint64_t seed = 42;
  bool csv = false, override_guards = false;
  std::string output;

  auto* validate = app.add_subcommand("validate", "Validate an instance file");
  validate->add_option("instance", instance_path)->required();

  auto* exact = app.add_subcommand("exact", "Solve exactly (tabular only)");
  exact->add_option("instance", instance_path)->required();
  exact->add_option("--output", output);
  exact->add_flag("--override-guards", override_guards);

  auto* greedy = app.add_subcommand("greedy", "Run the partially adaptive greedy");
  greedy->add_option("instance", instance_path)->required();
  greedy->add_option("--epsilon", flags.epsilon);
  greedy->add_option("--c", flags.c);
  greedy->add_option("--delta", flags.delta);
  greedy->add_option("--xi", flags.xi);
  greedy->add_option("--mode", flags.mode)
      ->check(CLI::IsMember({"monte_carlo", "exact"}));
  greedy->add_option("--q-override", flags.q_override);
  greedy->add_option("--rollouts", flags.rollouts);
  greedy->add_option("--seed", flags.seed);
  greedy->add_option("--workers", flags.workers);
  greedy->add_option("--output", flags.output);
  greedy->add_option("--trace", trace_path);

  auto* eval = app.add_subcommand("eval", "Estimate a stored policy's value");
  eval->add_option("instance", instance_path)->required();
  eval->add_option("--policy", policy_path)->required();
  eval->add_option("--rollouts", rollouts);
  eval->add_option("--seed", seed);
  eval->add_option("--output", output);

  auto* gap = app.add_subcommand("gap", "Budget-adaptivity gap report");
  gap->add_option("--T", T);
  gap->add_option("--rollouts", rollouts);
  gap->add_option("--seed", seed);
  gap->add_flag("--csv", csv);
  gap->add_option("--output", output);

  auto* check = app.add_subcommand("check", "Run a property check");
  check->add_option("instance", instance_path)->required();
  check->add_option("--property", property)
      ->required()
      ->check(CLI::IsMember({"submodularity", "oracle-equivalence", "lemma4",
                             "thm1-ratio", "thm2-sandwich"}));
  check->add_option("--seed", seed);
  check->add_option("--output", output);

  auto* gen = app.add_subcommand("gen", "Emit a constructed instance");
  gen->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"remark1", "remark3", "gap"}));
  gen->add_option("--T", T);
  gen->add_option("--n", n);
  gen->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(instance_path);
    if (exact->parsed()) return cmd_exact(instance_path, output, override_guards);
    if (greedy->parsed()) return cmd_greedy(instance_path, flags, trace_path);
    if (eval->parsed())
      return cmd_eval(instance_path, policy_path, rollouts, seed, output);
    if (gap->parsed()) return cmd_gap(T, rollouts, seed, csv, output);
    if (check->parsed()) return cmd_check(instance_path, property, seed, output);
    if (gen->parsed()) return cmd_gen(family, T, n, output);
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const ValidationError& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitFailure;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
