// Command-line frontend: seeded, deterministic runs of the amplification,
// estimation, counting and availability-scenario simulations with JSON or
// CSV output on stdout.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "availsim/availsim.hpp"

namespace {

using nlohmann::ordered_json;
using namespace availsim;

enum class Format { Json, Csv };

struct CommonOpts {
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    Format format = Format::Json;
    bool timing = false;
};

std::string ordering_name(Ordering o) {
    switch (o) {
    case Ordering::FirstHigher:
        return "first_higher";
    case Ordering::SecondHigher:
        return "second_higher";
    default:
        return "tie";
    }
}

std::string agreement_name(Agreement a) {
    switch (a) {
    case Agreement::Agree:
        return "agree";
    case Agreement::Disagree:
        return "disagree";
    default:
        return "tie";
    }
}

GuessPrep make_prep(std::size_t n, const std::vector<double> &weights) {
    if (weights.empty()) {
        return GuessPrep::uniform();
    }
    if (weights.size() != n) {
        throw CLI::ValidationError("--weights", "expected exactly " + std::to_string(n) +
                                                    " comma-separated weights");
    }
    return GuessPrep::weighted(weights);
}

ordered_json summary_json(const CorrelationSummary &s) {
    ordered_json j;
    j["agree"] = s.agree;
    j["disagree"] = s.disagree;
    j["ties"] = s.ties;
    j["no_signal"] = s.no_signal;
    if (!s.no_signal) {
        j["agreement_rate"] = s.agreement_rate;
        j["rank_correlation"] = s.rank_correlation;
    }
    return j;
}

ordered_json scenario_trial_json(std::size_t index, const ScenarioResult &r) {
    ordered_json j;
    j["trial"] = index;
    for (const GroupOutcome &g : r.groups) {
        ordered_json gj;
        gj["a"] = g.a;
        gj["t_true"] = g.t_true;
        gj["recalled"] = g.recalled;
        gj["speed"] = g.speed;
        gj["a_hat"] = g.a_hat;
        gj["t_hat"] = g.t_hat;
        j["groups"][g.label] = gj;
    }
    j["recall_order"] = ordering_name(r.recall_order);
    j["estimate_order"] = ordering_name(r.estimate_order);
    j["agreement"] = agreement_name(r.agreement());
    return j;
}

void emit_json(const ordered_json &config, const ordered_json &result, const ordered_json &metrics,
               const CommonOpts &opts, double wall_ms) {
    ordered_json doc;
    doc["config"] = config;
    doc["result"] = result;
    doc["metrics"] = metrics;
    if (opts.timing) {
        doc["timing"] = {{"wall_ms", wall_ms}};
    }
    std::cout << doc.dump(2) << "\n";
}

void emit_csv_config(const ordered_json &config) {
    for (const auto &[key, value] : config.items()) {
        std::cout << "# " << key << "=" << value.dump() << "\n";
    }
}

// CSV cells here are numbers or identifier-like strings; no quoting needed.
void emit_csv(const ordered_json &config, const std::vector<std::string> &header,
              const std::vector<std::vector<std::string>> &rows) {
    emit_csv_config(config);
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::cout << (i ? "," : "") << header[i];
    }
    std::cout << "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::cout << (i ? "," : "") << row[i];
        }
        std::cout << "\n";
    }
}

std::string num(double v) {
    ordered_json j = v;
    return j.dump();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

int run_amplify(std::size_t n, const std::vector<std::size_t> &good,
                const std::vector<double> &weights, const CommonOpts &opts) {
    Timer timer;
    const Oracle oracle(n, good);
    const GuessPrep prep = make_prep(n, weights);
    if (oracle.good_count() == 0) {
        throw NoGoodItems("amplify: the good set is empty");
    }
    const double a = good_probability(prepare(prep, n), oracle);
    const AmplificationSchedule sched = schedule(a);

    ordered_json config;
    config["command"] = "amplify";
    config["n"] = n;
    config["good"] = good;
    config["weights"] = weights;
    config["seed"] = opts.seed;
    config["trials"] = opts.trials;

    ordered_json result;
    result["a"] = a;
    result["theta"] = sched.theta;
    result["m"] = sched.iterations;
    result["success_probability"] = success_probability(prep, oracle, sched.iterations);
    result["availability_by_speed"] = availability_by_speed(a);

    std::vector<std::vector<std::string>> rows;
    std::uint64_t total_oracle_calls = 0;
    ordered_json trials = ordered_json::array();
    for (std::size_t i = 0; i < opts.trials; ++i) {
        const RetrievalRun run = retrieve(prep, oracle, derive_seed(opts.seed, i));
        total_oracle_calls += run.oracle_calls;
        ordered_json tj;
        tj["trial"] = i;
        tj["item"] = run.item;
        tj["is_good"] = run.is_good;
        tj["iterations_used"] = run.iterations_used;
        tj["oracle_calls"] = run.oracle_calls;
        trials.push_back(tj);
        rows.push_back({std::to_string(i), std::to_string(run.item), run.is_good ? "1" : "0",
                        std::to_string(run.iterations_used), std::to_string(run.oracle_calls)});
    }
    result["trials"] = trials;

    ordered_json metrics;
    metrics["oracle_calls_total"] = total_oracle_calls;

    if (opts.format == Format::Csv) {
        emit_csv(config, {"trial", "item", "is_good", "iterations_used", "oracle_calls"}, rows);
    } else {
        emit_json(config, result, metrics, opts, timer.ms());
    }
    return 0;
}

int run_estimate_or_count(bool counting, std::size_t n, const std::vector<std::size_t> &good,
                          const std::vector<double> &weights, std::size_t m,
                          const CommonOpts &opts) {
    Timer timer;
    const Oracle oracle(n, good);
    const GuessPrep prep = make_prep(n, weights);
    const double a = good_probability(prepare(prep, n), oracle);
    const std::vector<double> dist = est_amp_distribution({m, prep, oracle});

    ordered_json config;
    config["command"] = counting ? "count" : "estimate";
    config["n"] = n;
    config["good"] = good;
    config["weights"] = weights;
    config["m"] = m;
    config["seed"] = opts.seed;
    config["trials"] = opts.trials;

    ordered_json result;
    result["a"] = a;
    result["t_true"] = oracle.good_count();
    ordered_json dj = ordered_json::array();
    for (std::size_t y = 0; y < dist.size(); ++y) {
        dj.push_back({{"y", y},
                      {"probability", dist[y]},
                      {"a_hat", a_hat_of(y, m)},
                      {"t_hat", static_cast<double>(n) * a_hat_of(y, m)}});
    }
    result["distribution"] = dj;
    if (counting) {
        const auto bins = count_distribution(prep, oracle, m);
        result["median_t_hat"] = distribution_median(bins);
        result["modal_t_hat"] = distribution_mode(bins);
        result["biased"] = !prep.is_uniform();
    }

    std::vector<std::vector<std::string>> rows;
    ordered_json trials = ordered_json::array();
    for (std::size_t i = 0; i < opts.trials; ++i) {
        const EstimationOutcome est = sample_estimation(dist, derive_seed(opts.seed, i));
        ordered_json tj;
        tj["trial"] = i;
        tj["y"] = est.y;
        tj["a_hat"] = est.a_hat;
        if (counting) {
            tj["t_hat"] = static_cast<double>(n) * est.a_hat;
        }
        trials.push_back(tj);
        std::vector<std::string> row = {std::to_string(i), std::to_string(est.y), num(est.a_hat)};
        if (counting) {
            row.push_back(num(static_cast<double>(n) * est.a_hat));
        }
        rows.push_back(row);
    }
    result["trials"] = trials;

    ordered_json metrics;
    metrics["quantum_oracle_calls_per_run"] = static_cast<std::uint64_t>(m) * (m - 1) / 2;
    metrics["classical_oracle_calls_per_run"] = n;

    if (opts.format == Format::Csv) {
        if (opts.trials == 0) {
            // Exact mode: emit the outcome law as (y, probability, t_hat) triples.
            std::vector<std::vector<std::string>> drows;
            for (std::size_t y = 0; y < dist.size(); ++y) {
                drows.push_back({std::to_string(y), num(dist[y]),
                                 num(static_cast<double>(n) * a_hat_of(y, m))});
            }
            emit_csv(config, {"y", "probability", "t_hat"}, drows);
        } else if (counting) {
            emit_csv(config, {"trial", "y", "a_hat", "t_hat"}, rows);
        } else {
            emit_csv(config, {"trial", "y", "a_hat"}, rows);
        }
    } else {
        emit_json(config, result, metrics, opts, timer.ms());
    }
    return 0;
}

int emit_scenario(const ordered_json &config, const std::vector<ScenarioResult> &results,
                  const std::vector<std::string> &labels, const CommonOpts &opts, double wall_ms,
                  std::uint64_t register_dim, std::size_t n) {
    ordered_json result;
    ordered_json trials = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < results.size(); ++i) {
        trials.push_back(scenario_trial_json(i, results[i]));
        const ScenarioResult &r = results[i];
        rows.push_back({std::to_string(i), std::to_string(r.groups[0].recalled),
                        std::to_string(r.groups[1].recalled), num(r.groups[0].t_hat),
                        num(r.groups[1].t_hat), ordering_name(r.recall_order),
                        ordering_name(r.estimate_order), agreement_name(r.agreement())});
    }
    result["groups"] = ordered_json::array();
    for (std::size_t g = 0; g < results[0].groups.size(); ++g) {
        const GroupOutcome &go = results[0].groups[g];
        result["groups"].push_back({{"label", labels[g]},
                                    {"a", go.a},
                                    {"t_true", go.t_true},
                                    {"speed", go.speed}});
    }
    result["trials"] = trials;
    if (results.size() >= 2) {
        result["summary"] = summary_json(correlation_summary(results));
    }

    ordered_json metrics;
    metrics["quantum_oracle_calls_per_estimate"] =
        register_dim * (register_dim - 1) / 2;
    metrics["classical_oracle_calls_per_estimate"] = n;

    if (opts.format == Format::Csv) {
        emit_csv(config,
                 {"trial", "recalled_" + labels[0], "recalled_" + labels[1], "t_hat_" + labels[0],
                  "t_hat_" + labels[1], "recall_order", "estimate_order", "agreement"},
                 rows);
    } else {
        emit_json(config, result, metrics, opts, wall_ms);
    }
    return 0;
}

int run_selftest_cmd(bool perturb, const CommonOpts &opts) {
    Timer timer;
    const std::vector<CheckResult> checks = run_selftest(perturb);
    bool all_passed = true;
    ordered_json config;
    config["command"] = "selftest";
    config["perturb_kernel"] = perturb;
    ordered_json result;
    ordered_json list = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    for (const CheckResult &c : checks) {
        all_passed = all_passed && c.passed;
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        rows.push_back({c.name, c.passed ? "1" : "0"});
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    }
    result["checks"] = list;
    result["all_passed"] = all_passed;
    ordered_json metrics;
    metrics["checks_total"] = checks.size();
    if (opts.format == Format::Csv) {
        emit_csv(config, {"name", "passed"}, rows);
    } else {
        emit_json(config, result, metrics, opts, timer.ms());
    }
    return all_passed ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"availsim: amplitude amplification / estimation / counting simulator "
                 "with availability-bias experiment scenarios"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string format_name = "json";
    app.add_option("--format", format_name, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--timing", opts.timing,
                 "Include wall-clock timing in the output (breaks byte-identical reruns)");

    // amplify
    std::size_t n = 4;
    std::vector<std::size_t> good;
    std::vector<double> weights;
    auto *amplify_cmd = app.add_subcommand("amplify", "Run one or more seeded retrievals");
    amplify_cmd->add_option("--n", n, "Number of items")->required()->check(CLI::PositiveNumber);
    amplify_cmd->add_option("--good", good, "Good item indices (comma-separated)")
        ->required()
        ->delimiter(',');
    amplify_cmd->add_option("--weights", weights, "Guess-state weights, one per item")
        ->delimiter(',');
    amplify_cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    amplify_cmd->add_option("--trials", opts.trials, "Number of retrievals")
        ->capture_default_str();

    // estimate / count
    std::size_t register_dim = 16;
    auto add_est_flags = [&](CLI::App *cmd) {
        cmd->add_option("--n", n, "Number of items")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--good", good, "Good item indices (comma-separated)")
            ->required()
            ->delimiter(',');
        cmd->add_option("--m", register_dim, "Estimation register dimension M")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--weights", weights, "Guess-state weights, one per item")
            ->delimiter(',');
        cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
        cmd->add_option("--trials", opts.trials, "Sampled runs (0 = exact distribution only)")
            ->capture_default_str();
    };
    auto *estimate_cmd = app.add_subcommand("estimate", "Amplitude estimation Est_Amp(A, f, M)");
    add_est_flags(estimate_cmd);
    auto *count_cmd = app.add_subcommand("count", "Quantum counting: N x Est_Amp");
    add_est_flags(count_cmd);

    // scenario-letter
    std::string lexicon_path;
    std::string letter = "r";
    double boost = 4.0;
    std::uint64_t budget = 60;
    auto *letter_cmd =
        app.add_subcommand("scenario-letter", "Letter-position availability scenario");
    letter_cmd->add_option("--lexicon", lexicon_path, "Lexicon file path")->required();
    letter_cmd->add_option("--letter", letter, "Letter to partition on")->capture_default_str();
    letter_cmd->add_option("--boost", boost, "Weight factor for position-1 words")
        ->capture_default_str();
    letter_cmd->add_option("--m", register_dim, "Estimation register dimension M")
        ->capture_default_str();
    letter_cmd->add_option("--budget", budget, "Recall time budget")->capture_default_str();
    letter_cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    letter_cmd->add_option("--trials", opts.trials, "Trial count")->capture_default_str();

    // scenario-names
    std::size_t size1 = 19, size2 = 20;
    double factor1 = 2.0, factor2 = 1.0;
    auto *names_cmd = app.add_subcommand("scenario-names", "Famous-names availability scenario");
    names_cmd->add_option("--size1", size1, "Size of the first (famous) group")
        ->capture_default_str();
    names_cmd->add_option("--size2", size2, "Size of the second group")->capture_default_str();
    names_cmd->add_option("--factor1", factor1, "Weight factor, first group")
        ->capture_default_str();
    names_cmd->add_option("--factor2", factor2, "Weight factor, second group")
        ->capture_default_str();
    names_cmd->add_option("--m", register_dim, "Estimation register dimension M")
        ->capture_default_str();
    names_cmd->add_option("--budget", budget, "Recall time budget")->capture_default_str();
    names_cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    names_cmd->add_option("--trials", opts.trials, "Trial count")->capture_default_str();

    // selftest
    bool perturb = false;
    auto *selftest_cmd =
        app.add_subcommand("selftest", "Run the reduced invariant suite (N <= 64, M <= 32)");
    selftest_cmd->add_flag("--perturb-kernel", perturb,
                           "Test hook: inject a kernel perturbation (must fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    opts.format = format_name == "csv" ? Format::Csv : Format::Json;

    try {
        if (n > default_limits().max_dim) {
            throw CapExceeded("n exceeds the configured maximum dimension");
        }
        if (amplify_cmd->parsed()) {
            return run_amplify(n, good, weights, opts);
        }
        if (estimate_cmd->parsed() || count_cmd->parsed()) {
            return run_estimate_or_count(count_cmd->parsed(), n, good, weights, register_dim,
                                         opts);
        }
        if (letter_cmd->parsed()) {
            Timer timer;
            if (letter.size() != 1) {
                throw CLI::ValidationError("--letter", "expected a single character");
            }
            if (!letter_cmd->count("--m")) {
                register_dim = 128;
            }
            const Lexicon lex = load_lexicon_file(lexicon_path);
            const auto results = run_letter_scenario_trials(lex, letter[0], boost, register_dim,
                                                            budget, opts.seed, opts.trials);
            ordered_json config;
            config["command"] = "scenario-letter";
            config["lexicon"] = lexicon_path;
            config["letter"] = letter;
            config["boost"] = boost;
            config["m"] = register_dim;
            config["budget"] = budget;
            config["seed"] = opts.seed;
            config["trials"] = opts.trials;
            return emit_scenario(config, results, {"pos1", "pos3"}, opts, timer.ms(),
                                 register_dim, lex.size());
        }
        if (names_cmd->parsed()) {
            Timer timer;
            if (!names_cmd->count("--m")) {
                register_dim = 32;
            }
            if (!names_cmd->count("--budget")) {
                budget = 50;
            }
            const auto results =
                run_names_scenario({"famous", size1, factor1}, {"other", size2, factor2},
                                   register_dim, budget, opts.seed, opts.trials);
            ordered_json config;
            config["command"] = "scenario-names";
            config["size1"] = size1;
            config["size2"] = size2;
            config["factor1"] = factor1;
            config["factor2"] = factor2;
            config["m"] = register_dim;
            config["budget"] = budget;
            config["seed"] = opts.seed;
            config["trials"] = opts.trials;
            return emit_scenario(config, results, {"famous", "other"}, opts, timer.ms(),
                                 register_dim, size1 + size2);
        }
        if (selftest_cmd->parsed()) {
            return run_selftest_cmd(perturb, opts);
        }
    } catch (const CLI::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CapExceeded &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
