#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "availsim/amplify.hpp"
#include "availsim/count.hpp"
#include "availsim/estimate.hpp"

namespace availsim {

/// Word list the letter-position scenarios partition. Frequencies are
/// optional per-word weights for the guess-state construction.
struct Lexicon {
    std::vector<std::string> words;
    std::vector<double> freqs; ///< empty when the file has no frequency column

    std::size_t size() const { return words.size(); }
    bool has_freqs() const { return !freqs.empty(); }
};

/// Parses the lexicon line format: one entry per line, `word` or
/// `word<TAB>frequency`; `#` lines and blank lines are skipped; words are
/// lowercased. Mixing lines with and without frequencies is an error.
inline Lexicon load_lexicon(std::istream &in) {
    Lexicon lex;
    std::unordered_set<std::string> seen;
    std::string line;
    bool any_freq = false, any_plain = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::string word;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            word = line;
            any_plain = true;
        } else {
            word = line.substr(0, tab);
            const std::string freq_str = line.substr(tab + 1);
            std::size_t consumed = 0;
            double freq = 0.0;
            try {
                freq = std::stod(freq_str, &consumed);
            } catch (const std::exception &) {
                throw LexiconError("line " + std::to_string(line_no) + ": malformed frequency");
            }
            if (consumed != freq_str.size() || !std::isfinite(freq)) {
                throw LexiconError("line " + std::to_string(line_no) + ": malformed frequency");
            }
            if (freq < 0.0) {
                throw LexiconError("line " + std::to_string(line_no) + ": negative frequency");
            }
            lex.freqs.push_back(freq);
            any_freq = true;
        }
        if (word.empty()) {
            throw LexiconError("line " + std::to_string(line_no) + ": empty word");
        }
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!seen.insert(word).second) {
            throw LexiconError("line " + std::to_string(line_no) + ": duplicate word '" + word + "'");
        }
        lex.words.push_back(std::move(word));
    }
    if (any_freq && any_plain) {
        throw LexiconError("mixed format: some lines have frequencies, some do not");
    }
    if (lex.words.empty()) {
        throw LexiconError("empty lexicon");
    }
    if (lex.has_freqs()) {
        double total = 0.0;
        for (double f : lex.freqs) {
            total += f;
        }
        if (total <= 0.0) {
            throw LexiconError("all frequencies are zero");
        }
    }
    return lex;
}

inline Lexicon load_lexicon_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw LexiconError("cannot open lexicon file: " + path);
    }
    return load_lexicon(in);
}

/// Good set: words whose character at `position` (1-based) equals `letter`.
/// Words shorter than `position` are bad.
inline Oracle letter_position_oracle(const Lexicon &lex, char letter, std::size_t position) {
    if (position == 0) {
        throw std::invalid_argument("letter_position_oracle: position is 1-based");
    }
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < lex.size(); ++i) {
        const std::string &w = lex.words[i];
        if (w.size() >= position && w[position - 1] == letter) {
            good.push_back(i);
        }
    }
    return Oracle(lex.size(), good);
}

/// Guess state over the lexicon: base weight is the word frequency (or 1),
/// multiplied by the factor of every boost oracle containing the word,
/// then normalized.
inline GuessPrep build_guess_state(const Lexicon &lex,
                                   const std::vector<std::pair<Oracle, double>> &boosts) {
    std::vector<double> w(lex.size(), 1.0);
    if (lex.has_freqs()) {
        w = lex.freqs;
    }
    for (const auto &[oracle, factor] : boosts) {
        if (oracle.dim() != lex.size()) {
            throw DimensionMismatch("build_guess_state: boost oracle dimension mismatch");
        }
        if (!(factor > 0.0)) {
            throw std::invalid_argument("build_guess_state: boost factor must be positive");
        }
        for (std::size_t x = 0; x < w.size(); ++x) {
            if (oracle.is_good(x)) {
                w[x] *= factor;
            }
        }
    }
    return GuessPrep::weighted(std::move(w)); // rejects zero total weight
}

/// One group of an availability scenario.
struct GroupSpec {
    std::string label;
    std::size_t size = 0;
    double weight_factor = 1.0;
};

/// Per-group view of one scenario trial.
struct GroupOutcome {
    std::string label;
    double a = 0.0;           ///< guess-state good probability for the group's partition
    std::uint64_t t_true = 0; ///< true group size
    std::uint64_t recalled = 0;
    double speed = 0.0; ///< availability_by_speed(a)
    double a_hat = 0.0;
    double t_hat = 0.0;
};

enum class Ordering { FirstHigher, SecondHigher, Tie };

inline Ordering compare_values(double first, double second) {
    if (first > second) {
        return Ordering::FirstHigher;
    }
    if (second > first) {
        return Ordering::SecondHigher;
    }
    return Ordering::Tie;
}

enum class Agreement { Agree, Disagree, Tie };

/// Outcome of one two-group trial.
struct ScenarioResult {
    std::vector<GroupOutcome> groups;
    Ordering recall_order = Ordering::Tie;
    Ordering estimate_order = Ordering::Tie;

    /// Ties in either ordering are reported as Tie, never as agreement.
    Agreement agreement() const {
        if (recall_order == Ordering::Tie || estimate_order == Ordering::Tie) {
            return Agreement::Tie;
        }
        return recall_order == estimate_order ? Agreement::Agree : Agreement::Disagree;
    }
};

/// Sampled recalls within a time budget: each attempt consumes
/// availability_by_speed(a) units and only good outcomes count.
inline std::uint64_t recall_under_budget(const GuessPrep &prep, const Oracle &oracle,
                                         std::uint64_t budget, std::uint64_t seed) {
    const double a = good_probability(prepare(prep, oracle.dim()), oracle);
    if (a <= 0.0) {
        return 0;
    }
    const std::uint64_t attempts = availability_by_number(a, budget);
    std::uint64_t recalled = 0;
    for (std::uint64_t i = 0; i < attempts; ++i) {
        if (retrieve(prep, oracle, derive_seed(seed, i)).is_good) {
            ++recalled;
        }
    }
    return recalled;
}

namespace detail {

/// Shared trial body once the two oracles, the guess state and the two
/// outcome laws are fixed.
inline ScenarioResult run_two_group_trial(const GuessPrep &guess,
                                          const std::vector<const Oracle *> &oracles,
                                          const std::vector<std::string> &labels,
                                          const std::vector<std::vector<double>> &laws,
                                          std::uint64_t budget, std::uint64_t trial_seed) {
    ScenarioResult result;
    const std::size_t n = oracles[0]->dim();
    for (std::size_t g = 0; g < oracles.size(); ++g) {
        GroupOutcome out;
        out.label = labels[g];
        out.t_true = oracles[g]->good_count();
        out.a = good_probability(prepare(guess, n), *oracles[g]);
        out.speed = availability_by_speed(out.a);
        out.recalled =
            recall_under_budget(guess, *oracles[g], budget, derive_seed(trial_seed, 1000 + g));
        const EstimationOutcome est =
            sample_estimation(laws[g], derive_seed(trial_seed, 2000 + g));
        out.a_hat = est.a_hat;
        out.t_hat = static_cast<double>(n) * est.a_hat;
        result.groups.push_back(std::move(out));
    }
    result.recall_order = compare_values(static_cast<double>(result.groups[0].recalled),
                                         static_cast<double>(result.groups[1].recalled));
    result.estimate_order = compare_values(result.groups[0].t_hat, result.groups[1].t_hat);
    return result;
}

} // namespace detail

/// Letter-position scenario: two partitions (letter at position 1 and at
/// position 3) over one guess state that boosts position-1 words.
/// Trial i uses seed base_seed + i; the two outcome laws are computed once.
inline std::vector<ScenarioResult>
run_letter_scenario_trials(const Lexicon &lex, char letter, double boost,
                           std::size_t register_dim, std::uint64_t budget, std::uint64_t seed,
                           std::size_t trials, const SimLimits &limits = default_limits()) {
    const Oracle first = letter_position_oracle(lex, letter, 1);
    const Oracle third = letter_position_oracle(lex, letter, 3);
    if (first.good_count() == 0) {
        throw ScenarioError(std::string("empty partition: no words with '") + letter +
                            "' at position 1");
    }
    if (third.good_count() == 0) {
        throw ScenarioError(std::string("empty partition: no words with '") + letter +
                            "' at position 3");
    }
    if (!(boost > 0.0)) {
        throw ScenarioError("boost factor must be positive");
    }
    const GuessPrep guess = build_guess_state(lex, {{first, boost}});
    const std::vector<std::vector<double>> laws = {
        est_amp_distribution({register_dim, guess, first}, limits),
        est_amp_distribution({register_dim, guess, third}, limits)};
    std::vector<ScenarioResult> results;
    results.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        results.push_back(detail::run_two_group_trial(guess, {&first, &third}, {"pos1", "pos3"},
                                                      laws, budget, seed + i));
    }
    return results;
}

inline ScenarioResult run_letter_scenario(const Lexicon &lex, char letter, double boost,
                                          std::size_t register_dim, std::uint64_t budget,
                                          std::uint64_t seed,
                                          const SimLimits &limits = default_limits()) {
    return run_letter_scenario_trials(lex, letter, boost, register_dim, budget, seed, 1,
                                      limits)[0];
}

/// Famous-names scenario: two disjoint groups share one item space; guess
/// weights are proportional to each group's weight_factor.
inline std::vector<ScenarioResult>
run_names_scenario(const GroupSpec &group1, const GroupSpec &group2, std::size_t register_dim,
                   std::uint64_t budget, std::uint64_t seed, std::size_t trials,
                   const SimLimits &limits = default_limits()) {
    if (group1.size == 0 || group2.size == 0) {
        throw ScenarioError("names scenario: both group sizes must be >= 1");
    }
    if (!(group1.weight_factor > 0.0) || !(group2.weight_factor > 0.0)) {
        throw ScenarioError("names scenario: degenerate weight factors");
    }
    const std::size_t n = group1.size + group2.size;
    std::vector<std::size_t> first_items(group1.size), second_items(group2.size);
    for (std::size_t i = 0; i < group1.size; ++i) {
        first_items[i] = i;
    }
    for (std::size_t i = 0; i < group2.size; ++i) {
        second_items[i] = group1.size + i;
    }
    const Oracle first(n, first_items), second(n, second_items);
    std::vector<double> w(n);
    for (std::size_t x = 0; x < n; ++x) {
        w[x] = x < group1.size ? group1.weight_factor : group2.weight_factor;
    }
    const GuessPrep guess = GuessPrep::weighted(std::move(w));
    const std::vector<std::vector<double>> laws = {
        est_amp_distribution({register_dim, guess, first}, limits),
        est_amp_distribution({register_dim, guess, second}, limits)};
    std::vector<ScenarioResult> results;
    results.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        results.push_back(detail::run_two_group_trial(guess, {&first, &second},
                                                      {group1.label, group2.label}, laws, budget,
                                                      seed + i));
    }
    return results;
}

/// Aggregate view of a batch of trials.
struct CorrelationSummary {
    std::size_t agree = 0;
    std::size_t disagree = 0;
    std::size_t ties = 0;
    bool no_signal = false;       ///< every trial tied
    double agreement_rate = 0.0;  ///< agree / (agree + disagree), ties excluded
    double rank_correlation = 0.0; ///< Spearman between per-group sqrt(a) and t_hat
};

namespace detail {

/// Average ranks (ties get the mean of their positions).
inline std::vector<double> average_ranks(const std::vector<double> &values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

inline double pearson(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace detail

/// Sign-agreement rate (ties excluded) and the Spearman rank correlation
/// between per-group sqrt(a) and t_hat across all groups and trials.
inline CorrelationSummary correlation_summary(const std::vector<ScenarioResult> &results) {
    if (results.size() < 2) {
        throw std::invalid_argument("correlation_summary: requires at least 2 results");
    }
    CorrelationSummary summary;
    std::vector<double> ease, estimates;
    for (const ScenarioResult &r : results) {
        switch (r.agreement()) {
        case Agreement::Agree:
            ++summary.agree;
            break;
        case Agreement::Disagree:
            ++summary.disagree;
            break;
        case Agreement::Tie:
            ++summary.ties;
            break;
        }
        for (const GroupOutcome &g : r.groups) {
            ease.push_back(std::sqrt(g.a));
            estimates.push_back(g.t_hat);
        }
    }
    if (summary.agree + summary.disagree == 0) {
        summary.no_signal = true;
        return summary;
    }
    summary.agreement_rate = static_cast<double>(summary.agree) /
                             static_cast<double>(summary.agree + summary.disagree);
    summary.rank_correlation =
        detail::pearson(detail::average_ranks(ease), detail::average_ranks(estimates));
    return summary;
}

} // namespace availsim
