#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvfph/markov.hpp"

namespace mvfph::harness {

struct RandomChainSpec {
    std::size_t n = 3;
    double density = 1.0;  // probability that an off-diagonal entry gets positive mass
    std::uint64_t seed = 0;
};

/// Deterministic in the seed. Off-diagonal entries are drawn with the given
/// density, the diagonal always gets mass, and rows are normalized.
markov::TransitionMatrix random_chain(const RandomChainSpec& spec);

/// Parses "n=5,density=0.5[,seed=7]". Unset keys keep their defaults.
RandomChainSpec parse_chain_spec(const std::string& text);

enum class StabilityMode { single, multi };

struct StabilityOptions {
    StabilityMode mode = StabilityMode::single;
    std::size_t entries = 1;     // l, the number of perturbed off-diagonal entries (multi mode)
    double delta_max = 0.05;     // single: |delta| in (0, delta_max]; multi: each |delta_k| < delta_max
    bool allow_negative = true;  // sample the sign of each delta
    bool avoid_ties = true;      // reject perturbed values equal to another off-diagonal entry
};

/// Slack on the single-entry bound for the last-bit error of p + delta - p.
inline constexpr double kStabilityTolerance = 1e-12;

struct TrialRecord {
    std::uint64_t seed = 0;
    std::vector<markov::PerturbationSpec> perturbations;
    double delta = 0.0;        // single: realized |p'_ij - p_ij|; multi: delta_max
    std::size_t l = 0;         // differing off-diagonal entries
    std::size_t l_all = 0;     // differing entries including compensated diagonals
    double bound = 0.0;        // delta (single) or l * delta (multi)
    double distance = 0.0;     // bottleneck distance between the two diagrams
    bool violation = false;
    std::optional<markov::TransitionMatrix> original;   // kept for violations only
    std::optional<markov::TransitionMatrix> perturbed;
};

struct StabilityReport {
    StabilityMode mode = StabilityMode::single;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;  // max distance / bound
    std::vector<TrialRecord> records;
};

/// Evaluates one perturbation of one matrix. In single mode the bound is
/// d_B <= realized shift (+ kStabilityTolerance); in multi mode d_B < l * delta_max.
TrialRecord stability_check(const markov::TransitionMatrix& matrix,
                            const std::vector<markov::PerturbationSpec>& perturbations,
                            const StabilityOptions& options);

/// Trials on fresh random chains, one per trial seed.
StabilityReport stability_trials(const RandomChainSpec& spec, std::size_t trials, const StabilityOptions& options);

/// Trials on a fixed matrix with randomly sampled perturbations.
StabilityReport stability_trials(const markov::TransitionMatrix& matrix, std::size_t trials,
                                 const StabilityOptions& options, std::uint64_t seed);

struct PropertyReport {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;  // one per failure
};

/// Per chain: field validity at every threshold, the coarsening chain,
/// containment totality, and rank homology against the graph formula.
PropertyReport property_trials(const RandomChainSpec& spec, std::size_t trials);

/// Checks one matrix and accumulates into report.
void check_properties(const markov::TransitionMatrix& matrix, PropertyReport& report);

/// Seed of the t-th trial derived from a base seed.
std::uint64_t trial_seed(std::uint64_t base, std::size_t trial);

}  // namespace mvfph::harness
