#include "mvfph/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "mvfph/complex.hpp"
#include "mvfph/error.hpp"
#include "mvfph/mvf.hpp"
#include "mvfph/persistence.hpp"
#include "mvfph/topology.hpp"

namespace mvfph::harness {

namespace {

constexpr std::size_t kMaxAttempts = 256;

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Connected components of a closed cell set by union-find on its vertices.
std::size_t components(const complex::StateComplex& cx, const complex::CellSet& cells) {
    std::vector<std::size_t> parent(cx.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = 0;
    for (auto id : cells)
        if (cx.cell(id).is_vertex()) ++count;
    for (auto id : cells) {
        const auto c = cx.cell(id);
        if (!c.is_edge()) continue;
        const auto a = find(c.i), b = find(c.j);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

bool collides(const markov::TransitionMatrix& m, std::size_t row, std::size_t col) {
    const double v = m(row, col);
    if (v == 0.0) return false;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (i != j && (i != row || j != col) && m(i, j) == v) return true;
    return false;
}

std::vector<std::pair<std::size_t, std::size_t>> edge_entries(const markov::TransitionMatrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (i != j && (m(i, j) > 0.0 || m(j, i) > 0.0)) out.emplace_back(i, j);
    return out;
}

markov::TransitionMatrix apply_all(const markov::TransitionMatrix& m,
                                   const std::vector<markov::PerturbationSpec>& perturbations) {
    auto out = m;
    for (const auto& p : perturbations) out = markov::perturb(out, p);
    return out;
}

// Samples perturbations that keep the matrix valid, keep the edge set, and
// (optionally) avoid exact ties with other off-diagonal values.
std::optional<std::vector<markov::PerturbationSpec>> sample_perturbations(const markov::TransitionMatrix& m,
                                                                         const StabilityOptions& options,
                                                                         std::mt19937_64& rng) {
    auto entries = edge_entries(m);
    const auto l = options.mode == StabilityMode::single ? std::size_t{1} : options.entries;
    if (entries.size() < l) return std::nullopt;
    const auto edges_before = complex::build_complex(m);

    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::shuffle(entries.begin(), entries.end(), rng);
        std::vector<markov::PerturbationSpec> specs;
        for (std::size_t k = 0; k < l; ++k) {
            double magnitude = 0.0;
            if (options.mode == StabilityMode::single) {
                magnitude = options.delta_max * (1.0 - unit(rng));  // (0, delta_max]
            } else {
                do magnitude = options.delta_max * unit(rng);        // [0, delta_max)
                while (magnitude == 0.0);
            }
            const double sign = options.allow_negative && (rng() & 1u) ? -1.0 : 1.0;
            specs.push_back({entries[k].first, entries[k].second, sign * magnitude, true});
        }
        try {
            const auto perturbed = apply_all(m, specs);
            if (!(complex::build_complex(perturbed) == edges_before)) continue;
            if (options.avoid_ties &&
                std::any_of(specs.begin(), specs.end(),
                            [&](const auto& s) { return collides(perturbed, s.row, s.col); }))
                continue;
            return specs;
        } catch (const ValidationError&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) {
    // splitmix64 finalizer
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

markov::TransitionMatrix random_chain(const RandomChainSpec& spec) {
    if (spec.n == 0) throw ValidationError("random chain needs at least one state");
    if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw ValidationError("density must lie in [0,1]");
    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<double>> rows(spec.n, std::vector<double>(spec.n, 0.0));
    for (std::size_t i = 0; i < spec.n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < spec.n; ++j) {
            if (i == j || unit(rng) < spec.density) rows[i][j] = 1.0 - unit(rng);
            sum += rows[i][j];
        }
        for (auto& p : rows[i]) p /= sum;
    }
    return markov::TransitionMatrix({}, std::move(rows));
}

RandomChainSpec parse_chain_spec(const std::string& text) {
    RandomChainSpec spec;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("expected key=value in chain spec, got '" + item + "'");
        const auto key = item.substr(0, eq);
        const auto value = item.substr(eq + 1);
        try {
            if (key == "n")
                spec.n = std::stoul(value);
            else if (key == "density")
                spec.density = std::stod(value);
            else if (key == "seed")
                spec.seed = std::stoull(value);
            else
                throw ValidationError("unknown chain spec key '" + key + "'");
        } catch (const std::logic_error&) {
            throw ValidationError("bad value for '" + key + "' in chain spec");
        }
    }
    return spec;
}

TrialRecord stability_check(const markov::TransitionMatrix& matrix,
                            const std::vector<markov::PerturbationSpec>& perturbations,
                            const StabilityOptions& options) {
    const auto perturbed = apply_all(matrix, perturbations);
    const auto dist = markov::matrix_distance(matrix, perturbed);
    const auto d_b = persistence::bottleneck_distance(persistence::diagram_of(matrix),
                                                      persistence::diagram_of(perturbed));
    TrialRecord rec;
    rec.perturbations = perturbations;
    rec.l = dist.l_offdiag;
    rec.l_all = dist.l_all;
    rec.distance = d_b;
    if (options.mode == StabilityMode::single) {
        rec.delta = dist.offdiag_inf;
        rec.bound = rec.delta;
        rec.violation = d_b > rec.bound + kStabilityTolerance;
    } else {
        rec.delta = options.delta_max;
        rec.bound = static_cast<double>(rec.l) * rec.delta;
        rec.violation = !(d_b < rec.bound);
    }
    if (rec.violation) {
        rec.original = matrix;
        rec.perturbed = perturbed;
    }
    return rec;
}

namespace {

void accumulate(StabilityReport& report, TrialRecord rec) {
    ++report.trials;
    if (rec.violation) ++report.violations;
    if (rec.bound > 0.0) report.worst_ratio = std::max(report.worst_ratio, rec.distance / rec.bound);
    report.records.push_back(std::move(rec));
}

}  // namespace

StabilityReport stability_trials(const RandomChainSpec& spec, std::size_t trials, const StabilityOptions& options) {
    if (trials == 0) throw ValidationError("at least one trial is required");
    StabilityReport report;
    report.mode = options.mode;
    std::size_t salt = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        // some random chains admit no admissible perturbation; draw another
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt == kMaxAttempts)
                throw ValidationError("could not sample an admissible perturbation for this chain spec");
            const auto seed = trial_seed(spec.seed, salt++);
            const auto matrix = random_chain({spec.n, spec.density, seed});
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const auto specs = sample_perturbations(matrix, options, rng);
            if (!specs) continue;
            auto rec = stability_check(matrix, *specs, options);
            rec.seed = seed;
            accumulate(report, std::move(rec));
            break;
        }
    }
    return report;
}

StabilityReport stability_trials(const markov::TransitionMatrix& matrix, std::size_t trials,
                                 const StabilityOptions& options, std::uint64_t seed) {
    if (trials == 0) throw ValidationError("at least one trial is required");
    StabilityReport report;
    report.mode = options.mode;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto s = trial_seed(seed, t);
        std::mt19937_64 rng(s);
        const auto specs = sample_perturbations(matrix, options, rng);
        if (!specs) throw ValidationError("matrix admits no perturbation with these options");
        auto rec = stability_check(matrix, *specs, options);
        rec.seed = s;
        accumulate(report, std::move(rec));
    }
    return report;
}

void check_properties(const markov::TransitionMatrix& matrix, PropertyReport& report) {
    const auto fail = [&](const std::string& what) {
        ++report.failures;
        report.messages.push_back(what);
    };
    const auto check = [&](bool ok, const std::string& what) {
        ++report.checks;
        if (!ok) fail(what);
    };

    std::optional<persistence::FiltrationResult> result;
    try {
        result = persistence::run_filtration(matrix);
    } catch (const Error& e) {
        ++report.checks;
        fail(std::string("filtration failed: ") + e.what());
        return;
    }
    const auto& cx = result->complex;
    const auto& stages = result->stages;
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const auto at = " at gamma=" + std::to_string(stages[k].gamma);
        check(mvf::is_valid_mvf(stages[k].field, cx), "invalid multivector field" + at);
        for (const auto& mv : stages[k].field.multivectors())
            check(complex::is_locally_closed(cx, mv.cells), "multivector not locally closed" + at);
        for (std::size_t j = 0; j < k; ++j)
            check(mvf::is_coarsening(stages[k].field, stages[j].field), "coarsening chain broken" + at);
        if (k > 0) {
            try {
                const auto map = persistence::containment_map(stages[k - 1], stages[k]);
                check(map.size() == stages[k - 1].sets.size(), "containment map not total" + at);
            } catch (const InvariantError& e) {
                ++report.checks;
                fail(e.what());
            }
        }
        for (const auto& set : stages[k].sets) {
            const auto closed = complex::closure(cx, set.cells);
            const auto dims = topology::homology_dims(cx, closed);
            const auto comps = components(cx, closed);
            std::size_t vertices = 0;
            for (auto id : closed) vertices += cx.cell(id).is_vertex();
            const auto edges = closed.size() - vertices;
            check(dims.h0 == comps && dims.h1 + vertices == edges + comps,
                  "rank homology disagrees with graph formula" + at);
        }
    }
}

PropertyReport property_trials(const RandomChainSpec& spec, std::size_t trials) {
    if (trials == 0) throw ValidationError("at least one trial is required");
    PropertyReport report;
    for (std::size_t t = 0; t < trials; ++t) {
        check_properties(random_chain({spec.n, spec.density, trial_seed(spec.seed, t)}), report);
        ++report.trials;
    }
    return report;
}

}  // namespace mvfph::harness
