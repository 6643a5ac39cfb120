#include "mvfph/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "matching.hpp"
#include "mvfph/error.hpp"

namespace mvfph::persistence {

namespace {

struct Track {
    double birth;
    CellId representative;
    TopologicalIndex index;
    std::size_t set;  // Morse set index at the current stage
};

bool older(const Track& a, const Track& b) {
    return std::tie(a.birth, a.representative) < std::tie(b.birth, b.representative);
}

double linf(const PersistencePoint& p, const PersistencePoint& q) {
    if (p.essential() != q.essential()) return kInfinity;
    if (p.essential()) return std::abs(p.birth - q.birth);
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

double to_diagonal(const PersistencePoint& p) { return p.essential() ? kInfinity : (p.death - p.birth) / 2; }

// Bottleneck restricted to one index class. `a` and `b` index the full point lists.
struct ClassProblem {
    const std::vector<PersistencePoint>& left;
    const std::vector<PersistencePoint>& right;
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;

    // Left nodes: a points, then diagonal slots for b. Right nodes: b points,
    // then diagonal slots for a.
    std::vector<std::vector<std::size_t>> graph(double radius) const {
        const auto na = a.size(), nb = b.size();
        std::vector<std::vector<std::size_t>> adj(na + nb);
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = 0; j < nb; ++j)
                if (linf(left[a[i]], right[b[j]]) <= radius) adj[i].push_back(j);
            if (to_diagonal(left[a[i]]) <= radius) adj[i].push_back(nb + i);
        }
        for (std::size_t j = 0; j < nb; ++j) {
            if (to_diagonal(right[b[j]]) <= radius) adj[na + j].push_back(j);
            for (std::size_t i = 0; i < na; ++i) adj[na + j].push_back(nb + i);
        }
        return adj;
    }

    bool feasible(double radius, std::vector<std::size_t>* assignment = nullptr) const {
        const auto adj = graph(radius);
        detail::HopcroftKarp hk(adj.size(), adj.size(), adj);
        const bool ok = hk.run() == adj.size();
        if (ok && assignment) *assignment = hk.match_left();
        return ok;
    }

    std::vector<double> candidates() const {
        std::vector<double> c{0.0};
        for (auto i : a) {
            for (auto j : b)
                if (auto d = linf(left[i], right[j]); std::isfinite(d)) c.push_back(d);
            if (auto d = to_diagonal(left[i]); std::isfinite(d)) c.push_back(d);
        }
        for (auto j : b)
            if (auto d = to_diagonal(right[j]); std::isfinite(d)) c.push_back(d);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }
};

// Solves the class and appends its matching. Assumes equal essential counts.
double solve_class(const ClassProblem& problem, std::vector<MatchedPair>& out) {
    const auto cands = problem.candidates();
    std::size_t lo = 0, hi = cands.size() - 1;
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (problem.feasible(cands[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    std::vector<std::size_t> assignment;
    if (!problem.feasible(cands[lo], &assignment))
        throw InvariantError("bottleneck matching infeasible at the largest candidate");

    const auto na = problem.a.size(), nb = problem.b.size();
    for (std::size_t i = 0; i < na; ++i) {
        const auto& p = problem.left[problem.a[i]];
        if (assignment[i] < nb) {
            const auto& q = problem.right[problem.b[assignment[i]]];
            out.push_back({problem.a[i], problem.b[assignment[i]], linf(p, q)});
        } else {
            out.push_back({problem.a[i], std::nullopt, to_diagonal(p)});
        }
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (assignment[na + j] == j) {
            const auto& q = problem.right[problem.b[j]];
            out.push_back({std::nullopt, problem.b[j], to_diagonal(q)});
        }
    }
    return cands[lo];
}

}  // namespace

Stage compute_stage(const complex::StateComplex& complex, const markov::TransitionMatrix& matrix, double gamma) {
    auto field = mvf::build_mvf(complex, matrix, gamma);
    auto graph = dynamics::build_mgraph(field, complex);
    auto sets = dynamics::morse_sets(graph, field);
    std::vector<TopologicalIndex> indices;
    indices.reserve(sets.size());
    for (const auto& s : sets) indices.push_back(topology::topological_index(complex, s));
    return {gamma, std::move(field), std::move(graph), std::move(sets), std::move(indices)};
}

FiltrationResult run_filtration(const markov::TransitionMatrix& matrix) {
    FiltrationResult result{complex::build_complex(matrix), markov::threshold_grid(matrix), {}};
    result.stages.reserve(result.grid.size());
    for (double gamma : result.grid.values) result.stages.push_back(compute_stage(result.complex, matrix, gamma));
    return result;
}

std::vector<std::size_t> containment_map(const Stage& prev, const Stage& next) {
    if (prev.field.cell_count() != next.field.cell_count())
        throw ValidationError("stages cover different complexes");
    std::vector<std::size_t> set_of_cell(next.field.cell_count(), 0);
    for (std::size_t s = 0; s < next.sets.size(); ++s)
        for (auto id : next.sets[s].cells) set_of_cell[id.value] = s;

    std::vector<std::size_t> map;
    map.reserve(prev.sets.size());
    for (const auto& m : prev.sets) {
        const auto target = set_of_cell[m.cells.front().value];
        if (!complex::is_subset(m.cells, next.sets[target].cells))
            throw InvariantError("Morse set split between thresholds " + std::to_string(prev.gamma) + " and " +
                                 std::to_string(next.gamma));
        map.push_back(target);
    }
    return map;
}

void sort_canonical(std::vector<PersistencePoint>& points) {
    std::sort(points.begin(), points.end(), [](const PersistencePoint& p, const PersistencePoint& q) {
        return std::tie(p.index, p.birth, p.death, p.representative) <
               std::tie(q.index, q.birth, q.death, q.representative);
    });
}

PersistenceDiagram build_diagram(const FiltrationResult& filtration) {
    PersistenceDiagram diagram{filtration.grid, {}};
    if (filtration.stages.empty()) return diagram;

    const auto& base = filtration.stages.front();
    std::vector<Track> live;
    for (std::size_t s = 0; s < base.sets.size(); ++s)
        live.push_back({0.0, base.sets[s].label, base.indices[s], s});

    for (std::size_t k = 1; k < filtration.stages.size(); ++k) {
        const auto& prev = filtration.stages[k - 1];
        const auto& stage = filtration.stages[k];
        const auto map = containment_map(prev, stage);

        std::vector<std::vector<Track>> by_target(stage.sets.size());
        for (auto& t : live) by_target[map[t.set]].push_back(t);

        std::vector<Track> next_live;
        for (std::size_t s = 0; s < stage.sets.size(); ++s) {
            const auto& target_index = stage.indices[s];
            const Track* survivor = nullptr;
            for (const auto& t : by_target[s])
                if (t.index == target_index && (!survivor || older(t, *survivor))) survivor = &t;
            for (const auto& t : by_target[s])
                if (&t != survivor) diagram.points.push_back({t.birth, stage.gamma, t.index, t.representative});
            if (survivor) {
                next_live.push_back(*survivor);
                next_live.back().set = s;
            } else {
                next_live.push_back({stage.gamma, stage.sets[s].label, target_index, s});
            }
        }
        live = std::move(next_live);
    }
    for (const auto& t : live) diagram.points.push_back({t.birth, kInfinity, t.index, t.representative});
    sort_canonical(diagram.points);
    return diagram;
}

BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    std::map<TopologicalIndex, ClassProblem> classes;
    const auto problem = [&](TopologicalIndex k) -> ClassProblem& {
        return classes.try_emplace(k, ClassProblem{a.points, b.points, {}, {}}).first->second;
    };
    for (std::size_t i = 0; i < a.points.size(); ++i) problem(a.points[i].index).a.push_back(i);
    for (std::size_t j = 0; j < b.points.size(); ++j) problem(b.points[j].index).b.push_back(j);

    BottleneckResult result;
    for (auto& [index, cls] : classes) {
        const auto essentials = [](const std::vector<PersistencePoint>& pts, const std::vector<std::size_t>& ids) {
            return std::count_if(ids.begin(), ids.end(), [&](std::size_t i) { return pts[i].essential(); });
        };
        if (essentials(a.points, cls.a) != essentials(b.points, cls.b)) {
            // report the unmatched class as a whole: no index-preserving matching exists
            result.distance = kInfinity;
            for (auto i : cls.a) result.matching.push_back({i, std::nullopt, to_diagonal(a.points[i])});
            for (auto j : cls.b) result.matching.push_back({std::nullopt, j, to_diagonal(b.points[j])});
            continue;
        }
        result.distance = std::max(result.distance, solve_class(cls, result.matching));
    }
    return result;
}

}  // namespace mvfph::persistence
