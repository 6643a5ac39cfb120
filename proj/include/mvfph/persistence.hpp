#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "mvfph/complex.hpp"
#include "mvfph/dynamics.hpp"
#include "mvfph/markov.hpp"
#include "mvfph/mvf.hpp"
#include "mvfph/topology.hpp"

namespace mvfph::persistence {

using complex::CellId;
using topology::TopologicalIndex;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Everything computed at one threshold.
struct Stage {
    double gamma = 0.0;
    mvf::MultivectorField field;
    dynamics::MGraph graph;
    std::vector<dynamics::MorseSet> sets;       // sorted by label
    std::vector<TopologicalIndex> indices;      // parallel to sets
};

struct FiltrationResult {
    complex::StateComplex complex;
    markov::ThresholdGrid grid;
    std::vector<Stage> stages;  // one per grid value, ascending gamma
};

/// Field, M-graph, Morse sets and indices at a single threshold.
Stage compute_stage(const complex::StateComplex& complex, const markov::TransitionMatrix& matrix, double gamma);

/// Builds field, M-graph, Morse sets and indices for every grid value.
FiltrationResult run_filtration(const markov::TransitionMatrix& matrix);

/// For each Morse set of prev, the index of the Morse set of next containing it.
/// Throws InvariantError if some set is not contained in a single successor set.
std::vector<std::size_t> containment_map(const Stage& prev, const Stage& next);

struct PersistencePoint {
    double birth = 0.0;
    double death = kInfinity;
    TopologicalIndex index;
    CellId representative;  // label of the Morse set at birth

    bool essential() const noexcept { return death == kInfinity; }
    double persistence() const noexcept { return death - birth; }
};

/// Points are kept in canonical order: index, then birth, then death, then representative.
struct PersistenceDiagram {
    markov::ThresholdGrid grid;
    std::vector<PersistencePoint> points;
};

void sort_canonical(std::vector<PersistencePoint>& points);

/// Tracks Morse sets through the filtration. A track dies when the set it
/// follows changes index, or when it merges into a set kept by an older track
/// (older = smaller birth, then smaller representative).
PersistenceDiagram build_diagram(const FiltrationResult& filtration);

inline PersistenceDiagram diagram_of(const markov::TransitionMatrix& matrix) {
    return build_diagram(run_filtration(matrix));
}

/// One matched pair. A missing side means the point is absorbed by the diagonal.
struct MatchedPair {
    std::optional<std::size_t> left;   // index into the first diagram's points
    std::optional<std::size_t> right;  // index into the second diagram's points
    double cost = 0.0;
};

struct BottleneckResult {
    double distance = 0.0;
    std::vector<MatchedPair> matching;
};

/// Exact index-preserving bottleneck distance with an optimal matching.
/// Points match only within the same index class; essential points match only
/// essential points. Distance is +inf when essential counts differ in a class.
BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

inline double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    return bottleneck(a, b).distance;
}

}  // namespace mvfph::persistence
