#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mvfph/complex.hpp"
#include "mvfph/mvf.hpp"

namespace mvfph::dynamics {

using complex::CellId;
using complex::CellSet;
using complex::StateComplex;
using mvf::MultivectorField;

/// Directed graph on the multivectors of a field (nodes are field indices).
/// V -> W for V != W iff W meets mouth(V); every node carries a self-loop,
/// which is implicit and not stored in successors().
class MGraph {
public:
    explicit MGraph(std::vector<std::vector<std::size_t>> successors);

    std::size_t size() const noexcept { return successors_.size(); }
    const std::vector<std::size_t>& successors(std::size_t v) const { return successors_[v]; }
    bool has_arc(std::size_t from, std::size_t to) const;
    std::size_t arc_count() const noexcept;  // excludes self-loops

private:
    std::vector<std::vector<std::size_t>> successors_;  // sorted, no self entries
};

struct MorseSet {
    CellSet cells;                     // union of member multivectors
    std::vector<std::size_t> members;  // field indices, ascending
    CellId label;                      // minimal cell

    friend bool operator==(const MorseSet&, const MorseSet&) = default;
};

/// Reachability order on Morse sets: above(q, p) iff a path leads from q to p.
class MorseOrder {
public:
    explicit MorseOrder(std::vector<std::vector<bool>> reach) : reach_(std::move(reach)) {}

    std::size_t size() const noexcept { return reach_.size(); }
    /// Reflexive: leq(p, p) holds. leq(p, q) means q >= p.
    bool leq(std::size_t p, std::size_t q) const { return reach_[q][p]; }
    /// Strict relations as (above, below) index pairs, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

private:
    std::vector<std::vector<bool>> reach_;  // reach_[q][p]: p reachable from q
};

/// [x]_V together with the closure of x.
CellSet pi_map(const StateComplex& complex, const MultivectorField& field, CellId x);

MGraph build_mgraph(const MultivectorField& field, const StateComplex& complex);

/// Strongly connected components, sorted by label.
std::vector<MorseSet> morse_sets(const MGraph& graph, const MultivectorField& field);

MorseOrder morse_order(const MGraph& graph, const std::vector<MorseSet>& sets);

}  // namespace mvfph::dynamics
