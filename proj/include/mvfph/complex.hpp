#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mvfph/markov.hpp"

namespace mvfph::complex {

/// Position of a cell in canonical order: vertices 0..n-1, then edges
/// lexicographically. Comparing ids compares canonical order.
struct CellId {
    std::uint32_t value = 0;
    auto operator<=>(const CellId&) const = default;
};

/// A vertex has j == i. Indices are 0-based state indices; edges have i < j.
struct Cell {
    enum class Kind : std::uint8_t { vertex, edge };
    Kind kind = Kind::vertex;
    std::uint32_t i = 0;
    std::uint32_t j = 0;

    bool is_vertex() const noexcept { return kind == Kind::vertex; }
    bool is_edge() const noexcept { return kind == Kind::edge; }
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Sorted, duplicate-free set of cell ids; iteration is canonical order.
class CellSet {
public:
    CellSet() = default;
    CellSet(std::initializer_list<CellId> ids);
    explicit CellSet(std::vector<CellId> ids);  // sorts and deduplicates

    bool contains(CellId id) const noexcept;
    bool empty() const noexcept { return ids_.empty(); }
    std::size_t size() const noexcept { return ids_.size(); }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    CellId front() const { return ids_.front(); }
    const std::vector<CellId>& ids() const noexcept { return ids_; }

    friend CellSet set_union(const CellSet& a, const CellSet& b);
    friend CellSet set_difference(const CellSet& a, const CellSet& b);
    friend CellSet set_intersection(const CellSet& a, const CellSet& b);
    friend bool is_subset(const CellSet& a, const CellSet& b);
    friend bool intersects(const CellSet& a, const CellSet& b);
    friend bool operator==(const CellSet&, const CellSet&) = default;

private:
    std::vector<CellId> ids_;
};

CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
bool is_subset(const CellSet& a, const CellSet& b);
bool intersects(const CellSet& a, const CellSet& b);

/// The 1-dimensional finite space of a chain: one vertex per state, one edge
/// per unordered pair {i,j} with p_ij > 0 or p_ji > 0.
class StateComplex {
public:
    StateComplex(std::size_t vertex_count, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                 std::vector<std::string> labels = {});

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t cell_count() const noexcept { return n_ + edges_.size(); }

    Cell cell(CellId id) const;
    CellId vertex(std::size_t i) const;
    /// Edge between states i and j (either order). Throws ValidationError when absent.
    CellId edge(std::size_t i, std::size_t j) const;
    bool has_edge(std::size_t i, std::size_t j) const noexcept;
    /// Edges incident to state i, in canonical order.
    const std::vector<CellId>& incident_edges(std::size_t i) const { return incident_[i]; }

    CellSet all_cells() const;

    /// "N1" for a vertex, "N1-N2" for an edge, using the state labels.
    std::string name(CellId id) const;
    std::vector<std::string> names(const CellSet& cells) const;
    /// Inverse of name(). Throws ValidationError for unknown names.
    CellId parse_name(const std::string& name) const;

    const std::vector<std::string>& labels() const noexcept { return labels_; }

    friend bool operator==(const StateComplex& a, const StateComplex& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;  // sorted, i < j
    std::vector<std::vector<CellId>> incident_;
    std::vector<std::string> labels_;
};

StateComplex build_complex(const markov::TransitionMatrix& matrix);

/// The set plus both endpoints of each of its edges.
CellSet closure(const StateComplex& complex, const CellSet& cells);
/// closure \ set.
CellSet mouth(const StateComplex& complex, const CellSet& cells);
bool is_closed(const StateComplex& complex, const CellSet& cells);
/// True iff the mouth is closed, i.e. contains no edge.
bool is_locally_closed(const StateComplex& complex, const CellSet& cells);

}  // namespace mvfph::complex
