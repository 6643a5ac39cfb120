#include "mvfph/topology.hpp"

#include <unordered_map>
#include <utility>

#include "mvfph/error.hpp"

namespace mvfph::topology {

namespace {

thread_local HomologyObserver tl_observer;

// Boundary of the edges of `cells` restricted to the vertices of `cells`:
// one row per edge, one column per vertex.
Gf2Matrix restricted_boundary(const StateComplex& complex, const CellSet& cells, std::size_t& vertices,
                              std::size_t& edges) {
    std::unordered_map<std::uint32_t, std::size_t> column;
    std::vector<complex::Cell> edge_cells;
    for (auto id : cells) {
        const auto c = complex.cell(id);
        if (c.is_vertex())
            column.emplace(c.i, column.size());
        else
            edge_cells.push_back(c);
    }
    vertices = column.size();
    edges = edge_cells.size();
    Gf2Matrix boundary(edges, vertices);
    for (std::size_t r = 0; r < edge_cells.size(); ++r) {
        for (auto endpoint : {edge_cells[r].i, edge_cells[r].j}) {
            if (auto it = column.find(endpoint); it != column.end()) boundary.flip(r, it->second);
        }
    }
    return boundary;
}

}  // namespace

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
    return (bits_[r * stride_ + c / 64] >> (c % 64)) & 1u;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
    auto& word = bits_[r * stride_ + c / 64];
    const auto mask = std::uint64_t{1} << (c % 64);
    word = value ? (word | mask) : (word & ~mask);
}

void Gf2Matrix::flip(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

void Gf2Matrix::add_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < stride_; ++w) bits_[dst * stride_ + w] ^= bits_[src * stride_ + w];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < stride_; ++w) std::swap(bits_[a * stride_ + w], bits_[b * stride_ + w]);
}

std::size_t rank_gf2(Gf2Matrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t r = rank + 1; r < m.rows(); ++r)
            if (m.get(r, c)) m.add_row(r, rank);
        ++rank;
    }
    return rank;
}

HomologyDims homology_dims(const StateComplex& complex, const CellSet& cells) {
    if (!complex::is_closed(complex, cells)) throw ValidationError("homology_dims requires a closed set");
    std::size_t vertices = 0, edges = 0;
    const auto rank = rank_gf2(restricted_boundary(complex, cells, vertices, edges));
    const HomologyDims dims{vertices - rank, edges - rank};
    if (tl_observer) tl_observer(complex, cells, dims);
    return dims;
}

HomologyDims conley_index_dims(const StateComplex& complex, const CellSet& cells) {
    if (!complex::is_locally_closed(complex, cells))
        throw ValidationError("conley_index_dims requires a locally closed set");
    // relative chains of (cl A, mo A) are spanned by A itself; endpoints in the
    // mouth vanish from the boundary
    std::size_t vertices = 0, edges = 0;
    const auto rank = rank_gf2(restricted_boundary(complex, cells, vertices, edges));
    return {vertices - rank, edges - rank};
}

TopologicalIndex topological_index(const StateComplex& complex, const CellSet& cells) {
    if (!complex::is_locally_closed(complex, cells))
        throw InvariantError("Morse set is not locally closed");
    return {homology_dims(complex, complex::closure(complex, cells)).h1, conley_index_dims(complex, cells).h1};
}

TopologicalIndex topological_index(const StateComplex& complex, const dynamics::MorseSet& set) {
    return topological_index(complex, set.cells);
}

bool is_critical(const StateComplex& complex, const mvf::Multivector& multivector) {
    const auto dims = conley_index_dims(complex, multivector.cells);
    return dims.h0 + dims.h1 > 0;
}

ScopedHomologyObserver::ScopedHomologyObserver(HomologyObserver observer)
    : previous_(std::exchange(tl_observer, std::move(observer))) {}

ScopedHomologyObserver::~ScopedHomologyObserver() { tl_observer = std::move(previous_); }

}  // namespace mvfph::topology
