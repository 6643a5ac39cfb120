#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mvfph/complex.hpp"
#include "mvfph/dynamics.hpp"
#include "mvfph/mvf.hpp"

namespace mvfph::topology {

using complex::CellSet;
using complex::StateComplex;

/// Dense bit matrix over the two-element field, row-major, 64 columns per word.
class Gf2Matrix {
public:
    Gf2Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value = true);
    void flip(std::size_t r, std::size_t c);

    /// Adds row src into row dst (XOR).
    void add_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t stride_;  // words per row
    std::vector<std::uint64_t> bits_;
};

std::size_t rank_gf2(Gf2Matrix matrix);

struct HomologyDims {
    std::size_t h0 = 0;
    std::size_t h1 = 0;
    friend bool operator==(const HomologyDims&, const HomologyDims&) = default;
};

/// Decoration of a Morse set: (dim H1 of its closure, dim of the degree-1
/// relative homology of (closure, mouth)).
struct TopologicalIndex {
    std::size_t h1 = 0;
    std::size_t c1 = 0;
    auto operator<=>(const TopologicalIndex&) const = default;
};

/// Cellular homology of a closed subcomplex. Throws ValidationError if not closed.
HomologyDims homology_dims(const StateComplex& complex, const CellSet& cells);

/// (c0, c1) of H(cl A, mo A). Throws ValidationError if A is not locally closed.
HomologyDims conley_index_dims(const StateComplex& complex, const CellSet& cells);

TopologicalIndex topological_index(const StateComplex& complex, const dynamics::MorseSet& set);
TopologicalIndex topological_index(const StateComplex& complex, const CellSet& cells);

bool is_critical(const StateComplex& complex, const mvf::Multivector& multivector);

/// Called with every closed set passed to homology_dims on the current thread
/// while installed. Used by audits that cross-check the rank computation.
using HomologyObserver = std::function<void(const StateComplex&, const CellSet&, const HomologyDims&)>;

class ScopedHomologyObserver {
public:
    explicit ScopedHomologyObserver(HomologyObserver observer);
    ~ScopedHomologyObserver();
    ScopedHomologyObserver(const ScopedHomologyObserver&) = delete;
    ScopedHomologyObserver& operator=(const ScopedHomologyObserver&) = delete;

private:
    HomologyObserver previous_;
};

}  // namespace mvfph::topology
