#pragma once

#include <cstddef>
#include <vector>

#include "mvfph/complex.hpp"
#include "mvfph/markov.hpp"

namespace mvfph::mvf {

using complex::CellId;
using complex::CellSet;
using complex::StateComplex;

struct Multivector {
    CellSet cells;
    CellId id;  // minimal cell in canonical order

    friend bool operator==(const Multivector&, const Multivector&) = default;
};

/// A family of multivectors over one complex at threshold gamma.
///
/// Fields returned by build_mvf() are partitions sorted by id. A field can also
/// be assembled from arbitrary parts (from_parts) so that is_valid_mvf() has
/// something to reject; owner() is only meaningful for valid fields.
class MultivectorField {
public:
    static MultivectorField from_parts(double gamma, std::size_t cell_count, std::vector<CellSet> parts);

    double gamma() const noexcept { return gamma_; }
    std::size_t cell_count() const noexcept { return owner_.size(); }
    std::size_t size() const noexcept { return multivectors_.size(); }
    const std::vector<Multivector>& multivectors() const noexcept { return multivectors_; }
    const Multivector& operator[](std::size_t k) const { return multivectors_[k]; }

    /// Index of the multivector holding the cell ([x]_V).
    std::size_t owner(CellId id) const { return owner_.at(id.value); }

    friend bool operator==(const MultivectorField&, const MultivectorField&) = default;

private:
    double gamma_ = 0.0;
    std::vector<Multivector> multivectors_;
    std::vector<std::size_t> owner_;
};

/// Vertex/edge merging at threshold gamma followed by overlap merging.
MultivectorField build_mvf(const StateComplex& complex, const markov::TransitionMatrix& matrix, double gamma);

/// Partition of all cells of the complex into non-empty locally closed parts.
bool is_valid_mvf(const MultivectorField& field, const StateComplex& complex);

/// True iff every multivector of coarse is a union of multivectors of fine.
/// Throws ValidationError when the fields cover different complexes.
bool is_coarsening(const MultivectorField& coarse, const MultivectorField& fine);

}  // namespace mvfph::mvf
