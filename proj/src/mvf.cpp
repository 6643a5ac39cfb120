#include "mvfph/mvf.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mvfph/error.hpp"

namespace mvfph::mvf {

namespace {

constexpr auto kNoOwner = std::numeric_limits<std::size_t>::max();

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // The smaller root wins so representatives are canonical minima.
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

MultivectorField MultivectorField::from_parts(double gamma, std::size_t cell_count, std::vector<CellSet> parts) {
    MultivectorField field;
    field.gamma_ = gamma;
    field.owner_.assign(cell_count, kNoOwner);
    std::sort(parts.begin(), parts.end(), [](const CellSet& a, const CellSet& b) {
        if (a.empty() || b.empty()) return a.empty() && !b.empty();
        return a.front() < b.front();
    });
    for (auto& part : parts) {
        const auto k = field.multivectors_.size();
        for (auto id : part)
            if (id.value < cell_count && field.owner_[id.value] == kNoOwner) field.owner_[id.value] = k;
        const CellId id = part.empty() ? CellId{} : part.front();
        field.multivectors_.push_back({std::move(part), id});
    }
    return field;
}

MultivectorField build_mvf(const StateComplex& complex, const markov::TransitionMatrix& matrix, double gamma) {
    if (!(gamma >= 0.0)) throw ValidationError("gamma must be non-negative");
    if (matrix.size() != complex.vertex_count()) throw ValidationError("matrix does not match complex");

    // every cell starts as its own singleton
    DisjointSets sets(complex.cell_count());
    for (std::uint32_t k = 0; k < complex.edge_count(); ++k) {
        const CellId edge{static_cast<std::uint32_t>(complex.vertex_count() + k)};
        const auto c = complex.cell(edge);
        if (matrix(c.i, c.j) <= gamma) sets.unite(c.i, edge.value);
        if (matrix(c.j, c.i) <= gamma) sets.unite(c.j, edge.value);
    }

    std::vector<std::vector<CellId>> groups(complex.cell_count());
    for (std::uint32_t x = 0; x < complex.cell_count(); ++x) groups[sets.find(x)].push_back({x});
    std::vector<CellSet> parts;
    for (auto& g : groups)
        if (!g.empty()) parts.emplace_back(std::move(g));
    return MultivectorField::from_parts(gamma, complex.cell_count(), std::move(parts));
}

bool is_valid_mvf(const MultivectorField& field, const StateComplex& complex) {
    if (field.cell_count() != complex.cell_count()) return false;
    std::vector<int> seen(complex.cell_count(), 0);
    for (const auto& mv : field.multivectors()) {
        if (mv.cells.empty()) return false;
        for (auto id : mv.cells) {
            if (id.value >= seen.size() || seen[id.value]++ != 0) return false;
        }
        if (!complex::is_locally_closed(complex, mv.cells)) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

bool is_coarsening(const MultivectorField& coarse, const MultivectorField& fine) {
    if (coarse.cell_count() != fine.cell_count())
        throw ValidationError("fields are defined over different complexes");
    // each fine multivector must sit inside a single coarse one
    for (const auto& mv : fine.multivectors()) {
        if (mv.cells.empty()) continue;
        const auto target = coarse.owner(mv.cells.front());
        if (target == kNoOwner) return false;
        for (auto id : mv.cells)
            if (coarse.owner(id) != target || !coarse[target].cells.contains(id)) return false;
    }
    return true;
}

}  // namespace mvfph::mvf
