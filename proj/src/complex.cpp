#include "mvfph/complex.hpp"

#include <algorithm>
#include <iterator>

#include "mvfph/error.hpp"

namespace mvfph::complex {

CellSet::CellSet(std::initializer_list<CellId> ids) : CellSet(std::vector<CellId>(ids)) {}

CellSet::CellSet(std::vector<CellId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool CellSet::contains(CellId id) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

CellSet set_union(const CellSet& a, const CellSet& b) {
    CellSet out;
    out.ids_.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.ids_));
    return out;
}

CellSet set_difference(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.ids_));
    return out;
}

CellSet set_intersection(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.ids_));
    return out;
}

bool is_subset(const CellSet& a, const CellSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const CellSet& a, const CellSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return true;
        if (*ia < *ib)
            ++ia;
        else
            ++ib;
    }
    return false;
}

StateComplex::StateComplex(std::size_t vertex_count,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                           std::vector<std::string> labels)
    : n_(vertex_count), edges_(std::move(edges)), incident_(vertex_count), labels_(std::move(labels)) {
    if (labels_.empty()) labels_ = markov::default_labels(n_);
    if (labels_.size() != n_) throw ValidationError("label count does not match vertex count");
    for (auto& [i, j] : edges_) {
        if (i > j) std::swap(i, j);
        if (i == j || j >= n_) throw ValidationError("invalid edge endpoints");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ValidationError("duplicate edge");
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const CellId id{static_cast<std::uint32_t>(n_ + k)};
        incident_[edges_[k].first].push_back(id);
        incident_[edges_[k].second].push_back(id);
    }
}

Cell StateComplex::cell(CellId id) const {
    if (id.value < n_) return {Cell::Kind::vertex, id.value, id.value};
    const auto k = id.value - n_;
    if (k >= edges_.size()) throw ValidationError("cell id out of range");
    return {Cell::Kind::edge, edges_[k].first, edges_[k].second};
}

CellId StateComplex::vertex(std::size_t i) const {
    if (i >= n_) throw ValidationError("vertex index out of range");
    return {static_cast<std::uint32_t>(i)};
}

bool StateComplex::has_edge(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    const std::pair<std::uint32_t, std::uint32_t> key{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    return std::binary_search(edges_.begin(), edges_.end(), key);
}

CellId StateComplex::edge(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::pair<std::uint32_t, std::uint32_t> key{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) throw ValidationError("no edge between the given states");
    return {static_cast<std::uint32_t>(n_ + (it - edges_.begin()))};
}

CellSet StateComplex::all_cells() const {
    std::vector<CellId> ids(cell_count());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = {static_cast<std::uint32_t>(k)};
    return CellSet(std::move(ids));
}

std::string StateComplex::name(CellId id) const {
    const auto c = cell(id);
    if (c.is_vertex()) return labels_[c.i];
    return labels_[c.i] + "-" + labels_[c.j];
}

std::vector<std::string> StateComplex::names(const CellSet& cells) const {
    std::vector<std::string> out;
    out.reserve(cells.size());
    for (auto id : cells) out.push_back(name(id));
    return out;
}

CellId StateComplex::parse_name(const std::string& name) const {
    const auto find_label = [&](const std::string& label) -> std::ptrdiff_t {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        return it == labels_.end() ? -1 : it - labels_.begin();
    };
    if (auto v = find_label(name); v >= 0) return vertex(static_cast<std::size_t>(v));
    for (auto dash = name.find('-'); dash != std::string::npos; dash = name.find('-', dash + 1)) {
        const auto a = find_label(name.substr(0, dash));
        const auto b = find_label(name.substr(dash + 1));
        if (a >= 0 && b >= 0 && has_edge(a, b)) return edge(a, b);
    }
    throw ValidationError("unknown cell '" + name + "'");
}

StateComplex build_complex(const markov::TransitionMatrix& matrix) {
    const auto n = matrix.size();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (matrix(i, j) > 0.0 || matrix(j, i) > 0.0) edges.emplace_back(i, j);
    return StateComplex(n, std::move(edges), matrix.states());
}

CellSet closure(const StateComplex& complex, const CellSet& cells) {
    std::vector<CellId> ids(cells.begin(), cells.end());
    for (auto id : cells) {
        const auto c = complex.cell(id);
        if (c.is_edge()) {
            ids.push_back(complex.vertex(c.i));
            ids.push_back(complex.vertex(c.j));
        }
    }
    return CellSet(std::move(ids));
}

CellSet mouth(const StateComplex& complex, const CellSet& cells) {
    return set_difference(closure(complex, cells), cells);
}

bool is_closed(const StateComplex& complex, const CellSet& cells) {
    for (auto id : cells) {
        const auto c = complex.cell(id);
        if (c.is_edge() && !(cells.contains(complex.vertex(c.i)) && cells.contains(complex.vertex(c.j))))
            return false;
    }
    return true;
}

bool is_locally_closed(const StateComplex& complex, const CellSet& cells) {
    // the mouth of any set is made of vertices only (closure adds only vertices),
    // and every vertex set is closed in a 1-complex
    return is_closed(complex, mouth(complex, cells));
}

}  // namespace mvfph::complex
