#include "mvfph/dynamics.hpp"

#include <algorithm>
#include <limits>

#include "mvfph/error.hpp"

namespace mvfph::dynamics {

namespace {

constexpr auto kUnvisited = std::numeric_limits<std::size_t>::max();

// Iterative Tarjan. Returns the component id of each node; ids are in
// reverse topological order of the condensation (sinks first).
std::vector<std::size_t> tarjan(const MGraph& graph, std::size_t& component_count) {
    const auto n = graph.size();
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> frames;  // (node, next successor slot)
    std::size_t counter = 0;
    component_count = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            auto& [v, slot] = frames.back();
            const auto& succ = graph.successors(v);
            if (slot < succ.size()) {
                const auto w = succ[slot++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const auto done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const auto parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                while (true) {
                    const auto w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = component_count;
                    if (w == done) break;
                }
                ++component_count;
            }
        }
    }
    return comp;
}

}  // namespace

MGraph::MGraph(std::vector<std::vector<std::size_t>> successors) : successors_(std::move(successors)) {
    for (std::size_t v = 0; v < successors_.size(); ++v) {
        auto& s = successors_[v];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        s.erase(std::remove(s.begin(), s.end(), v), s.end());
        if (!s.empty() && s.back() >= successors_.size()) throw ValidationError("arc target out of range");
    }
}

bool MGraph::has_arc(std::size_t from, std::size_t to) const {
    if (from == to) return from < size();
    const auto& s = successors_.at(from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::size_t MGraph::arc_count() const noexcept {
    std::size_t total = 0;
    for (const auto& s : successors_) total += s.size();
    return total;
}

std::vector<std::pair<std::size_t, std::size_t>> MorseOrder::strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t q = 0; q < reach_.size(); ++q)
        for (std::size_t p = 0; p < reach_.size(); ++p)
            if (p != q && reach_[q][p]) out.emplace_back(q, p);
    return out;
}

CellSet pi_map(const StateComplex& complex, const MultivectorField& field, CellId x) {
    const auto& block = field[field.owner(x)].cells;
    return complex::set_union(block, complex::closure(complex, CellSet{x}));
}

MGraph build_mgraph(const MultivectorField& field, const StateComplex& complex) {
    if (field.cell_count() != complex.cell_count()) throw ValidationError("field does not match complex");
    std::vector<std::vector<std::size_t>> succ(field.size());
    for (std::size_t v = 0; v < field.size(); ++v)
        for (auto x : complex::mouth(complex, field[v].cells)) succ[v].push_back(field.owner(x));
    return MGraph(std::move(succ));
}

std::vector<MorseSet> morse_sets(const MGraph& graph, const MultivectorField& field) {
    if (graph.size() != field.size()) throw ValidationError("graph does not match field");
    std::size_t count = 0;
    const auto comp = tarjan(graph, count);

    std::vector<std::vector<std::size_t>> members(count);
    for (std::size_t v = 0; v < graph.size(); ++v) members[comp[v]].push_back(v);

    std::vector<MorseSet> sets;
    sets.reserve(count);
    for (auto& m : members) {
        std::vector<CellId> cells;
        for (auto v : m) cells.insert(cells.end(), field[v].cells.begin(), field[v].cells.end());
        CellSet cs(std::move(cells));
        const auto label = cs.front();
        sets.push_back({std::move(cs), std::move(m), label});
    }
    std::sort(sets.begin(), sets.end(), [](const MorseSet& a, const MorseSet& b) { return a.label < b.label; });
    return sets;
}

MorseOrder morse_order(const MGraph& graph, const std::vector<MorseSet>& sets) {
    std::vector<std::size_t> set_of(graph.size(), kUnvisited);
    for (std::size_t s = 0; s < sets.size(); ++s)
        for (auto v : sets[s].members) set_of.at(v) = s;
    if (std::find(set_of.begin(), set_of.end(), kUnvisited) != set_of.end())
        throw ValidationError("Morse sets do not cover the graph");

    std::vector<std::vector<std::size_t>> dag(sets.size());
    for (std::size_t v = 0; v < graph.size(); ++v)
        for (auto w : graph.successors(v))
            if (set_of[v] != set_of[w]) dag[set_of[v]].push_back(set_of[w]);

    std::vector<std::vector<bool>> reach(sets.size(), std::vector<bool>(sets.size(), false));
    for (std::size_t q = 0; q < sets.size(); ++q) {
        std::vector<std::size_t> todo{q};
        reach[q][q] = true;
        while (!todo.empty()) {
            const auto s = todo.back();
            todo.pop_back();
            for (auto t : dag[s]) {
                if (!reach[q][t]) {
                    reach[q][t] = true;
                    todo.push_back(t);
                }
            }
        }
    }
    return MorseOrder(std::move(reach));
}

}  // namespace mvfph::dynamics
