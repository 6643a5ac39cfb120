#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "mvfph/dynamics.hpp"
#include "mvfph/harness.hpp"

using namespace mvfph;
using namespace mvfph::dynamics;
using testing::cells;

namespace {

struct Example {
    markov::TransitionMatrix m = testing::example_matrix();
    complex::StateComplex cx = complex::build_complex(m);

    mvf::MultivectorField field(double g) const { return mvf::build_mvf(cx, m, g); }
    std::size_t node(const mvf::MultivectorField& f, const char* cell) const { return f.owner(cx.parse_name(cell)); }
};

// Reachability by repeated squaring of the boolean adjacency (Warshall).
std::vector<std::vector<bool>> warshall(const MGraph& g) {
    const auto n = g.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) {
        r[v][v] = true;
        for (auto w : g.successors(v)) r[v][w] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("pi_map") {
    Example ex;
    const auto f0 = ex.field(0.0);
    CHECK(pi_map(ex.cx, f0, ex.cx.parse_name("N1-N2")) == cells(ex.cx, {"N1", "N2", "N1-N2"}));
    CHECK(pi_map(ex.cx, f0, ex.cx.parse_name("N2")) == cells(ex.cx, {"N2"}));
    const auto f15 = ex.field(0.15);
    CHECK(pi_map(ex.cx, f15, ex.cx.parse_name("N3")) == cells(ex.cx, {"N3", "N1-N3", "N2-N3"}));
}

TEST_CASE("M-graph at gamma = 0: each edge points at its endpoints") {
    Example ex;
    const auto f = ex.field(0.0);
    const auto g = build_mgraph(f, ex.cx);
    CHECK(g.size() == 6);
    CHECK(g.arc_count() == 6);
    for (std::size_t v = 0; v < g.size(); ++v) CHECK(g.has_arc(v, v));
    const std::pair<const char*, const char*> arcs[] = {{"N1-N2", "N1"}, {"N1-N2", "N2"}, {"N1-N3", "N1"},
                                                        {"N1-N3", "N3"}, {"N2-N3", "N2"}, {"N2-N3", "N3"}};
    for (auto [from, to] : arcs) CHECK(g.has_arc(ex.node(f, from), ex.node(f, to)));
    CHECK_FALSE(g.has_arc(ex.node(f, "N1"), ex.node(f, "N1-N2")));
}

TEST_CASE("M-graph at gamma = 0.15 and 0.23") {
    Example ex;
    const auto f = ex.field(0.15);
    const auto g = build_mgraph(f, ex.cx);
    CHECK(g.size() == 4);
    CHECK(g.arc_count() == 4);
    CHECK(g.has_arc(ex.node(f, "N1-N2"), ex.node(f, "N1")));
    CHECK(g.has_arc(ex.node(f, "N1-N2"), ex.node(f, "N2")));
    CHECK(g.has_arc(ex.node(f, "N3"), ex.node(f, "N1")));
    CHECK(g.has_arc(ex.node(f, "N3"), ex.node(f, "N2")));

    const auto top = build_mgraph(ex.field(0.23), ex.cx);
    CHECK(top.size() == 1);
    CHECK(top.arc_count() == 0);
    CHECK(top.has_arc(0, 0));
}

TEST_CASE("Morse sets of the worked example") {
    Example ex;
    const auto names = [&](double gamma) {
        const auto f = ex.field(gamma);
        std::vector<std::vector<std::string>> out;
        for (const auto& s : morse_sets(build_mgraph(f, ex.cx), f)) out.push_back(ex.cx.names(s.cells));
        return out;
    };
    CHECK(names(0.0) == std::vector<std::vector<std::string>>{{"N1"}, {"N2"}, {"N3"}, {"N1-N2"}, {"N1-N3"}, {"N2-N3"}});
    CHECK(names(0.17) == std::vector<std::vector<std::string>>{{"N1", "N2", "N1-N2"}, {"N3", "N1-N3", "N2-N3"}});
    CHECK(names(0.23) ==
          std::vector<std::vector<std::string>>{{"N1", "N2", "N3", "N1-N2", "N1-N3", "N2-N3"}});
}

TEST_CASE("Morse order") {
    Example ex;
    {
        const auto f = ex.field(0.0);
        const auto g = build_mgraph(f, ex.cx);
        const auto sets = morse_sets(g, f);
        const auto order = morse_order(g, sets);
        std::set<std::pair<std::string, std::string>> got;
        for (auto [a, b] : order.strict_pairs()) got.emplace(ex.cx.name(sets[a].label), ex.cx.name(sets[b].label));
        CHECK(got == std::set<std::pair<std::string, std::string>>{{"N1-N2", "N1"}, {"N1-N2", "N2"}, {"N1-N3", "N1"},
                                                                    {"N1-N3", "N3"}, {"N2-N3", "N2"}, {"N2-N3", "N3"}});
    }
    {
        const auto f = ex.field(0.15);
        const auto g = build_mgraph(f, ex.cx);
        const auto sets = morse_sets(g, f);
        std::set<std::pair<std::string, std::string>> got;
        for (auto [a, b] : morse_order(g, sets).strict_pairs())
            got.emplace(ex.cx.name(sets[a].label), ex.cx.name(sets[b].label));
        CHECK(got == std::set<std::pair<std::string, std::string>>{
                         {"N1-N2", "N1"}, {"N1-N2", "N2"}, {"N3", "N1"}, {"N3", "N2"}});
    }
    {
        const MGraph single(std::vector<std::vector<std::size_t>>(1));
        const auto f = mvf::MultivectorField::from_parts(0, 1, {complex::CellSet{complex::CellId{0}}});
        const auto order = morse_order(single, morse_sets(single, f));
        CHECK(order.size() == 1);
        CHECK(order.leq(0, 0));
        CHECK(order.strict_pairs().empty());
    }
}

TEST_CASE("SCCs agree with a transitive-closure oracle on random graphs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<std::vector<std::size_t>> succ(n);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t w = 0; w < n; ++w)
                if (rng() % 5 == 0) succ[v].push_back(w);
        const MGraph g(succ);
        std::vector<complex::CellSet> parts;
        for (std::uint32_t v = 0; v < n; ++v) parts.push_back(complex::CellSet{complex::CellId{v}});
        const auto f = mvf::MultivectorField::from_parts(0, n, parts);
        const auto sets = morse_sets(g, f);
        const auto reach = warshall(g);

        std::vector<std::size_t> set_of(n);
        for (std::size_t s = 0; s < sets.size(); ++s)
            for (auto v : sets[s].members) set_of[v] = s;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                CHECK((set_of[a] == set_of[b]) == (reach[a][b] && reach[b][a]));

        const auto order = morse_order(g, sets);
        for (std::size_t p = 0; p < sets.size(); ++p) {
            CHECK(order.leq(p, p));
            for (std::size_t q = 0; q < sets.size(); ++q) {
                if (p != q) CHECK_FALSE((order.leq(p, q) && order.leq(q, p)));
                CHECK(order.leq(p, q) == reach[sets[q].members.front()][sets[p].members.front()]);
                for (std::size_t r = 0; r < sets.size(); ++r)
                    if (order.leq(p, q) && order.leq(q, r)) CHECK(order.leq(p, r));
            }
        }
    }
}

TEST_CASE("arc semantics agree with pi_map; Morse sets partition the complex") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto m = harness::random_chain({5, 0.5, seed});
        const auto cx = complex::build_complex(m);
        for (double gamma : markov::threshold_grid(m).values) {
            const auto f = mvf::build_mvf(cx, m, gamma);
            const auto g = build_mgraph(f, cx);
            for (std::size_t v = 0; v < f.size(); ++v) {
                for (std::size_t w = 0; w < f.size(); ++w) {
                    if (v == w) continue;
                    bool via_pi = false;
                    for (auto x : f[v].cells)
                        via_pi = via_pi || complex::intersects(pi_map(cx, f, x), f[w].cells);
                    CHECK(g.has_arc(v, w) == via_pi);
                }
            }
            complex::CellSet all;
            std::size_t total = 0;
            for (const auto& s : morse_sets(g, f)) {
                CHECK(s.label == s.cells.front());
                total += s.cells.size();
                all = complex::set_union(all, s.cells);
            }
            CHECK(total == cx.cell_count());
            CHECK(all == cx.all_cells());
        }
    }
}

}  // TEST_SUITE
