#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mvfph/complex.hpp"
#include "mvfph/harness.hpp"

using namespace mvfph;
using namespace mvfph::complex;
using testing::cells;

TEST_SUITE("complex") {

TEST_CASE("complex of the worked example is a triangle") {
    const auto cx = build_complex(testing::example_matrix());
    CHECK(cx.vertex_count() == 3);
    CHECK(cx.edge_count() == 3);
    CHECK(cx.names(cx.all_cells()) == std::vector<std::string>{"N1", "N2", "N3", "N1-N2", "N1-N3", "N2-N3"});
}

TEST_CASE("identity chain has no edges") {
    const auto cx = build_complex(testing::identity_matrix(4));
    CHECK(cx.vertex_count() == 4);
    CHECK(cx.edge_count() == 0);
}

TEST_CASE("one-directional transition still yields an edge") {
    const auto cx = build_complex(markov::TransitionMatrix({}, {{0, 1}, {0, 1}}));
    CHECK(cx.edge_count() == 1);
    CHECK(cx.has_edge(1, 0));
    CHECK(cx.name(cx.edge(1, 0)) == "N1-N2");
}

TEST_CASE("canonical order: vertices, then edges lexicographically") {
    const StateComplex cx(4, {{2, 3}, {0, 3}, {1, 0}});
    CHECK(cx.names(cx.all_cells()) == std::vector<std::string>{"N1", "N2", "N3", "N4", "N1-N2", "N1-N4", "N3-N4"});
    CHECK(cx.cell(CellId{5}) == Cell{Cell::Kind::edge, 0, 3});
    CHECK(cx.incident_edges(0).size() == 2);
    CHECK_THROWS(cx.edge(1, 2));
    CHECK_THROWS(cx.parse_name("N1-N3"));
    CHECK_THROWS(StateComplex(2, {{0, 0}}));
}

TEST_CASE("closure") {
    const auto cx = build_complex(testing::example_matrix());
    CHECK(closure(cx, cells(cx, {"N1-N2"})) == cells(cx, {"N1", "N2", "N1-N2"}));
    CHECK(closure(cx, cells(cx, {"N3"})) == cells(cx, {"N3"}));
    CHECK(closure(cx, CellSet{}).empty());
}

TEST_CASE("mouth") {
    const auto cx = build_complex(testing::example_matrix());
    CHECK(mouth(cx, cells(cx, {"N1-N2"})) == cells(cx, {"N1", "N2"}));
    CHECK(mouth(cx, cells(cx, {"N1", "N2", "N1-N2"})).empty());
    CHECK(mouth(cx, cells(cx, {"N3", "N1-N3"})) == cells(cx, {"N1"}));
}

TEST_CASE("local closedness") {
    const auto cx = build_complex(testing::example_matrix());
    CHECK(is_locally_closed(cx, cells(cx, {"N3", "N1-N3", "N2-N3"})));
    for (auto id : cx.all_cells()) CHECK(is_locally_closed(cx, CellSet{id}));
    CHECK(is_locally_closed(cx, cx.all_cells()));
    CHECK(is_closed(cx, cx.all_cells()));
    CHECK_FALSE(is_closed(cx, cells(cx, {"N1", "N1-N2"})));
}

TEST_CASE("closure and mouth properties on random subsets") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto cx = build_complex(harness::random_chain({6, 0.5, seed}));
        const auto random_subset = [&] {
            std::vector<CellId> ids;
            for (auto id : cx.all_cells())
                if (rng() % 2) ids.push_back(id);
            return CellSet(std::move(ids));
        };
        for (int k = 0; k < 10; ++k) {
            const auto a = random_subset();
            const auto b = random_subset();
            const auto cl = closure(cx, a);
            CHECK(is_subset(a, cl));
            CHECK(closure(cx, cl) == cl);
            CHECK(is_subset(closure(cx, set_intersection(a, b)), closure(cx, a)));
            CHECK(is_subset(cl, closure(cx, set_union(a, b))));

            const auto mo = mouth(cx, a);
            CHECK_FALSE(intersects(mo, a));
            CHECK(set_union(mo, a) == cl);
            for (auto id : mo) CHECK(cx.cell(id).is_vertex());

            CHECK(is_locally_closed(cx, a));
            CHECK(is_locally_closed(cx, set_intersection(a, b)));

            std::vector<CellId> verts;
            for (auto id : a)
                if (cx.cell(id).is_vertex()) verts.push_back(id);
            CHECK(is_closed(cx, CellSet(verts)));
        }
    }
}

}  // TEST_SUITE
