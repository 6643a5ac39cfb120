#include <doctest.h>

#include "fixtures.hpp"
#include "mvfph/error.hpp"
#include "mvfph/harness.hpp"
#include "mvfph/mvf.hpp"

using namespace mvfph;
using namespace mvfph::mvf;
using Parts = std::vector<std::vector<std::string>>;

namespace {

// Literal reading of the construction: singleton sets, explicit Step-2 pairs,
// then pairwise merging of overlapping sets until nothing changes.
std::vector<CellSet> literal_construction(const StateComplex& cx, const markov::TransitionMatrix& m, double gamma) {
    std::vector<CellSet> family;
    for (auto id : cx.all_cells()) family.push_back(CellSet{id});
    for (auto id : cx.all_cells()) {
        const auto c = cx.cell(id);
        if (!c.is_edge()) continue;
        if (m(c.i, c.j) <= gamma) family.push_back(CellSet{cx.vertex(c.i), id});
        if (m(c.j, c.i) <= gamma) family.push_back(CellSet{cx.vertex(c.j), id});
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < family.size() && !changed; ++a) {
            for (std::size_t b = a + 1; b < family.size() && !changed; ++b) {
                if (complex::intersects(family[a], family[b])) {
                    family[a] = complex::set_union(family[a], family[b]);
                    family.erase(family.begin() + static_cast<std::ptrdiff_t>(b));
                    changed = true;
                }
            }
        }
    }
    return family;
}

}  // namespace

TEST_SUITE("mvf") {

TEST_CASE("worked example fields at each threshold") {
    const auto m = testing::example_matrix();
    const auto cx = complex::build_complex(m);
    const auto parts = [&](double g) { return testing::named_parts(build_mvf(cx, m, g), cx); };

    CHECK(parts(0.0) == testing::sorted_parts({{"N1"}, {"N2"}, {"N3"}, {"N1-N2"}, {"N1-N3"}, {"N2-N3"}}));
    CHECK(parts(0.15) == testing::sorted_parts({{"N1"}, {"N2"}, {"N3", "N1-N3", "N2-N3"}, {"N1-N2"}}));
    CHECK(parts(0.17) == testing::sorted_parts({{"N1", "N2", "N1-N2"}, {"N3", "N1-N3", "N2-N3"}}));
    CHECK(parts(0.2) == testing::sorted_parts({{"N1", "N2", "N1-N2"}, {"N3", "N1-N3", "N2-N3"}}));
    CHECK(parts(0.23) == testing::sorted_parts({{"N1", "N2", "N3", "N1-N2", "N1-N3", "N2-N3"}}));
}

TEST_CASE("multivector ids are canonical minima and parts are ordered by id") {
    const auto m = testing::example_matrix();
    const auto cx = complex::build_complex(m);
    const auto f = build_mvf(cx, m, 0.15);
    REQUIRE(f.size() == 4);
    CHECK(cx.name(f[0].id) == "N1");
    CHECK(cx.name(f[1].id) == "N2");
    CHECK(cx.name(f[2].id) == "N3");
    CHECK(cx.name(f[3].id) == "N1-N2");
    CHECK(f.owner(cx.parse_name("N2-N3")) == 2);
}

TEST_CASE("zero reverse entry merges the target vertex at gamma = 0") {
    const markov::TransitionMatrix m({}, {{0.4, 0.6}, {0.0, 1.0}});
    const auto cx = complex::build_complex(m);
    CHECK(testing::named_parts(build_mvf(cx, m, 0.0), cx) == testing::sorted_parts({{"N1"}, {"N2", "N1-N2"}}));
}

TEST_CASE("negative gamma is rejected") {
    const auto m = testing::example_matrix();
    CHECK_THROWS_AS(build_mvf(complex::build_complex(m), m, -0.1), ValidationError);
}

TEST_CASE("validity") {
    const auto m = testing::example_matrix();
    const auto cx = complex::build_complex(m);
    for (double g : {0.0, 0.15, 0.17, 0.2, 0.23, 0.5}) CHECK(is_valid_mvf(build_mvf(cx, m, g), cx));

    const auto v1 = cx.parse_name("N1"), v2 = cx.parse_name("N2"), e12 = cx.parse_name("N1-N2");
    const auto e13 = cx.parse_name("N1-N3"), e23 = cx.parse_name("N2-N3"), v3 = cx.parse_name("N3");
    CHECK(is_valid_mvf(MultivectorField::from_parts(0, cx.cell_count(),
                                                    {{e12}, {v1}, {v2}, {v3}, {e13}, {e23}}),
                       cx));
    CHECK_FALSE(is_valid_mvf(MultivectorField::from_parts(0, cx.cell_count(),
                                                          {{e12, v1}, {v1}, {v2}, {v3}, {e13}, {e23}}),
                             cx));
    CHECK_FALSE(is_valid_mvf(MultivectorField::from_parts(0, cx.cell_count(), {{e12}, {v1}, {v2}}), cx));
    CHECK_FALSE(is_valid_mvf(MultivectorField::from_parts(0, cx.cell_count(),
                                                          {{e12}, {v1}, {v2}, {v3}, {e13}, {e23}, {}}),
                             cx));
}

TEST_CASE("coarsening") {
    const auto m = testing::example_matrix();
    const auto cx = complex::build_complex(m);
    const auto f15 = build_mvf(cx, m, 0.15), f17 = build_mvf(cx, m, 0.17);
    CHECK(is_coarsening(f17, f15));
    CHECK(is_coarsening(f15, f15));
    CHECK_FALSE(is_coarsening(f15, f17));

    const auto other = markov::TransitionMatrix({}, {{0.5, 0.5}, {0.5, 0.5}});
    const auto ocx = complex::build_complex(other);
    CHECK_THROWS_AS(is_coarsening(f15, build_mvf(ocx, other, 0)), ValidationError);
}

TEST_CASE("union-find construction agrees with the literal pairwise construction") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto m = harness::random_chain({3 + seed % 6, 0.3 + 0.1 * static_cast<double>(seed % 7), seed});
        const auto cx = complex::build_complex(m);
        for (double g : markov::threshold_grid(m).values) {
            const auto field = build_mvf(cx, m, g);
            const auto expected = MultivectorField::from_parts(g, cx.cell_count(), literal_construction(cx, m, g));
            CHECK(field == expected);
            CHECK(is_valid_mvf(field, cx));
        }
    }
}

TEST_CASE("filtration: later fields coarsen earlier ones and fields are constant between grid values") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const auto m = harness::random_chain({6, 0.6, seed});
        const auto cx = complex::build_complex(m);
        const auto grid = markov::threshold_grid(m).values;
        std::vector<MultivectorField> fields;
        for (double g : grid) fields.push_back(build_mvf(cx, m, g));
        for (std::size_t a = 0; a < fields.size(); ++a)
            for (std::size_t b = a; b < fields.size(); ++b) CHECK(is_coarsening(fields[b], fields[a]));
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            const double mid = 0.5 * (grid[k] + grid[k + 1]);
            CHECK(testing::named_parts(build_mvf(cx, m, mid), cx) == testing::named_parts(fields[k], cx));
        }
        CHECK(build_mvf(cx, m, grid.back()) == build_mvf(cx, m, grid.back()));
    }
}

}  // TEST_SUITE
