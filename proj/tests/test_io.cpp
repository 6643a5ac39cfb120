#include <doctest.h>

#include "fixtures.hpp"
#include "mvfph/error.hpp"
#include "mvfph/io.hpp"

using namespace mvfph;
using io::Json;

TEST_SUITE("io") {

TEST_CASE("field JSON") {
    const auto m = testing::example_matrix();
    const auto cx = complex::build_complex(m);
    const auto j = io::field_to_json(mvf::build_mvf(cx, m, 0.15), cx);
    CHECK(j.at("gamma") == 0.15);
    CHECK(j.at("multivectors") == Json::parse(R"([["N1"],["N2"],["N3","N1-N3","N2-N3"],["N1-N2"]])"));
}

TEST_CASE("Morse JSON") {
    const auto f = persistence::run_filtration(testing::example_matrix());
    const auto j = io::morse_to_json(f.stages[2], f.complex);
    CHECK(j.at("morse_sets").size() == 2);
    CHECK(j.at("morse_sets")[0].at("label") == "N1");
    CHECK(j.at("morse_sets")[0].at("index") == Json::parse("[0,0]"));
    CHECK(j.at("morse_sets")[1].at("cells") == Json::parse(R"(["N3","N1-N3","N2-N3"])"));
    CHECK(j.at("morse_sets")[1].at("index") == Json::parse("[0,1]"));
    CHECK(j.at("order") == Json::parse(R"([["N3","N1"]])"));
}

TEST_CASE("diagram JSON round trip") {
    const auto d = persistence::diagram_of(testing::example_matrix());
    const auto j = io::diagram_to_json(d);
    CHECK(j.at("points").size() == 7);
    std::size_t inf = 0;
    for (const auto& p : j.at("points")) inf += p.at("death") == "inf";
    CHECK(inf == 1);
    const auto back = io::diagram_from_json(j.dump());
    CHECK(back.grid == d.grid);
    REQUIRE(back.points.size() == d.points.size());
    for (std::size_t k = 0; k < d.points.size(); ++k) {
        CHECK(back.points[k].birth == d.points[k].birth);
        CHECK(back.points[k].death == d.points[k].death);
        CHECK(back.points[k].index == d.points[k].index);
    }
    CHECK(persistence::bottleneck_distance(back, d) == 0.0);

    CHECK_THROWS_AS(io::diagram_from_json("{"), ParseError);
    CHECK_THROWS_AS(io::diagram_from_json(R"({"points":[{"birth":0,"death":"never","index":[0,0]}]})"),
                    ParseError);
    CHECK_THROWS_AS(io::diagram_from_json(R"({"points":[{"birth":0.2,"death":0.1,"index":[0,0]}]})"),
                    ValidationError);
}

TEST_CASE("bottleneck JSON") {
    persistence::PersistenceDiagram empty, one;
    one.points.push_back({0.1, 0.5, {0, 0}, {}});
    const auto j = io::bottleneck_to_json(persistence::bottleneck(one, empty));
    CHECK(j.at("matching") == Json::parse(R"([["p1","diagonal",0.2]])"));
}

TEST_CASE("SVG has axes, diagonal, rail and one marker per point") {
    const auto svg = io::diagram_to_svg(persistence::diagram_of(testing::example_matrix()));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"4 3\"") != std::string::npos);
    CHECK(svg.find(">inf</text>") != std::string::npos);
    std::size_t markers = 0;
    for (const char* tag : {"<circle", "<rect x=", "<polygon"}) {
        for (auto pos = svg.find(tag); pos != std::string::npos; pos = svg.find(tag, pos + 1)) ++markers;
    }
    // 7 points plus one legend marker per index class
    CHECK(markers == 7 + 3);
}

}  // TEST_SUITE
