#include "mvfph/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "mvfph/error.hpp"

namespace mvfph::io {

namespace {

Json index_to_json(const topology::TopologicalIndex& k) { return Json::array({k.h1, k.c1}); }

Json cells_to_json(const complex::CellSet& cells, const complex::StateComplex& cx) {
    Json out = Json::array();
    for (auto id : cells) out.push_back(cx.name(id));
    return out;
}

std::string point_label(std::size_t i) { return "p" + std::to_string(i + 1); }

Json perturbation_to_json(const markov::PerturbationSpec& p) {
    return Json{{"row", p.row + 1}, {"col", p.col + 1}, {"delta", p.delta}, {"compensate", p.compensate}};
}

Json matrix_to_json(const markov::TransitionMatrix& m) {
    return Json{{"states", m.states()}, {"matrix", m.rows()}};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

Json real_to_json(double value) {
    if (std::isinf(value) && value > 0) return "inf";
    return value;
}

Json field_to_json(const mvf::MultivectorField& field, const complex::StateComplex& complex) {
    Json parts = Json::array();
    for (const auto& mv : field.multivectors()) parts.push_back(cells_to_json(mv.cells, complex));
    return Json{{"gamma", field.gamma()}, {"multivectors", std::move(parts)}};
}

Json morse_to_json(const persistence::Stage& stage, const complex::StateComplex& complex) {
    Json sets = Json::array();
    for (std::size_t s = 0; s < stage.sets.size(); ++s) {
        sets.push_back(Json{{"label", complex.name(stage.sets[s].label)},
                            {"cells", cells_to_json(stage.sets[s].cells, complex)},
                            {"index", index_to_json(stage.indices[s])}});
    }
    Json order = Json::array();
    for (auto [above, below] : dynamics::morse_order(stage.graph, stage.sets).strict_pairs())
        order.push_back(Json::array({complex.name(stage.sets[above].label), complex.name(stage.sets[below].label)}));
    return Json{{"gamma", stage.gamma}, {"morse_sets", std::move(sets)}, {"order", std::move(order)}};
}

Json diagram_to_json(const persistence::PersistenceDiagram& diagram) {
    Json points = Json::array();
    for (const auto& p : diagram.points)
        points.push_back(Json{{"birth", p.birth}, {"death", real_to_json(p.death)}, {"index", index_to_json(p.index)}});
    return Json{{"grid", diagram.grid.values}, {"points", std::move(points)}};
}

persistence::PersistenceDiagram diagram_from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what(), 0, 0);
    }
    persistence::PersistenceDiagram diagram;
    try {
        if (doc.contains("grid")) diagram.grid.values = doc.at("grid").get<std::vector<double>>();
        for (const auto& p : doc.at("points")) {
            persistence::PersistencePoint point;
            point.birth = p.at("birth").get<double>();
            const auto& death = p.at("death");
            if (death.is_string()) {
                if (death.get<std::string>() != "inf") throw ParseError("death must be a number or \"inf\"", 0, 0);
                point.death = persistence::kInfinity;
            } else {
                point.death = death.get<double>();
            }
            const auto& k = p.at("index");
            if (!k.is_array() || k.size() != 2) throw ParseError("index must be [h1, c1]", 0, 0);
            point.index = {k[0].get<std::size_t>(), k[1].get<std::size_t>()};
            if (!(point.death > point.birth)) throw ValidationError("point with death <= birth");
            diagram.points.push_back(point);
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed diagram: ") + e.what(), 0, 0);
    }
    persistence::sort_canonical(diagram.points);
    return diagram;
}

Json bottleneck_to_json(const persistence::BottleneckResult& result) {
    Json matching = Json::array();
    for (const auto& m : result.matching) {
        matching.push_back(Json::array({m.left ? Json(point_label(*m.left)) : Json("diagonal"),
                                        m.right ? Json(point_label(*m.right)) : Json("diagonal"),
                                        real_to_json(m.cost)}));
    }
    return Json{{"distance", real_to_json(result.distance)}, {"matching", std::move(matching)}};
}

Json stability_to_json(const harness::StabilityReport& report) {
    Json records = Json::array();
    for (const auto& r : report.records) {
        Json perturbations = Json::array();
        for (const auto& p : r.perturbations) perturbations.push_back(perturbation_to_json(p));
        Json rec{{"seed", r.seed},       {"perturbations", std::move(perturbations)},
                 {"delta", r.delta},     {"l", r.l},
                 {"l_all", r.l_all},     {"bound", r.bound},
                 {"distance", real_to_json(r.distance)}, {"violation", r.violation}};
        if (r.original) rec["original"] = matrix_to_json(*r.original);
        if (r.perturbed) rec["perturbed"] = matrix_to_json(*r.perturbed);
        records.push_back(std::move(rec));
    }
    return Json{{"mode", report.mode == harness::StabilityMode::single ? "single" : "multi"},
                {"trials", report.trials},
                {"violations", report.violations},
                {"worst_ratio", real_to_json(report.worst_ratio)},
                {"records", std::move(records)}};
}

Json properties_to_json(const harness::PropertyReport& report) {
    return Json{{"trials", report.trials},
                {"checks", report.checks},
                {"failures", report.failures},
                {"messages", report.messages}};
}

std::string diagram_to_svg(const persistence::PersistenceDiagram& diagram) {
    constexpr double size = 480, margin = 60, plot = size - 2 * margin, rail = margin - 30;
    double top = 0.0;
    for (double g : diagram.grid.values) top = std::max(top, g);
    for (const auto& p : diagram.points) {
        top = std::max(top, p.birth);
        if (!p.essential()) top = std::max(top, p.death);
    }
    if (top <= 0.0) top = 1.0;
    top *= 1.05;
    const auto x = [&](double v) { return margin + v / top * plot; };
    const auto y = [&](double v) { return size - margin - v / top * plot; };

    std::map<topology::TopologicalIndex, std::size_t> classes;
    for (const auto& p : diagram.points) classes.try_emplace(p.index, classes.size());
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const auto marker = [&](std::size_t cls, double cx, double cy) {
        const std::string color = colors[cls % 6];
        std::ostringstream m;
        switch (cls % 4) {
            case 0:
                m << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"6\" fill=\"" << color << "\"/>";
                break;
            case 1:
                m << "<rect x=\"" << fmt(cx - 5) << "\" y=\"" << fmt(cy - 5) << "\" width=\"10\" height=\"10\" fill=\""
                  << color << "\"/>";
                break;
            case 2:
                m << "<polygon points=\"" << fmt(cx) << "," << fmt(cy - 7) << " " << fmt(cx - 6) << "," << fmt(cy + 5)
                  << " " << fmt(cx + 6) << "," << fmt(cy + 5) << "\" fill=\"" << color << "\"/>";
                break;
            default:
                m << "<polygon points=\"" << fmt(cx) << "," << fmt(cy - 7) << " " << fmt(cx + 7) << "," << fmt(cy)
                  << " " << fmt(cx) << "," << fmt(cy + 7) << " " << fmt(cx - 7) << "," << fmt(cy) << "\" fill=\""
                  << color << "\"/>";
        }
        return m.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes, diagonal and the rail for essential points
    svg << "<line x1=\"" << fmt(x(0)) << "\" y1=\"" << fmt(y(0)) << "\" x2=\"" << fmt(x(top)) << "\" y2=\""
        << fmt(y(0)) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(x(0)) << "\" y1=\"" << fmt(y(0)) << "\" x2=\"" << fmt(x(0)) << "\" y2=\""
        << fmt(y(top)) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(x(0)) << "\" y1=\"" << fmt(y(0)) << "\" x2=\"" << fmt(x(top)) << "\" y2=\""
        << fmt(y(top)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<line x1=\"" << fmt(x(0)) << "\" y1=\"" << fmt(rail) << "\" x2=\"" << fmt(x(top)) << "\" y2=\""
        << fmt(rail) << "\" stroke=\"gray\" stroke-dasharray=\"1 3\"/>\n";
    svg << "<text x=\"" << fmt(x(0) - 30) << "\" y=\"" << fmt(rail + 4) << "\">inf</text>\n";
    for (double g : diagram.grid.values) {
        svg << "<text x=\"" << fmt(x(g)) << "\" y=\"" << fmt(y(0) + 16) << "\" text-anchor=\"middle\">"
            << fmt_tick(g) << "</text>\n";
        svg << "<text x=\"" << fmt(x(0) - 6) << "\" y=\"" << fmt(y(g) + 4) << "\" text-anchor=\"end\">" << fmt_tick(g)
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt(size / 2) << "\" y=\"" << fmt(size - 20) << "\" text-anchor=\"middle\">birth</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt(size / 2) << "\" transform=\"rotate(-90 16 " << fmt(size / 2)
        << ")\" text-anchor=\"middle\">death</text>\n";
    for (const auto& p : diagram.points)
        svg << marker(classes.at(p.index), x(p.birth), p.essential() ? rail : y(p.death)) << "\n";
    double ly = margin + 10;
    for (const auto& [k, cls] : classes) {
        svg << marker(cls, size - margin - 60, ly) << "<text x=\"" << fmt(size - margin - 48) << "\" y=\""
            << fmt(ly + 4) << "\">(" << k.h1 << "," << k.c1 << ")</text>\n";
        ly += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace mvfph::io
