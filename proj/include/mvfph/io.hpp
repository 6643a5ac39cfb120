#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "mvfph/dynamics.hpp"
#include "mvfph/harness.hpp"
#include "mvfph/mvf.hpp"
#include "mvfph/persistence.hpp"

// JSON and SVG renderings used by the CLI and the Python bindings.
namespace mvfph::io {

using Json = nlohmann::ordered_json;

Json field_to_json(const mvf::MultivectorField& field, const complex::StateComplex& complex);

/// {"gamma", "morse_sets": [{"label", "cells", "index"}], "order": [[above, below]]}
Json morse_to_json(const persistence::Stage& stage, const complex::StateComplex& complex);

/// {"grid": [...], "points": [{"birth", "death" (number or "inf"), "index": [h1, c1]}]}
Json diagram_to_json(const persistence::PersistenceDiagram& diagram);
/// Inverse of diagram_to_json. Throws ParseError.
persistence::PersistenceDiagram diagram_from_json(std::string_view text);

/// Point labels "p1".."pk" refer to positions in the diagrams' canonical order.
Json bottleneck_to_json(const persistence::BottleneckResult& result);

Json stability_to_json(const harness::StabilityReport& report);
Json properties_to_json(const harness::PropertyReport& report);

/// Birth/death scatter with the diagonal, one marker shape per index class and
/// essential points on a rail above the plot.
std::string diagram_to_svg(const persistence::PersistenceDiagram& diagram);

/// Numbers as JSON numbers; +inf as the string "inf".
Json real_to_json(double value);

}  // namespace mvfph::io
