#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mvfph/complex.hpp"
#include "mvfph/markov.hpp"
#include "mvfph/mvf.hpp"

namespace mvfph::testing {

// Three-state chain used throughout as the worked example.
inline markov::TransitionMatrix example_matrix() {
    return markov::TransitionMatrix({}, {{0.5, 0.17, 0.33}, {0.17, 0.6, 0.23}, {0.15, 0.15, 0.7}});
}

inline markov::TransitionMatrix identity_matrix(std::size_t n) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
    return markov::TransitionMatrix({}, std::move(rows));
}

inline complex::CellSet cells(const complex::StateComplex& cx, std::initializer_list<const char*> names) {
    std::vector<complex::CellId> ids;
    for (const auto* n : names) ids.push_back(cx.parse_name(n));
    return complex::CellSet(std::move(ids));
}

// Partition as sorted lists of cell names, for order-insensitive comparison.
inline std::vector<std::vector<std::string>> named_parts(const mvf::MultivectorField& field,
                                                         const complex::StateComplex& cx) {
    std::vector<std::vector<std::string>> out;
    for (const auto& mv : field.multivectors()) {
        auto names = cx.names(mv.cells);
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<std::string>> sorted_parts(std::vector<std::vector<std::string>> parts) {
    for (auto& p : parts) std::sort(p.begin(), p.end());
    std::sort(parts.begin(), parts.end());
    return parts;
}

}  // namespace mvfph::testing
