#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvfph::markov {

inline constexpr double kRowSumTolerance = 1e-9;

enum class MatrixFormat { csv, json };

/// Row-stochastic n x n matrix with unique state labels. Immutable once built.
class TransitionMatrix {
public:
    /// Validates shape, entry range, row sums and label uniqueness.
    /// An empty label list means the default labels N1..Nn.
    /// Throws ValidationError.
    TransitionMatrix(std::vector<std::string> states, std::vector<std::vector<double>> rows);

    std::size_t size() const noexcept { return n_; }
    const std::vector<std::string>& states() const noexcept { return states_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {entries_.data() + i * n_, n_};
    }
    std::vector<std::vector<double>> rows() const;

    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::string> states_;
    std::vector<double> entries_;
};

std::vector<std::string> default_labels(std::size_t n);

struct ThresholdGrid {
    std::vector<double> values;  // 0 first, strictly increasing

    std::size_t size() const noexcept { return values.size(); }
    friend bool operator==(const ThresholdGrid&, const ThresholdGrid&) = default;
};

/// Single off-diagonal change. Indices are 0-based.
struct PerturbationSpec {
    std::size_t row = 0;
    std::size_t col = 0;
    double delta = 0.0;
    bool compensate = true;  // shift (row,row) by -delta to keep the row stochastic
};

struct MatrixDistance {
    double delta_inf = 0.0;      // max entrywise |p - p'|
    std::size_t l_offdiag = 0;   // differing off-diagonal entries
    std::size_t l_all = 0;       // differing entries
    double offdiag_inf = 0.0;    // max |p - p'| over off-diagonal entries only
};

/// Parses CSV or JSON (see README for the grammar). Throws ParseError or ValidationError.
TransitionMatrix parse_matrix(std::string_view text, MatrixFormat format);

/// Picks JSON when the first non-blank character is '{', CSV otherwise.
MatrixFormat sniff_format(std::string_view text);

std::string to_json(const TransitionMatrix& matrix);
std::string to_csv(const TransitionMatrix& matrix);

ThresholdGrid threshold_grid(const TransitionMatrix& matrix);

TransitionMatrix perturb(const TransitionMatrix& matrix, const PerturbationSpec& spec);

MatrixDistance matrix_distance(const TransitionMatrix& a, const TransitionMatrix& b);

}  // namespace mvfph::markov
