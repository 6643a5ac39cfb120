#include "mvfph/markov.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "mvfph/error.hpp"

namespace mvfph::markov {

namespace {

std::string shortest(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits on ',' and records the 1-based column of each trimmed field.
std::vector<std::pair<std::string_view, std::size_t>> split_fields(std::string_view line) {
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto raw = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
        const auto lead = raw.find_first_not_of(" \t\r");
        out.emplace_back(trim(raw), start + (lead == std::string_view::npos ? 0 : lead) + 1);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

TransitionMatrix parse_csv(std::string_view text) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        const auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            if (!rows.empty() || !labels.empty())
                throw ParseError("label header must precede all rows", line_no, 1);
            const auto hash = line.find('#');
            for (auto [field, col] : split_fields(line.substr(hash + 1))) {
                if (field.empty()) throw ParseError("empty state label", line_no, col + hash + 1);
                labels.emplace_back(field);
            }
            continue;
        }

        std::vector<double> row;
        for (auto [field, col] : split_fields(line)) {
            double value = 0.0;
            const auto* first = field.data();
            const auto* last = field.data() + field.size();
            if (!field.empty() && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (field.empty() || ec != std::errc{} || ptr != last)
                throw ParseError("expected a decimal number, got '" + std::string(field) + "'", line_no, col);
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no matrix rows found", 0, 0);
    return TransitionMatrix(std::move(labels), std::move(rows));
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

TransitionMatrix parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports the byte just past the offending token
        auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, col);
    }
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object", 1, 1);
    if (!doc.contains("matrix")) throw ParseError("missing \"matrix\" member", 1, 1);

    std::vector<std::string> labels;
    if (doc.contains("states")) {
        const auto& states = doc.at("states");
        if (!states.is_array()) throw ParseError("\"states\" must be an array of strings", 1, 1);
        for (const auto& s : states) {
            if (!s.is_string()) throw ParseError("\"states\" must be an array of strings", 1, 1);
            labels.push_back(s.get<std::string>());
        }
    }
    const auto& matrix = doc.at("matrix");
    if (!matrix.is_array()) throw ParseError("\"matrix\" must be an array of rows", 1, 1);
    std::vector<std::vector<double>> rows;
    for (const auto& r : matrix) {
        if (!r.is_array()) throw ParseError("each matrix row must be an array of numbers", 1, 1);
        std::vector<double> row;
        for (const auto& v : r) {
            if (!v.is_number()) throw ParseError("matrix entries must be numbers", 1, 1);
            row.push_back(v.get<double>());
        }
        rows.push_back(std::move(row));
    }
    return TransitionMatrix(std::move(labels), std::move(rows));
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("N" + std::to_string(i));
    return labels;
}

TransitionMatrix::TransitionMatrix(std::vector<std::string> states, std::vector<std::vector<double>> rows)
    : n_(rows.size()) {
    if (n_ == 0) throw ValidationError("transition matrix must have at least one state");
    if (states.empty()) states = default_labels(n_);
    if (states.size() != n_)
        throw ValidationError("got " + std::to_string(states.size()) + " state labels for " +
                              std::to_string(n_) + " rows");
    if (std::set<std::string>(states.begin(), states.end()).size() != n_)
        throw ValidationError("state labels must be unique");
    states_ = std::move(states);

    entries_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != n_)
            throw ValidationError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n_));
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double p = rows[i][j];
            if (!std::isfinite(p) || p < 0.0 || p > 1.0)
                throw ValidationError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      ") = " + shortest(p) + " is outside [0,1]");
            sum += p;
            entries_.push_back(p);
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance)
            throw ValidationError("row " + std::to_string(i + 1) + " sums to " + shortest(sum) +
                                  ", expected 1");
    }
}

std::vector<std::vector<double>> TransitionMatrix::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
}

MatrixFormat sniff_format(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return MatrixFormat::json;
    return MatrixFormat::csv;
}

TransitionMatrix parse_matrix(std::string_view text, MatrixFormat format) {
    return format == MatrixFormat::json ? parse_json(text) : parse_csv(text);
}

std::string to_json(const TransitionMatrix& matrix) {
    nlohmann::ordered_json doc;
    doc["states"] = matrix.states();
    doc["matrix"] = matrix.rows();
    return doc.dump();
}

std::string to_csv(const TransitionMatrix& matrix) {
    std::string out = "#";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (i) out += ',';
        out += matrix.states()[i];
    }
    out += '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            if (j) out += ',';
            out += shortest(matrix(i, j));
        }
        out += '\n';
    }
    return out;
}

ThresholdGrid threshold_grid(const TransitionMatrix& matrix) {
    std::vector<double> values{0.0};
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = 0; j < matrix.size(); ++j)
            if (i != j && matrix(i, j) > 0.0) values.push_back(matrix(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return {std::move(values)};
}

TransitionMatrix perturb(const TransitionMatrix& matrix, const PerturbationSpec& spec) {
    const auto n = matrix.size();
    if (spec.row >= n || spec.col >= n)
        throw ValidationError("perturbation target out of range");
    if (spec.row == spec.col) throw ValidationError("perturbation target must be off-diagonal");

    auto rows = matrix.rows();
    const double shifted = rows[spec.row][spec.col] + spec.delta;
    if (!(shifted >= 0.0 && shifted <= 1.0))
        throw ValidationError("perturbed entry " + shortest(shifted) + " leaves [0,1]");
    rows[spec.row][spec.col] = shifted;
    if (spec.compensate) {
        const double diag = rows[spec.row][spec.row] - spec.delta;
        if (!(diag >= 0.0 && diag <= 1.0))
            throw ValidationError("diagonal compensation impossible: entry (" + std::to_string(spec.row + 1) +
                                  "," + std::to_string(spec.row + 1) + ") would become " + shortest(diag));
        rows[spec.row][spec.row] = diag;
    }
    return TransitionMatrix(matrix.states(), std::move(rows));
}

MatrixDistance matrix_distance(const TransitionMatrix& a, const TransitionMatrix& b) {
    if (a.size() != b.size()) throw ValidationError("matrix dimensions differ");
    if (a.states() != b.states()) throw ValidationError("state labels differ");
    MatrixDistance d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double diff = std::abs(a(i, j) - b(i, j));
            if (diff == 0.0) continue;
            d.delta_inf = std::max(d.delta_inf, diff);
            ++d.l_all;
            if (i != j) {
                ++d.l_offdiag;
                d.offdiag_inf = std::max(d.offdiag_inf, diff);
            }
        }
    }
    return d;
}

}  // namespace mvfph::markov
