#include "qrev/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qrev::io {

namespace {

const json &require_key(const json &j, const char *key, const std::string &where) {
    if (!j.is_object()) {
        throw ParseError(where + ": expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(where + ": missing key \"" + key + "\"");
    }
    return *it;
}

std::size_t require_dim(const json &j, const char *key, const std::string &where) {
    const json &v = require_key(j, key, where);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw ParseError(where + "." + key + ": expected a positive integer");
    }
    return v.get<std::size_t>();
}

void require_shape(const Matrix &m, std::size_t rows, std::size_t cols, const std::string &where) {
    if (m.rows() != rows || m.cols() != cols) {
        throw ParseError(where + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
}

}  // namespace

json to_json(const Matrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(where + ": expected a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        throw ParseError(where + "[0]: expected a non-empty row array");
    }
    const std::size_t cols = j[0].size();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_at = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ParseError(row_at + ": expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const json &z = j[r][c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw ParseError(row_at + "[" + std::to_string(c) + "]: expected [re, im] pair");
            }
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return Matrix(rows, cols, std::move(entries));
}

json to_json(const DensityOperator &rho) {
    return json{{"dim", rho.dim()}, {"matrix", to_json(rho.matrix())}};
}

DensityOperator state_from_json(const json &j) {
    const std::size_t dim = require_dim(j, "dim", "state");
    Matrix m = matrix_from_json(require_key(j, "matrix", "state"), "state.matrix");
    require_shape(m, dim, dim, "state.matrix");
    return DensityOperator(m);
}

json to_json(const CodeSubspace &code) {
    return json{{"ambient_dim", code.ambient_dim()},
                {"logical_dim", code.logical_dim()},
                {"isometry", to_json(code.isometry())}};
}

CodeSubspace code_from_json(const json &j) {
    const std::size_t n = require_dim(j, "ambient_dim", "code");
    const std::size_t k = require_dim(j, "logical_dim", "code");
    Matrix v = matrix_from_json(require_key(j, "isometry", "code"), "code.isometry");
    require_shape(v, n, k, "code.isometry");
    return CodeSubspace(std::move(v));
}

json to_json(const QuantumChannel &ch, ChannelForm form) {
    json j{{"in_dim", ch.in_dim()}, {"out_dim", ch.out_dim()}};
    if (form == ChannelForm::Choi) {
        j["choi"] = to_json(ch.choi());
    } else {
        json ops = json::array();
        for (const auto &e : ch.kraus()) {
            ops.push_back(to_json(e));
        }
        j["kraus"] = std::move(ops);
    }
    return j;
}

QuantumChannel channel_from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("channel: expected a JSON object");
    }
    const bool has_kraus = j.contains("kraus");
    const bool has_choi = j.contains("choi");
    if (has_kraus == has_choi) {
        throw ParseError("channel: exactly one of \"kraus\" and \"choi\" must be present");
    }
    if (has_choi) {
        Matrix choi = matrix_from_json(j["choi"], "channel.choi");
        const std::size_t n = choi.rows();
        // Missing dimensions are inferred: from the other one if given,
        // otherwise in_dim == out_dim == sqrt(n).
        std::size_t d = j.contains("in_dim") ? require_dim(j, "in_dim", "channel") : 0;
        std::size_t m = j.contains("out_dim") ? require_dim(j, "out_dim", "channel") : 0;
        if (d == 0 && m == 0) {
            const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
            if (root * root != n) {
                throw ParseError("channel: in_dim and out_dim are required for a " + std::to_string(n) + "x" +
                                 std::to_string(n) + " Choi matrix");
            }
            d = m = root;
        } else if (d == 0 || m == 0) {
            const std::size_t known = d == 0 ? m : d;
            if (n % known != 0) {
                throw ParseError("channel.choi: size " + std::to_string(n) + " is not a multiple of " +
                                 std::to_string(known));
            }
            (d == 0 ? d : m) = n / known;
        }
        require_shape(choi, d * m, d * m, "channel.choi");
        return QuantumChannel::from_choi(d, m, std::move(choi));
    }

    const json &list = j["kraus"];
    if (!list.is_array() || list.empty()) {
        throw ParseError("channel.kraus: expected a non-empty array of matrices");
    }
    KrausSet ops;
    for (std::size_t k = 0; k < list.size(); ++k) {
        ops.push_back(matrix_from_json(list[k], "channel.kraus[" + std::to_string(k) + "]"));
    }
    // Dimensions are optional for the Kraus form; when present they must agree.
    const std::size_t d = j.contains("in_dim") ? require_dim(j, "in_dim", "channel") : ops[0].cols();
    const std::size_t m = j.contains("out_dim") ? require_dim(j, "out_dim", "channel") : ops[0].rows();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        require_shape(ops[k], m, d, "channel.kraus[" + std::to_string(k) + "]");
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

json to_json(const CheckReport &report) {
    json quantities = json::object();
    for (const auto &[name, value] : report.quantities()) {
        quantities[name] = std::isfinite(value) ? json(value) : json(nullptr);
    }
    return json{{"verdict", to_string(report.verdict())},
                {"method", report.method()},
                {"tolerance", report.tolerance()},
                {"quantities", std::move(quantities)}};
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace qrev::io
