#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qrev/channel.hpp"
#include "qrev/qstate.hpp"
#include "qrev/verify.hpp"

namespace qrev::io {

using nlohmann::json;

// Matrices are arrays of rows, each entry a [re, im] pair of doubles.
json to_json(const Matrix &m);
// `where` prefixes error messages, e.g. "kraus[1]".
Matrix matrix_from_json(const json &j, const std::string &where);

// {"dim": d, "matrix": ...}
json to_json(const DensityOperator &rho);
DensityOperator state_from_json(const json &j);

// {"ambient_dim": n, "logical_dim": k, "isometry": ...}
json to_json(const CodeSubspace &code);
CodeSubspace code_from_json(const json &j);

enum class ChannelForm { Kraus, Choi };

// {"in_dim", "out_dim", "kraus": [...]} or {"in_dim", "out_dim", "choi": ...};
// exactly one of "kraus" / "choi" must be present. Dimensions are optional:
// Kraus shapes imply them, and a Choi matrix without them is read as a map
// from C^d to C^d with d^2 its size.
json to_json(const QuantumChannel &ch, ChannelForm form);
QuantumChannel channel_from_json(const json &j);

// {"verdict", "method", "tolerance", "quantities"}; non-finite numbers become null.
json to_json(const CheckReport &report);

// Reads and parses a JSON file; ParseError names the file on failure.
json read_json_file(const std::filesystem::path &path);

}  // namespace qrev::io
