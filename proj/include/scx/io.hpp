#pragma once

// File formats: matrices {"dim", "re", "im"}, distributions {"weights"}, c-q
// states {"probs", "mode", "conditionals"}; plus locale-free number output.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "scx/numkit.hpp"

namespace scx {

class CQState;

/// 17 significant digits, '.' decimal point, "inf" / "-inf" / "nan" literals.
std::string format_double(double x);

/// Serializes JSON with every floating-point number printed by
/// format_double; non-finite numbers become the strings "inf", "-inf", "nan".
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// Parses JSON text; syntax errors are reported as "<origin>:<line>:<col>: ...".
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
nlohmann::json load_json_file(const std::filesystem::path& path);

ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

std::vector<double> weights_from_json(const nlohmann::json& j);
nlohmann::json weights_to_json(const std::vector<double>& w);

/// A state file holds either a matrix or a weight vector.
using StateData = std::variant<ComplexMatrix, std::vector<double>>;
StateData state_from_json(const nlohmann::json& j);
StateData load_state_file(const std::filesystem::path& path);

CQState cq_state_from_json(const nlohmann::json& j);
nlohmann::json cq_state_to_json(const CQState& cq);
CQState load_cq_state_file(const std::filesystem::path& path);

}  // namespace scx
