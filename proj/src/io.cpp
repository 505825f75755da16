#include "scx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scx/cq_state.hpp"
#include "scx/errors.hpp"

namespace scx {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void escape_string(const std::string& s, std::string& out) {
  out += nlohmann::json(s).dump();
}

void dump_rec(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        escape_string(it.key(), out);
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars ? ", " : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        dump_rec(e, indent, depth + 1, out);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) {
        out += format_double(x);
      } else {
        escape_string(format_double(x), out);
      }
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

namespace {

double as_number(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw InputError(std::string(what) + ": expected a number");
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) throw InputError("matrix: expected object with \"dim\" and \"re\"");
  const auto dim = j.at("dim").get<long long>();
  if (dim <= 0) throw InputError("matrix: dim must be positive");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  const nlohmann::json im = has_im ? j.at("im") : nlohmann::json();
  ComplexMatrix m(dim, dim);
  if (!re.is_array() || static_cast<long long>(re.size()) != dim) throw InputError("matrix: \"re\" must have dim rows");
  if (has_im && (!im.is_array() || static_cast<long long>(im.size()) != dim)) throw InputError("matrix: \"im\" must have dim rows");
  for (long long r = 0; r < dim; ++r) {
    const auto& rr = re.at(static_cast<std::size_t>(r));
    if (!rr.is_array() || static_cast<long long>(rr.size()) != dim) throw InputError("matrix: row " + std::to_string(r) + " has wrong length");
    for (long long c = 0; c < dim; ++c) {
      const double x = as_number(rr.at(static_cast<std::size_t>(c)), "matrix.re");
      double y = 0.0;
      if (has_im) {
        const auto& ir = im.at(static_cast<std::size_t>(r));
        if (!ir.is_array() || static_cast<long long>(ir.size()) != dim) throw InputError("matrix: im row " + std::to_string(r) + " has wrong length");
        y = as_number(ir.at(static_cast<std::size_t>(c)), "matrix.im");
      }
      m(r, c) = Complex(x, y);
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

std::vector<double> weights_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() ? j.at("weights") : j;
  if (!arr.is_array() || arr.empty()) throw InputError("distribution: \"weights\" must be a non-empty array");
  std::vector<double> w;
  for (const auto& v : arr) w.push_back(as_number(v, "weights"));
  return w;
}

nlohmann::json weights_to_json(const std::vector<double>& w) { return {{"weights", w}}; }

StateData state_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("weights")) return weights_from_json(j);
  if (j.is_object() && j.contains("dim")) return matrix_from_json(j);
  throw InputError("state: expected {\"weights\": [...]} or {\"dim\", \"re\", \"im\"}");
}

StateData load_state_file(const std::filesystem::path& path) {
  try {
    return state_from_json(load_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw InputError(path.string() + ": " + msg);
  }
}

CQState cq_state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("probs") || !j.contains("conditionals")) {
    throw InputError("cq state: expected object with \"probs\" and \"conditionals\"");
  }
  std::vector<double> probs;
  for (const auto& v : j.at("probs")) probs.push_back(as_number(v, "probs"));
  const std::string mode = j.value("mode", "classical");
  const auto& conds = j.at("conditionals");
  if (!conds.is_array()) throw InputError("cq state: \"conditionals\" must be an array");
  if (mode == "classical") {
    std::vector<ClassicalDistribution> c;
    for (const auto& e : conds) c.emplace_back(weights_from_json(e));
    return CQState::classical(std::move(probs), std::move(c));
  }
  if (mode == "quantum") {
    std::vector<DensityOperator> c;
    for (const auto& e : conds) c.emplace_back(matrix_from_json(e));
    return CQState::quantum(std::move(probs), std::move(c));
  }
  throw InputError("cq state: mode must be \"classical\" or \"quantum\"");
}

nlohmann::json cq_state_to_json(const CQState& cq) {
  nlohmann::json conds = nlohmann::json::array();
  if (cq.mode() == CQMode::classical) {
    for (const auto& c : cq.classical_conditionals()) conds.push_back(weights_to_json(c.weights()));
  } else {
    for (const auto& c : cq.quantum_conditionals()) conds.push_back(matrix_to_json(c.matrix()));
  }
  return {{"probs", cq.probs()}, {"mode", cq.mode() == CQMode::classical ? "classical" : "quantum"}, {"conditionals", conds}};
}

CQState load_cq_state_file(const std::filesystem::path& path) {
  try {
    return cq_state_from_json(load_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace scx
