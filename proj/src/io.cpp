#include "scc/io.hpp"

#include "scc/error.hpp"

#include <charconv>
#include <sstream>

namespace scc::io {
namespace {

Json vector_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json matrix_columns_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.cols(); ++i) out.push_back(vector_json(m.col(i)));
  return out;
}

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorKind::invalid_input, what);
}

double as_number(const Json& j, const char* what) {
  if (!j.is_number()) bad_input(std::string(what) + " must be a number");
  return j.get<double>();
}

Eigen::MatrixXd columns_from_json(const Json& j, Eigen::Index rows,
                                  const char* what) {
  if (!j.is_array()) bad_input(std::string(what) + " must be an array");
  Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& col = j[i];
    if (!col.is_array() || static_cast<Eigen::Index>(col.size()) != rows) {
      std::ostringstream os;
      os << what << " entry " << i + 1 << " must be an array of " << rows
         << " numbers";
      bad_input(os.str());
    }
    for (Eigen::Index k = 0; k < rows; ++k) {
      m(k, static_cast<Eigen::Index>(i)) =
          as_number(col[static_cast<std::size_t>(k)], what);
    }
  }
  return m;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << column;
    throw Error(ErrorKind::invalid_input, os.str());
  }
}

Json to_json(const Configuration& c) {
  return Json{{"dim", c.dim()}, {"points", matrix_columns_json(c.points())}};
}

Configuration configuration_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("points")) {
    bad_input("configuration JSON needs \"dim\" and \"points\"");
  }
  if (!j["dim"].is_number_integer()) bad_input("\"dim\" must be an integer");
  const int dim = j["dim"].get<int>();
  if (dim < 1) bad_input("\"dim\" must be >= 1");
  return Configuration(dim, columns_from_json(j["points"], dim + 1, "points"));
}

Json to_json(const Configuration& c, const MassVector& m) {
  Json j = to_json(c);
  j["masses"] = m.values();
  return j;
}

std::optional<MassVector> masses_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("masses")) return std::nullopt;
  return mass_list_from_json(j["masses"]);
}

MassVector mass_list_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("masses") ? j["masses"] : j;
  if (!list.is_array()) bad_input("masses must be an array of numbers");
  std::vector<double> values;
  for (const Json& v : list) values.push_back(as_number(v, "mass"));
  return MassVector(std::move(values));
}

Json to_json(const SccResidualReport& r) {
  return Json{{"gradient_norms", r.gradient_norms},
              {"max_norm", r.max_norm},
              {"theta", r.theta},
              {"multiplier_residuals", r.multiplier_residuals},
              {"verdict", r.verdict},
              {"tol", r.tol}};
}

Json to_json(const DziobekReport& r) {
  return Json{{"delta", vector_json(r.delta.entries)},
              {"k_estimates", r.k_estimates},
              {"k", r.k},
              {"criterion_residual", r.criterion_residual},
              {"same_sign", r.same_sign},
              {"s_residuals", r.s_residuals},
              {"m_residuals", r.m_residuals},
              {"verdict", r.verdict},
              {"tol", r.tol}};
}

Json to_json(const DriftReport& r) {
  return Json{{"t_final", r.t_final},
              {"max_position_drift", r.max_position_drift},
              {"max_speed", r.max_speed},
              {"energy_drift", r.energy_drift}};
}

Json to_json(const SccClass& k) {
  Json fp = Json::array();
  for (const auto& e : k.fingerprint.entries) fp.push_back({e[0], e[1], e[2]});
  Json j = to_json(k.representative, k.masses);
  j["fingerprint"] = std::move(fp);
  j["residual"] = k.residual;
  j["count"] = k.count;
  return j;
}

Json to_json(const HemisphereResult& h) {
  Json j{{"in_closed_hemisphere", h.contained}};
  j["witness"] = h.witness.size() > 0 ? vector_json(h.witness) : Json(nullptr);
  return j;
}

Eigen::MatrixXd velocities_from_json(const Json& j, Eigen::Index rows,
                                     Eigen::Index cols) {
  const Json& list = j.is_object() && j.contains("velocities") ? j["velocities"] : j;
  Eigen::MatrixXd v = columns_from_json(list, rows, "velocities");
  if (v.cols() != cols) {
    std::ostringstream os;
    os << "expected " << cols << " velocity vectors, got " << v.cols();
    bad_input(os.str());
  }
  return v;
}

}  // namespace scc::io
