#include "scc/error.hpp"

#include <sstream>

namespace scc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::singular_configuration: return "singular configuration";
    case ErrorKind::degenerate_configuration: return "degenerate configuration";
    case ErrorKind::wrong_codimension: return "wrong codimension";
    case ErrorKind::degenerate_minor: return "degenerate minor";
    case ErrorKind::hemisphere_obstruction: return "hemisphere obstruction";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::singular_encounter: return "singular encounter";
  }
  return "error";
}

namespace {

std::string pair_message(std::size_t i, std::size_t j, double cosine) {
  std::ostringstream os;
  os << "bodies " << i + 1 << " and " << j + 1
     << (cosine > 0 ? " coincide" : " are antipodal")
     << " (q_i . q_j = " << cosine << ")";
  return os.str();
}

std::string encounter_message(double time, std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "trajectory entered the singular set at t = " << time << " (bodies "
     << i + 1 << " and " << j + 1 << ")";
  return os.str();
}

}  // namespace

SingularPairError::SingularPairError(std::size_t i, std::size_t j,
                                     double cosine)
    : Error(ErrorKind::singular_configuration, pair_message(i, j, cosine)),
      i_(i),
      j_(j) {}

SingularEncounterError::SingularEncounterError(double time, std::size_t i,
                                               std::size_t j)
    : Error(ErrorKind::singular_encounter, encounter_message(time, i, j)),
      time_(time) {}

}  // namespace scc
