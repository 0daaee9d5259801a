#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scc {

enum class ErrorKind {
  invalid_input,
  singular_configuration,
  degenerate_configuration,
  wrong_codimension,
  degenerate_minor,
  hemisphere_obstruction,
  domain,
  singular_encounter,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Two bodies coincide or are antipodal (the collision set is excluded).
class SingularPairError : public Error {
 public:
  SingularPairError(std::size_t i, std::size_t j, double cosine);

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

/// A trajectory reached the singular set during integration.
class SingularEncounterError : public Error {
 public:
  SingularEncounterError(double time, std::size_t i, std::size_t j);

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace scc
