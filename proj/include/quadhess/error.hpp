#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadhess {

enum class ErrorKind {
  dimension,
  singular,
  update_singular,
  degenerate_leading_coefficient,
  no_real_solution,
  on_discriminant_locus,
  irrational_root,
  stencil,
  residual,
  vertical_tangent,
  size,
  generation_exhausted,
  parse,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for every precondition failure in the toolkit. The
// kind lets batch drivers turn failures into structured skip records.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quadhess
