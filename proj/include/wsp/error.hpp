#pragma once

#include <stdexcept>
#include <string>

namespace wsp {

// Error taxonomy shared by the model, solvers, reductions and parsers.
enum class Errc {
  validation,
  scope_not_covered,
  size_cap_exceeded,
  budget_exceeded,
  non_user_independent_constraint,
  arity_overflow,
  singleton_set,
  unauthorized_plan,
  value_out_of_range,
  parse_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wsp
