#pragma once

#include <stdexcept>
#include <string>

namespace sg {

enum class Errc {
  backend_mismatch,
  field_mismatch,
  degenerate_pair,
  division_by_zero,
  hypothesis_violation,
  too_few_points,
  invalid_argument,
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace sg
