#pragma once

#include <stdexcept>
#include <string>

namespace nhdiff {

enum class Errc {
  not_prime,
  even_prime,
  zero_degree,
  overflow,
  domain,
  unsupported_field,
  unsupported_parameter,
  degenerate_input,
  precondition,
  consistency,
  invalid_argument,
  internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nhdiff
