#pragma once

#include <stdexcept>
#include <string>

namespace hotplug {

enum class Errc {
  division_by_zero,
  modulus_mismatch,
  config,
  no_solution,
  singular,
  field_too_small,
  unsupported_params,
  subpacketization_too_large,
  guard_rail,
  reconstruction_failure,
  decoding_vector_not_found,
  condition_violated,
  infeasible_xi,
  decode_failure,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace hotplug
