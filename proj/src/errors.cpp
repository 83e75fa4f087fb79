#include "hotplug/errors.hpp"

namespace hotplug {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::modulus_mismatch: return "ModulusMismatch";
    case Errc::config: return "ConfigError";
    case Errc::no_solution: return "NoSolution";
    case Errc::singular: return "SingularMatrix";
    case Errc::field_too_small: return "FieldTooSmall";
    case Errc::unsupported_params: return "UnsupportedParams";
    case Errc::subpacketization_too_large: return "SubpacketizationTooLarge";
    case Errc::guard_rail: return "GuardRail";
    case Errc::reconstruction_failure: return "ReconstructionFailure";
    case Errc::decoding_vector_not_found: return "DecodingVectorNotFound";
    case Errc::condition_violated: return "ConditionViolated";
    case Errc::infeasible_xi: return "InfeasibleXi";
    case Errc::decode_failure: return "DecodeFailure";
  }
  return "Error";
}

}  // namespace hotplug
