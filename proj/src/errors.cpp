#include "twistmat/errors.hpp"

namespace twistmat {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::denominator_not_invertible: return "DenominatorNotInvertible";
    case ErrorCode::spec_mismatch: return "SpecMismatch";
    case ErrorCode::ideal_not_coprime: return "IdealNotCoprime";
    case ErrorCode::unsupported_spec: return "UnsupportedSpec";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::index_out_of_pattern: return "IndexOutOfPattern";
    case ErrorCode::not_a_unit: return "NotAUnit";
    case ErrorCode::incompatible_quotient: return "IncompatibleQuotient";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::incompatible_atom: return "IncompatibleAtom";
    case ErrorCode::kernel_not_invariant: return "KernelNotInvariant";
    case ErrorCode::bad_unit: return "BadUnit";
    case ErrorCode::ng_violated: return "NGViolated";
    case ErrorCode::parameter_not_fixed: return "ParameterNotFixed";
    case ErrorCode::precondition_unmet: return "PreconditionUnmet";
    case ErrorCode::not_an_automorphism: return "NotAnAutomorphism";
  }
  return "Unknown";
}

}  // namespace twistmat
