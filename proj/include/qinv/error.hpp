#pragma once

#include <stdexcept>
#include <string>

namespace qinv {

enum class errc {
  zero_inverse,
  denominator_divisible_by_k,
  mixed_modulus,
  not_prime,
  not_a_unit,
  integrality_failure,
  non_unit_divisor,
  nonzero_constant_in_exp,
  imaginary_residue,
  bad_normalization,
  factorial_not_invertible,
  not_coprime,
  zero_lower_left,
  non_integer_phi,
  not_rhs,
  even_color,
  bound_violation,
  chain_degenerate,
  divisibility_failure,
  non_integral_assembly,
  p_divisible_by_k,
  phase_not_reducible,
  diamond_mismatch,
  h_zero,
  h1_divisible_by_k,
  insufficient_terms,
  insufficient_modulus,
  inconsistent_residues,
  bad_spec,
  unsupported,
};

inline const char* errc_name(errc e) {
  switch (e) {
    case errc::zero_inverse: return "ZeroInverse";
    case errc::denominator_divisible_by_k: return "DenominatorDivisibleByK";
    case errc::mixed_modulus: return "MixedModulus";
    case errc::not_prime: return "NotPrime";
    case errc::not_a_unit: return "NotAUnit";
    case errc::integrality_failure: return "IntegralityFailure";
    case errc::non_unit_divisor: return "NonUnitDivisor";
    case errc::nonzero_constant_in_exp: return "NonzeroConstantInExp";
    case errc::imaginary_residue: return "ImaginaryResidue";
    case errc::bad_normalization: return "BadNormalization";
    case errc::factorial_not_invertible: return "FactorialNotInvertible";
    case errc::not_coprime: return "NotCoprime";
    case errc::zero_lower_left: return "ZeroLowerLeft";
    case errc::non_integer_phi: return "NonIntegerPhi";
    case errc::not_rhs: return "NotRHS";
    case errc::even_color: return "EvenColor";
    case errc::bound_violation: return "BoundViolation";
    case errc::chain_degenerate: return "ChainDegenerate";
    case errc::divisibility_failure: return "DivisibilityFailure";
    case errc::non_integral_assembly: return "NonIntegralAssembly";
    case errc::p_divisible_by_k: return "PDivisibleByK";
    case errc::phase_not_reducible: return "PhaseNotReducible";
    case errc::diamond_mismatch: return "DiamondMismatch";
    case errc::h_zero: return "HZero";
    case errc::h1_divisible_by_k: return "H1DivisibleByK";
    case errc::insufficient_terms: return "InsufficientTerms";
    case errc::insufficient_modulus: return "InsufficientModulus";
    case errc::inconsistent_residues: return "InconsistentResidues";
    case errc::bad_spec: return "BadSpec";
    case errc::unsupported: return "Unsupported";
  }
  return "Unknown";
}

// Input problems (exit code 2 in the CLI) versus failed computations (3).
inline bool is_input_error(errc e) {
  switch (e) {
    case errc::not_prime:
    case errc::not_coprime:
    case errc::not_rhs:
    case errc::even_color:
    case errc::h_zero:
    case errc::bad_spec:
    case errc::mixed_modulus:
    case errc::zero_lower_left:
    case errc::p_divisible_by_k:
    case errc::h1_divisible_by_k:
    case errc::chain_degenerate:
    case errc::denominator_divisible_by_k:
    case errc::zero_inverse:
    case errc::unsupported:
      return true;
    default:
      return false;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace qinv
