#pragma once

#include <stdexcept>
#include <string>

namespace quasipack {

enum class error_kind {
  invalid_parameters,
  vertex_out_of_range,
  set_too_large,
  invariant_violation,
  parse_error,
  malformed_certificate,
  ground_mismatch,
  uniformity_mismatch,
  cap_exceeded,
  precondition,
  insufficient_absorbers,
};

inline const char* to_string(error_kind kind) {
  switch (kind) {
    case error_kind::invalid_parameters: return "invalid-parameters";
    case error_kind::vertex_out_of_range: return "vertex-out-of-range";
    case error_kind::set_too_large: return "set-too-large";
    case error_kind::invariant_violation: return "invariant-violation";
    case error_kind::parse_error: return "parse-error";
    case error_kind::malformed_certificate: return "malformed-certificate";
    case error_kind::ground_mismatch: return "ground-mismatch";
    case error_kind::uniformity_mismatch: return "uniformity-mismatch";
    case error_kind::cap_exceeded: return "cap-exceeded";
    case error_kind::precondition: return "precondition";
    case error_kind::insufficient_absorbers: return "insufficient-absorbers";
  }
  return "unknown";
}

// All library failures surface as this type; callers branch on kind().
class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

}  // namespace quasipack
