#pragma once

#include <stdexcept>
#include <string>

namespace schwarz {

// Error taxonomy shared by all modules. Each condition named in an
// operation contract maps to one code so callers (and the CLI) can
// report machine-readable failures.
enum class errc {
  center_mismatch,
  not_invertible,
  boundary_root,
  degenerate,
  lightlike_coordinate,
  zero_vector,
  nonreal_trace,
  off_curve,
  zero_schwarzian,
  no_convergence,
  out_of_domain,
  domain_exhausted,
  step_failure,
  singularity_hit,
  grid_too_coarse,
  insufficient_resolution,
  zero_field,
  pole_on_circle,
  winding_mismatch,
  degenerate_ratio,
  not_a_fixed_point,
  config_parse,
  validation,
  compute_failure,
  io_failure,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::center_mismatch: return "CenterMismatch";
    case errc::not_invertible: return "NotInvertible";
    case errc::boundary_root: return "BoundaryRoot";
    case errc::degenerate: return "Degenerate";
    case errc::lightlike_coordinate: return "LightlikeCoordinate";
    case errc::zero_vector: return "ZeroVector";
    case errc::nonreal_trace: return "NonrealTrace";
    case errc::off_curve: return "OffCurve";
    case errc::zero_schwarzian: return "ZeroSchwarzian";
    case errc::no_convergence: return "NoConvergence";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::domain_exhausted: return "DomainExhausted";
    case errc::step_failure: return "StepFailure";
    case errc::singularity_hit: return "SingularityHit";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::insufficient_resolution: return "InsufficientResolution";
    case errc::zero_field: return "ZeroField";
    case errc::pole_on_circle: return "PoleOnCircle";
    case errc::winding_mismatch: return "WindingMismatch";
    case errc::degenerate_ratio: return "DegenerateRatio";
    case errc::not_a_fixed_point: return "NotAFixedPoint";
    case errc::config_parse: return "ConfigParse";
    case errc::validation: return "Validation";
    case errc::compute_failure: return "ComputeFailure";
    case errc::io_failure: return "IoFailure";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace schwarz
