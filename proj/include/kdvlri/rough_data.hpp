#pragma once

#include "kdvlri/spectral_field.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kdv {

/// Phase factor q_k of the rough datum: all ones, cos(k*pi/2) (zero on odd
/// modes, alternating sign on even ones), or uniform on the unit circle with
/// q_{-k} = conj(q_k).
enum class Phase { unit, alternating_cos, random_unit };

std::string to_string(Phase p);
Phase phase_from_string(const std::string& name);

/// Recipe for initial data of prescribed regularity: the field lies in H^s
/// but in no H^{s+decay_offset-1/2} space as max_mode grows.
struct RoughDataSpec {
  double s = 0.0;                 // target regularity, in (-1/2, 0]
  double amplitude = 0.1;
  double decay_offset = 0.501;    // the exponent is -(decay_offset + s)
  Phase phase = Phase::unit;
  std::uint64_t seed = 0;
  int max_mode = 256;

  std::string to_json() const;
  static RoughDataSpec from_json(const std::string& text);
};

/// c_k = amplitude * q_k * |k|^{-decay_offset-s} for 0 < |k| <= max_mode,
/// c_0 = 0, with conjugate symmetry enforced so the field is real.
/// Deterministic given (phase, seed); random phases are keyed by (seed, k)
/// so the field does not depend on generation order.
SpectralField generate(const RoughDataSpec& spec, double period);

/// (s, h_norm(f, s)) for each s in the grid; a diagnostic for locating the
/// regularity boundary of a datum.
std::vector<std::pair<double, double>> membership_profile(const SpectralField& f,
                                                          const std::vector<double>& s_grid);

} // namespace kdv
