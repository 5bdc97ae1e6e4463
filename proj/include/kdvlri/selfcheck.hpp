#pragma once

#include <string>
#include <vector>

namespace kdv {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The oracle/invariant self-test suite behind the `check` subcommand:
/// resonance identity (closed form vs Duhamel oracle), semigroup isometries,
/// projection/semigroup commutation, exact mean conservation, realness
/// preservation, convolution agreement, the two-sided rescaling inequality
/// and the zero-mean reduction. Each entry runs in well under a second.
std::vector<PropertyResult> run_selfcheck();

} // namespace kdv
