#pragma once

#include "kdvlri/spectral_field.hpp"

namespace kdv {

/// Fractional Sobolev norm (sum_k <k>^{2s} |c_k|^2)^{1/2} with the integer
/// mode index k and <k> = (1+k^2)^{1/2}, on any period.
double h_norm(const SpectralField& f, double s);

/// h_norm(u - v, s) after zero-extending to a common band. Refuses on a
/// period mismatch.
double h_error(const SpectralField& u, const SpectralField& v, double s);

/// A lam-periodic field over the fractional frequency lattice Z/lam.
/// Coefficients are stored by the integer index xi, representing the
/// frequency xi/lam, for |xi| <= max_index.
class LambdaField {
public:
  LambdaField(int lam, int max_index, std::vector<cplx> coeffs);

  int lam() const { return lam_; }
  int max_index() const { return max_index_; }
  const std::vector<cplx>& coeffs() const { return coef_; }

  cplx coeff(int xi) const {
    if (xi < -max_index_ || xi > max_index_) return {0.0, 0.0};
    return coef_[static_cast<std::size_t>(xi + max_index_)];
  }

  /// Fractional frequency of index xi.
  double frequency(int xi) const { return static_cast<double>(xi) / static_cast<double>(lam_); }

private:
  int lam_;
  int max_index_;
  std::vector<cplx> coef_;
};

/// phi_lam(x) = lam^{-2} phi(x/lam): the coefficient at frequency xi/lam is
/// lam^{-1} c_xi. Requires a unit-period input and integer lam >= 1.
LambdaField rescale(const SpectralField& f, int lam);

/// ||f||_{H^s(0,lam)} = lam^{-1/2} (sum_{k in Z/lam} |f(k)|^2 <k>^{2s})^{1/2},
/// <k> evaluated at the fractional frequency.
double h_norm_lambda(const LambdaField& f, double s);

} // namespace kdv
