#pragma once

#include <complex>
#include <vector>

namespace kdv {

using cplx = std::complex<double>;

/// Band-limited periodic function on [0, L), stored as Fourier coefficients
/// c_k of e^{i*kappa_k*x} with kappa_k = 2*pi*k/L for k in {-M..M}.
///
/// Fields are immutable values: every operation returns a new field, so they
/// can be shared freely between threads.
class SpectralField {
public:
  /// Validating constructor. coeffs has size 2*max_mode+1, index k + max_mode.
  /// If real_flagged, enforces c_{-k} = conj(c_k) and Im(c_0) ~ 0 up to a
  /// 1e-12 tolerance relative to the field's scale.
  SpectralField(double period, int max_mode, std::vector<cplx> coeffs, bool real_flagged);

  static SpectralField zero(double period, int max_mode, bool real_flagged = true);

  double period() const { return period_; }
  int max_mode() const { return max_mode_; }
  bool is_real() const { return real_; }
  const std::vector<cplx>& coeffs() const { return coef_; }

  /// Coefficient c_k; zero outside the stored band.
  cplx coeff(int k) const {
    if (k < -max_mode_ || k > max_mode_) return {0.0, 0.0};
    return coef_[static_cast<std::size_t>(k + max_mode_)];
  }

  /// kappa_k = 2*pi*k/L.
  double wavenumber(int k) const;

  /// l2 norm of the coefficient vector (== H^0 norm, Plancherel).
  double l2_norm() const;

  /// Largest deviation from conjugate symmetry, |c_{-k} - conj(c_k)|.
  double conjugate_symmetry_defect() const;

  /// Same data reinterpreted with the given real flag (validates when set).
  SpectralField with_real_flag(bool real_flagged) const;

  struct unchecked_t {};
  /// Trusted constructor for internal use: skips invariant validation.
  SpectralField(unchecked_t, double period, int max_mode, std::vector<cplx> coeffs, bool real_flagged)
      : period_(period), max_mode_(max_mode), real_(real_flagged), coef_(std::move(coeffs)) {}

private:
  double period_;
  int max_mode_;
  bool real_;
  std::vector<cplx> coef_;
};

/// Samples at the equispaced points x_j = j*L/n, j = 0..n-1.
struct GridSamples {
  double period = 0.0;
  std::vector<cplx> values;

  GridSamples() = default;
  GridSamples(double period_, std::vector<cplx> values_);

  /// Real parts; refuses if any imaginary part is non-negligible.
  std::vector<double> real_values() const;
};

/// values[j] = sum_k c_k e^{i*kappa_k*x_j}. Requires n_points >= 2*max_mode+1.
GridSamples synthesize(const SpectralField& f, int n_points);

/// Trapezoidal-quadrature Fourier coefficients; exact inverse of synthesize
/// on band-limited data. Requires at least 2*max_mode+1 samples. The result
/// is flagged real when the input samples are (numerically) real.
SpectralField analyze(const GridSamples& g, int max_mode);

/// Sharp cutoff keeping |k| <= n; output max_mode = min(max_mode, n).
SpectralField project(const SpectralField& f, int n);

/// Airy flow e^{-t d_x^3}: c_k -> e^{i*kappa_k^3*t} c_k (unit modulus).
SpectralField semigroup(const SpectralField& f, double t);

/// c_k -> i*kappa_k*c_k.
SpectralField derivative(const SpectralField& f);

/// c_k -> c_k/(i*kappa_k) for k != 0; requires a (numerically) zero mean.
SpectralField antiderivative(const SpectralField& f);

/// Exact coefficients of the pointwise product, via zero-padded transforms
/// with >= 2*(M_f+M_g)+1 grid points. Output max_mode = M_f + M_g.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

/// Direct O(M_f*M_g) convolution; the independent partner of multiply().
SpectralField multiply_direct(const SpectralField& f, const SpectralField& g);

/// Spatial shift: (translate(f,a))(x) = f(x-a), i.e. c_k -> e^{-i*kappa_k*a} c_k.
SpectralField translate(const SpectralField& f, double a);

/// c_0.
cplx mean(const SpectralField& f);

/// Zero-extend the stored band to max_mode (>= current).
SpectralField extend(const SpectralField& f, int max_mode);

SpectralField add(const SpectralField& f, const SpectralField& g);
SpectralField subtract(const SpectralField& f, const SpectralField& g);
SpectralField scale(const SpectralField& f, double a);

/// Tolerance used for "numerically zero mean": |c_0| <= 1e-12*(1 + ||f||_2).
bool has_zero_mean(const SpectralField& f);

} // namespace kdv
