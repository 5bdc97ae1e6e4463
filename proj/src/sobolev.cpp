#include "kdvlri/sobolev.hpp"

#include <cmath>
#include <stdexcept>

namespace kdv {

double h_norm(const SpectralField& f, double s) {
  double acc = 0.0;
  const int m = f.max_mode();
  for (int k = -m; k <= m; ++k) {
    const double kk = static_cast<double>(k);
    acc += std::pow(1.0 + kk * kk, s) * std::norm(f.coeff(k));
  }
  return std::sqrt(acc);
}

double h_error(const SpectralField& u, const SpectralField& v, double s) {
  if (u.period() != v.period())
    throw std::invalid_argument("h_error: fields live on different periods");
  return h_norm(subtract(u, v), s);
}

LambdaField::LambdaField(int lam, int max_index, std::vector<cplx> coeffs)
    : lam_(lam), max_index_(max_index), coef_(std::move(coeffs)) {
  if (lam_ < 1) throw std::invalid_argument("LambdaField: lam must be a positive integer");
  if (max_index_ < 0) throw std::invalid_argument("LambdaField: max_index must be >= 0");
  if (coef_.size() != static_cast<std::size_t>(2 * max_index_ + 1))
    throw std::invalid_argument("LambdaField: expected 2*max_index+1 coefficients");
  for (const auto& c : coef_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("LambdaField: non-finite coefficient");
}

LambdaField rescale(const SpectralField& f, int lam) {
  if (lam < 1) throw std::invalid_argument("rescale: lam must be an integer >= 1");
  if (std::abs(f.period() - 1.0) > 1e-12)
    throw std::invalid_argument("rescale: input must have period 1");
  const int m = f.max_mode();
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m + 1));
  const double inv_lam = 1.0 / static_cast<double>(lam);
  for (int xi = -m; xi <= m; ++xi)
    coeffs[static_cast<std::size_t>(xi + m)] = f.coeff(xi) * inv_lam;
  return LambdaField(lam, m, std::move(coeffs));
}

double h_norm_lambda(const LambdaField& f, double s) {
  double acc = 0.0;
  for (int xi = -f.max_index(); xi <= f.max_index(); ++xi) {
    const double k = f.frequency(xi);
    acc += std::pow(1.0 + k * k, s) * std::norm(f.coeff(xi));
  }
  return std::sqrt(acc / static_cast<double>(f.lam()));
}

} // namespace kdv
