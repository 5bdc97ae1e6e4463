#include "kdvlri/spectral_field.hpp"

#include "kdvlri/fft_backend.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kdv {

namespace {

constexpr double kSymmetryTol = 1e-12;

void check_finite(const std::vector<cplx>& coeffs) {
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("SpectralField: non-finite coefficient");
  }
}

} // namespace

SpectralField::SpectralField(double period, int max_mode, std::vector<cplx> coeffs, bool real_flagged)
    : period_(period), max_mode_(max_mode), real_(real_flagged), coef_(std::move(coeffs)) {
  if (!(period_ > 0.0) || !std::isfinite(period_))
    throw std::invalid_argument("SpectralField: period must be positive");
  if (max_mode_ < 0) throw std::invalid_argument("SpectralField: max_mode must be >= 0");
  if (coef_.size() != static_cast<std::size_t>(2 * max_mode_ + 1))
    throw std::invalid_argument("SpectralField: expected 2*max_mode+1 coefficients, got " +
                                std::to_string(coef_.size()));
  check_finite(coef_);
  if (real_) {
    const double scale = l2_norm();
    for (int k = 0; k <= max_mode_; ++k) {
      const cplx cp = coeff(k);
      const cplx cm = coeff(-k);
      const double defect = (k == 0) ? std::abs(cp.imag())
                                     : std::abs(cm - std::conj(cp));
      if (defect > kSymmetryTol * (scale + std::abs(cp) + std::abs(cm)))
        throw std::invalid_argument("SpectralField: real flag set but coefficients are not "
                                    "conjugate-symmetric at k=" + std::to_string(k));
    }
  }
}

SpectralField SpectralField::zero(double period, int max_mode, bool real_flagged) {
  return SpectralField(period, max_mode,
                       std::vector<cplx>(static_cast<std::size_t>(2 * max_mode + 1)),
                       real_flagged);
}

double SpectralField::wavenumber(int k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / period_;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coef_) s += std::norm(c);
  return std::sqrt(s);
}

double SpectralField::conjugate_symmetry_defect() const {
  double worst = std::abs(coeff(0).imag());
  for (int k = 1; k <= max_mode_; ++k)
    worst = std::max(worst, std::abs(coeff(-k) - std::conj(coeff(k))));
  return worst;
}

SpectralField SpectralField::with_real_flag(bool real_flagged) const {
  return SpectralField(period_, max_mode_, coef_, real_flagged);
}

GridSamples::GridSamples(double period_, std::vector<cplx> values_)
    : period(period_), values(std::move(values_)) {
  if (!(period > 0.0)) throw std::invalid_argument("GridSamples: period must be positive");
  if (values.empty()) throw std::invalid_argument("GridSamples: need at least one sample");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("GridSamples: non-finite sample");
}

std::vector<double> GridSamples::real_values() const {
  double linf = 0.0;
  for (const auto& v : values) linf = std::max(linf, std::abs(v));
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    if (std::abs(v.imag()) > 1e-10 * (1.0 + linf))
      throw std::runtime_error("GridSamples: samples are not real-valued");
    out.push_back(v.real());
  }
  return out;
}

GridSamples synthesize(const SpectralField& f, int n_points) {
  const int m = f.max_mode();
  if (n_points < 2 * m + 1)
    throw std::invalid_argument("synthesize: n_points=" + std::to_string(n_points) +
                                " would alias modes; need >= " + std::to_string(2 * m + 1));
  std::vector<cplx> bins(static_cast<std::size_t>(n_points));
  for (int k = -m; k <= m; ++k) {
    const int idx = ((k % n_points) + n_points) % n_points;
    bins[static_cast<std::size_t>(idx)] += f.coeff(k);
  }
  std::vector<cplx> vals(static_cast<std::size_t>(n_points));
  fft::transform(bins.data(), vals.data(), n_points, /*forward=*/false);
  GridSamples g;
  g.period = f.period();
  g.values = std::move(vals);
  return g;
}

SpectralField analyze(const GridSamples& g, int max_mode) {
  const int n = static_cast<int>(g.values.size());
  if (max_mode < 0) throw std::invalid_argument("analyze: max_mode must be >= 0");
  if (n < 2 * max_mode + 1)
    throw std::invalid_argument("analyze: " + std::to_string(n) +
                                " samples cannot resolve modes up to " + std::to_string(max_mode));
  std::vector<cplx> bins(static_cast<std::size_t>(n));
  fft::transform(g.values.data(), bins.data(), n, /*forward=*/true);
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * max_mode + 1));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int k = -max_mode; k <= max_mode; ++k) {
    const int idx = ((k % n) + n) % n;
    coeffs[static_cast<std::size_t>(k + max_mode)] = bins[static_cast<std::size_t>(idx)] * inv_n;
  }
  double linf = 0.0, im_max = 0.0;
  for (const auto& v : g.values) {
    linf = std::max(linf, std::abs(v));
    im_max = std::max(im_max, std::abs(v.imag()));
  }
  const bool real_flagged = im_max <= 1e-10 * (1.0 + linf);
  return SpectralField(SpectralField::unchecked_t{}, g.period, max_mode, std::move(coeffs),
                       real_flagged);
}

SpectralField project(const SpectralField& f, int n) {
  if (n < 0) throw std::invalid_argument("project: cutoff must be >= 0");
  const int m_out = std::min(f.max_mode(), n);
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m_out + 1));
  for (int k = -m_out; k <= m_out; ++k)
    coeffs[static_cast<std::size_t>(k + m_out)] = f.coeff(k);
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m_out, std::move(coeffs),
                       f.is_real());
}

SpectralField semigroup(const SpectralField& f, double t) {
  const int m = f.max_mode();
  std::vector<cplx> coeffs(f.coeffs());
  for (int k = -m; k <= m; ++k) {
    const double kap = f.wavenumber(k);
    coeffs[static_cast<std::size_t>(k + m)] *= std::polar(1.0, t * kap * kap * kap);
  }
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs), f.is_real());
}

SpectralField derivative(const SpectralField& f) {
  const int m = f.max_mode();
  std::vector<cplx> coeffs(f.coeffs());
  for (int k = -m; k <= m; ++k)
    coeffs[static_cast<std::size_t>(k + m)] *= cplx(0.0, f.wavenumber(k));
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs), f.is_real());
}

bool has_zero_mean(const SpectralField& f) {
  return std::abs(f.coeff(0)) <= 1e-12 * (1.0 + f.l2_norm());
}

SpectralField antiderivative(const SpectralField& f) {
  if (!has_zero_mean(f))
    throw std::domain_error("antiderivative: field has nonzero mean; the scheme requires "
                            "zero-mean data (see zero_mean_split)");
  const int m = f.max_mode();
  std::vector<cplx> coeffs(f.coeffs());
  coeffs[static_cast<std::size_t>(m)] = cplx(0.0, 0.0);
  for (int k = -m; k <= m; ++k) {
    if (k == 0) continue;
    coeffs[static_cast<std::size_t>(k + m)] /= cplx(0.0, f.wavenumber(k));
  }
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs), f.is_real());
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  if (f.period() != g.period())
    throw std::invalid_argument("multiply: fields live on different periods");
  const int m_out = f.max_mode() + g.max_mode();
  const int n = fft::padded_size(m_out);
  GridSamples fs = synthesize(f, n);
  std::vector<cplx> prod(static_cast<std::size_t>(n));
  if (&f == &g) {
    for (int j = 0; j < n; ++j) {
      const cplx v = fs.values[static_cast<std::size_t>(j)];
      prod[static_cast<std::size_t>(j)] = v * v;
    }
  } else {
    GridSamples gs = synthesize(g, n);
    for (int j = 0; j < n; ++j)
      prod[static_cast<std::size_t>(j)] =
          fs.values[static_cast<std::size_t>(j)] * gs.values[static_cast<std::size_t>(j)];
  }
  std::vector<cplx> bins(static_cast<std::size_t>(n));
  fft::transform(prod.data(), bins.data(), n, /*forward=*/true);
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m_out + 1));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int k = -m_out; k <= m_out; ++k) {
    const int idx = ((k % n) + n) % n;
    coeffs[static_cast<std::size_t>(k + m_out)] = bins[static_cast<std::size_t>(idx)] * inv_n;
  }
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m_out, std::move(coeffs),
                       f.is_real() && g.is_real());
}

SpectralField multiply_direct(const SpectralField& f, const SpectralField& g) {
  if (f.period() != g.period())
    throw std::invalid_argument("multiply_direct: fields live on different periods");
  const int mf = f.max_mode(), mg = g.max_mode();
  const int m_out = mf + mg;
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m_out + 1));
  for (int k = -m_out; k <= m_out; ++k) {
    cplx acc(0.0, 0.0);
    const int lo = std::max(-mf, k - mg);
    const int hi = std::min(mf, k + mg);
    for (int k1 = lo; k1 <= hi; ++k1) acc += f.coeff(k1) * g.coeff(k - k1);
    coeffs[static_cast<std::size_t>(k + m_out)] = acc;
  }
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m_out, std::move(coeffs),
                       f.is_real() && g.is_real());
}

SpectralField translate(const SpectralField& f, double a) {
  const int m = f.max_mode();
  std::vector<cplx> coeffs(f.coeffs());
  for (int k = -m; k <= m; ++k)
    coeffs[static_cast<std::size_t>(k + m)] *= std::polar(1.0, -f.wavenumber(k) * a);
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs), f.is_real());
}

cplx mean(const SpectralField& f) { return f.coeff(0); }

SpectralField extend(const SpectralField& f, int max_mode) {
  if (max_mode < f.max_mode())
    throw std::invalid_argument("extend: target max_mode smaller than stored band");
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * max_mode + 1));
  for (int k = -f.max_mode(); k <= f.max_mode(); ++k)
    coeffs[static_cast<std::size_t>(k + max_mode)] = f.coeff(k);
  return SpectralField(SpectralField::unchecked_t{}, f.period(), max_mode, std::move(coeffs),
                       f.is_real());
}

SpectralField add(const SpectralField& f, const SpectralField& g) {
  if (f.period() != g.period())
    throw std::invalid_argument("add: fields live on different periods");
  const int m = std::max(f.max_mode(), g.max_mode());
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k)
    coeffs[static_cast<std::size_t>(k + m)] = f.coeff(k) + g.coeff(k);
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs),
                       f.is_real() && g.is_real());
}

SpectralField subtract(const SpectralField& f, const SpectralField& g) {
  if (f.period() != g.period())
    throw std::invalid_argument("subtract: fields live on different periods");
  const int m = std::max(f.max_mode(), g.max_mode());
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k)
    coeffs[static_cast<std::size_t>(k + m)] = f.coeff(k) - g.coeff(k);
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs),
                       f.is_real() && g.is_real());
}

SpectralField scale(const SpectralField& f, double a) {
  const int m = f.max_mode();
  std::vector<cplx> coeffs(f.coeffs());
  for (auto& c : coeffs) c *= a;
  return SpectralField(SpectralField::unchecked_t{}, f.period(), m, std::move(coeffs), f.is_real());
}

} // namespace kdv
