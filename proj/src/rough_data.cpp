#include "kdvlri/rough_data.hpp"

#include "kdvlri/sobolev.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kdv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based draw in [0,1), keyed by (seed, k).
double unit_draw(std::uint64_t seed, int k) {
  const std::uint64_t h = splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(k));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

cplx phase_factor(const RoughDataSpec& spec, int k) {
  switch (spec.phase) {
    case Phase::unit:
      return {1.0, 0.0};
    case Phase::alternating_cos:
      // cos(k*pi/2) evaluated exactly: 1, 0, -1, 0 for k = 0,1,2,3 mod 4.
      switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 0.0};
      }
    case Phase::random_unit: {
      const int ka = std::abs(k);
      const double theta = 2.0 * std::numbers::pi * unit_draw(spec.seed, ka);
      const cplx q = std::polar(1.0, theta);
      return k > 0 ? q : std::conj(q);
    }
  }
  throw std::logic_error("unreachable phase");
}

void validate(const RoughDataSpec& spec) {
  if (!(spec.s > -0.5) || !(spec.s <= 0.0))
    throw std::domain_error("RoughDataSpec: s must lie in (-1/2, 0]");
  if (!std::isfinite(spec.amplitude)) throw std::invalid_argument("RoughDataSpec: bad amplitude");
  if (!(spec.decay_offset > 0.5))
    throw std::invalid_argument("RoughDataSpec: decay_offset must exceed 1/2 for H^s membership");
  if (spec.max_mode < 1) throw std::invalid_argument("RoughDataSpec: max_mode must be >= 1");
}

} // namespace

std::string to_string(Phase p) {
  switch (p) {
    case Phase::unit: return "unit";
    case Phase::alternating_cos: return "alternating_cos";
    case Phase::random_unit: return "random_unit";
  }
  throw std::logic_error("unreachable phase");
}

Phase phase_from_string(const std::string& name) {
  if (name == "unit") return Phase::unit;
  if (name == "alternating_cos") return Phase::alternating_cos;
  if (name == "random_unit") return Phase::random_unit;
  throw std::invalid_argument("unknown phase choice: " + name);
}

std::string RoughDataSpec::to_json() const {
  nlohmann::json j;
  j["s"] = s;
  j["amplitude"] = amplitude;
  j["decay_offset"] = decay_offset;
  j["phase"] = to_string(phase);
  j["seed"] = seed;
  j["max_mode"] = max_mode;
  return j.dump();
}

RoughDataSpec RoughDataSpec::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RoughDataSpec spec;
  spec.s = j.at("s").get<double>();
  spec.amplitude = j.at("amplitude").get<double>();
  spec.decay_offset = j.at("decay_offset").get<double>();
  spec.phase = phase_from_string(j.at("phase").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.max_mode = j.at("max_mode").get<int>();
  return spec;
}

SpectralField generate(const RoughDataSpec& spec, double period) {
  validate(spec);
  const int m = spec.max_mode;
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m + 1));
  for (int k = 1; k <= m; ++k) {
    const double decay = std::pow(static_cast<double>(k), -spec.decay_offset - spec.s);
    const cplx c = spec.amplitude * decay * phase_factor(spec, k);
    coeffs[static_cast<std::size_t>(k + m)] = c;
    coeffs[static_cast<std::size_t>(-k + m)] = std::conj(c);
  }
  return SpectralField(period, m, std::move(coeffs), /*real_flagged=*/true);
}

std::vector<std::pair<double, double>> membership_profile(const SpectralField& f,
                                                          const std::vector<double>& s_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) out.emplace_back(s, h_norm(f, s));
  return out;
}

} // namespace kdv
