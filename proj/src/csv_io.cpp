#include "kdvlri/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kdv {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string spectral_csv(const SpectralField& f) {
  std::string out = "k,re,im\n";
  for (int k = -f.max_mode(); k <= f.max_mode(); ++k) {
    const cplx c = f.coeff(k);
    out += std::to_string(k);
    out += ',';
    out += format_double(c.real());
    out += ',';
    out += format_double(c.imag());
    out += '\n';
  }
  return out;
}

std::string real_space_csv(const SpectralField& f, int n_points) {
  const GridSamples g = synthesize(f, n_points);
  const std::vector<double> u = g.real_values();
  std::string out = "x,u\n";
  for (int j = 0; j < n_points; ++j) {
    const double x = f.period() * static_cast<double>(j) / static_cast<double>(n_points);
    out += format_double(x);
    out += ',';
    out += format_double(u[static_cast<std::size_t>(j)]);
    out += '\n';
  }
  return out;
}

SpectralField parse_spectral_csv(const std::string& text, double period, bool real_flagged) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "k,re,im")
    throw std::invalid_argument("parse_spectral_csv: missing 'k,re,im' header");
  std::vector<std::pair<int, cplx>> entries;
  int max_abs = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int k;
    double re, im;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &k, &re, &im) != 3)
      throw std::invalid_argument("parse_spectral_csv: bad row: " + line);
    entries.emplace_back(k, cplx(re, im));
    max_abs = std::max(max_abs, std::abs(k));
  }
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * max_abs + 1));
  for (const auto& [k, c] : entries) coeffs[static_cast<std::size_t>(k + max_abs)] = c;
  return SpectralField(period, max_abs, std::move(coeffs), real_flagged);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a64(const std::string& content) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

double parse_plain(const std::string& text) {
  std::size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("trailing characters in number: " + text);
  return v;
}

} // namespace

double parse_real(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty numeric value");
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    const double base = parse_real(text.substr(0, caret));
    const double expo = parse_real(text.substr(caret + 1));
    return std::pow(base, expo);
  }
  const auto pi_pos = text.find("pi");
  if (pi_pos != std::string::npos) {
    double factor = 1.0;
    const std::string head = text.substr(0, pi_pos);
    if (!head.empty() && head != "+") factor = (head == "-") ? -1.0 : parse_plain(head);
    double divisor = 1.0;
    std::string tail = text.substr(pi_pos + 2);
    if (!tail.empty()) {
      if (tail[0] != '/') throw std::invalid_argument("malformed pi expression: " + text);
      divisor = parse_plain(tail.substr(1));
    }
    return factor * std::numbers::pi / divisor;
  }
  return parse_plain(text);
}

} // namespace kdv
