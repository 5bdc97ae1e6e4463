#pragma once

#include "kdvlri/spectral_field.hpp"

#include <cstdint>
#include <string>

namespace kdv {

/// 17-significant-digit decimal form; round-trips a double exactly.
std::string format_double(double x);

/// Spectral snapshot: header "k,re,im", one row per stored mode, LF endings.
std::string spectral_csv(const SpectralField& f);

/// Real-space snapshot: header "x,u", samples at x_j = j*L/n. Refuses when
/// the field is not real-valued on the grid.
std::string real_space_csv(const SpectralField& f, int n_points);

/// Parse a snapshot produced by spectral_csv back into a field.
SpectralField parse_spectral_csv(const std::string& text, double period, bool real_flagged);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// FNV-1a 64-bit content hash, used for the run manifest.
std::uint64_t fnv1a64(const std::string& content);

/// Numeric literal in decimal, power ("2^-16") or pi ("pi", "pi/32", "2pi")
/// notation.
double parse_real(const std::string& text);

} // namespace kdv
