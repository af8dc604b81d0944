#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qdyn/misiurewicz.hpp"

namespace qdyn {
namespace io {

using json = nlohmann::ordered_json;

// Decimal rendering with the precision-derived significant digit count
// decimal_digits(P) = ceil(P * log10(2)).
std::string real_str(const BigFloat& x, long digits);

// BigComplex as a JSON object of decimal strings (never binary floats).
json cx(const BigComplex& z, long digits);
// Exact round-trippable rendering (full mantissa).
json cx_exact(const BigComplex& z);

// MisiurewiczData <-> JSON with exact decimal strings, so a reload reproduces
// the stored values bit-for-bit at the stored precision.
json misiurewicz_to_json(const MisiurewiczData& data);
MisiurewiczData misiurewicz_from_json(const json& j);

// File writers. All output uses LF line endings regardless of platform.
void write_text(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// PGM image: P2 (ASCII) by default, P5 with binary=true. `pixels` is
// row-major, `maxval` at most 255, and `comment` is embedded as '#' lines.
void write_pgm(const std::string& path, long width, long height,
               const std::vector<unsigned char>& pixels, int maxval, bool binary,
               const std::string& comment);

} // namespace io
} // namespace qdyn
