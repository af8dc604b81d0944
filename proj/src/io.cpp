#include "qdyn/io.hpp"

#include <fstream>

#include "qdyn/error.hpp"

namespace qdyn {
namespace io {

std::string real_str(const BigFloat& x, long digits) { return x.str(digits); }

json cx(const BigComplex& z, long digits) {
  json j;
  j["re"] = z.re.str(digits);
  j["im"] = z.im.str(digits);
  return j;
}

json cx_exact(const BigComplex& z) {
  json j;
  j["re"] = z.re.str_exact();
  j["im"] = z.im.str_exact();
  return j;
}

json misiurewicz_to_json(const MisiurewiczData& data) {
  json j;
  j["type"] = "misiurewicz";
  j["precision"] = data.precision;
  j["k"] = data.k;
  j["p"] = data.p;
  j["m"] = data.m;
  j["c"] = cx_exact(data.c);
  json orbit = json::array();
  for (const auto& z : data.O) orbit.push_back(cx_exact(z));
  j["O"] = orbit;
  j["mu"] = cx_exact(data.mu);
  j["nu"] = cx_exact(data.nu);
  j["residual"] = data.residual.str_exact();
  return j;
}

namespace {

BigComplex cx_from_json(const json& j, Prec P) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    fail(Err::UsageError, "io: complex value must be an object with re/im strings");
  return BigComplex(BigFloat::from_string(j["re"].get<std::string>(), P),
                    BigFloat::from_string(j["im"].get<std::string>(), P));
}

} // namespace

MisiurewiczData misiurewicz_from_json(const json& j) {
  if (!j.is_object() || j.value("type", "") != std::string("misiurewicz"))
    fail(Err::UsageError, "io: not a misiurewicz record");
  MisiurewiczData d;
  d.precision = j.at("precision").get<long>();
  if (d.precision < 8) fail(Err::UsageError, "io: invalid stored precision");
  d.k = j.at("k").get<long>();
  d.p = j.at("p").get<long>();
  d.m = j.at("m").get<long>();
  d.c = cx_from_json(j.at("c"), d.precision);
  for (const auto& o : j.at("O")) d.O.push_back(cx_from_json(o, d.precision));
  if (static_cast<long>(d.O.size()) != d.p)
    fail(Err::UsageError, "io: stored orbit length disagrees with the period");
  d.mu = cx_from_json(j.at("mu"), d.precision);
  d.nu = cx_from_json(j.at("nu"), d.precision);
  d.residual = BigFloat::from_string(j.at("residual").get<std::string>(), d.precision);
  return d;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::UsageError, "io: cannot open output file " + path);
  out << content;
  if (!out) fail(Err::UsageError, "io: write failed for " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string body;
  auto append_row = [&body](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) body += ',';
      body += cells[i];
    }
    body += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      fail(Err::UsageError, "io: csv row width disagrees with the header");
    append_row(row);
  }
  write_text(path, body);
}

void write_pgm(const std::string& path, long width, long height,
               const std::vector<unsigned char>& pixels, int maxval, bool binary,
               const std::string& comment) {
  if (width < 1 || height < 1 || maxval < 1 || maxval > 255)
    fail(Err::UsageError, "io: invalid pgm geometry");
  if (pixels.size() != static_cast<size_t>(width) * static_cast<size_t>(height))
    fail(Err::UsageError, "io: pgm pixel count disagrees with the geometry");

  std::string head = binary ? "P5\n" : "P2\n";
  if (!comment.empty()) {
    std::string line = "# ";
    for (char ch : comment) {
      if (ch == '\n') {
        head += line + "\n";
        line = "# ";
      } else {
        line += ch;
      }
    }
    head += line + "\n";
  }
  head += std::to_string(width) + " " + std::to_string(height) + "\n";
  head += std::to_string(maxval) + "\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::UsageError, "io: cannot open output file " + path);
  out << head;
  if (binary) {
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
  } else {
    for (long j = 0; j < height; ++j) {
      for (long i = 0; i < width; ++i) {
        if (i) out << ' ';
        out << static_cast<int>(pixels[static_cast<size_t>(j) * width + i]);
      }
      out << '\n';
    }
  }
  if (!out) fail(Err::UsageError, "io: write failed for " + path);
}

} // namespace io
} // namespace qdyn
