#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdyn/backward.hpp"
#include "qdyn/dynamics.hpp"
#include "qdyn/io.hpp"
#include "qdyn/misiurewicz.hpp"
#include "qdyn/similarity.hpp"
#include "qdyn/skinning.hpp"
#include "qdyn/surgery.hpp"

namespace {

using qdyn::BigComplex;
using qdyn::BigFloat;
using qdyn::Err;
using qdyn::Error;
using qdyn::Prec;
using json = qdyn::io::json;

struct Common {
  long precisionBits = 128;
  double tolerance = 0.0; // 0: module default
  std::string out;
  std::string format = "json";
  std::uint64_t seedState = 1;
  int threads = 1;
  bool binary = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--precision-bits", c.precisionBits, "Working precision in bits (>= 53)");
  cmd->add_option("--tolerance", c.tolerance, "Override the module's convergence tolerance");
  cmd->add_option("--out", c.out, "Output file path");
  cmd->add_option("--format", c.format, "Output format: csv|json|pgm")
      ->check(CLI::IsMember({"csv", "json", "pgm"}));
  cmd->add_option("--seed-state", c.seedState, "64-bit RNG state for sampling walks");
  cmd->add_option("--threads", c.threads, "Worker threads (default 1, reproducible)");
  cmd->add_flag("--binary", c.binary, "Write PGM as binary P5 instead of ASCII P2");
}

void check_common(const Common& c) {
  if (c.precisionBits < 53) qdyn::fail(Err::UsageError, "precision-bits must be >= 53");
  if (c.tolerance < 0.0) qdyn::fail(Err::UsageError, "tolerance must be > 0");
  qdyn::set_threads(c.threads);
}

BigFloat tol_or_default(const Common& c, Prec P) {
  if (c.tolerance > 0.0) return BigFloat::from_double(c.tolerance, P);
  return BigFloat::pow2(-(P / 2), P);
}

// Complex literals: "R", "R,I", "R+Ii", "R-Ii", "Ii".
BigComplex parse_complex(const std::string& s, Prec P) {
  if (s.empty()) qdyn::fail(Err::UsageError, "empty complex literal");
  auto comma = s.find(',');
  if (comma != std::string::npos) {
    return BigComplex(BigFloat::from_string(s.substr(0, comma), P),
                      BigFloat::from_string(s.substr(comma + 1), P));
  }
  if (s.back() == 'i' || s.back() == 'I') {
    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t pos = body.size(); pos-- > 1;) {
      char ch = body[pos];
      if ((ch == '+' || ch == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
        split = pos;
        break;
      }
    }
    if (split == std::string::npos) {
      std::string im = body.empty() ? std::string("1") : body;
      if (im == "+" || im == "-") im += "1";
      return BigComplex(BigFloat::from_long(0, P), BigFloat::from_string(im, P));
    }
    std::string re = body.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+" || im == "-") im += "1";
    return BigComplex(BigFloat::from_string(re, P), BigFloat::from_string(im, P));
  }
  return BigComplex(BigFloat::from_string(s, P), BigFloat::from_long(0, P));
}

std::pair<long, long> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos)
    qdyn::fail(Err::UsageError, "range must have the form A..B, got '" + s + "'");
  long a = 0, b = 0;
  try {
    size_t used = 0;
    a = std::stol(s.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("trail");
    std::string tail = s.substr(dots + 2);
    b = std::stol(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("trail");
  } catch (const std::exception&) {
    qdyn::fail(Err::UsageError, "range must have the form A..B, got '" + s + "'");
  }
  if (a > b) qdyn::fail(Err::UsageError, "empty range " + s + " (need A <= B)");
  return {a, b};
}

json meta_block(const Common& c, Prec P) {
  json m;
  m["tool"] = "qdyn";
  m["precisionBits"] = P;
  m["digits"] = qdyn::decimal_digits(P);
  m["seedState"] = c.seedState;
  m["threads"] = c.threads;
  return m;
}

void emit(const Common& c, const json& record, const std::vector<std::string>& csvHeader,
          const std::vector<std::vector<std::string>>& csvRows) {
  if (c.out.empty()) return;
  if (c.format == "json") {
    qdyn::io::write_text(c.out, record.dump(2) + "\n");
  } else if (c.format == "csv") {
    qdyn::io::write_csv(c.out, csvHeader, csvRows);
  } else {
    qdyn::fail(Err::UsageError, "format pgm is only available for the render subcommand");
  }
}

std::string cx_str(const BigComplex& z, long digits) {
  return z.re.str(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).str(digits) + "i";
}

// Shared flags for the pipelines that start from a Misiurewicz parameter.
struct MisFlags {
  long k = 1;
  long p = 1;
  std::string seed;
};

void add_mis(CLI::App* cmd, MisFlags& mf) {
  cmd->add_option("--k", mf.k, "Preperiod of the critical point")->required();
  cmd->add_option("--p", mf.p, "Period of the landing cycle")->required();
  cmd->add_option("--seed", mf.seed, "Newton seed, e.g. '-1.9' or '0.4,1.2'")->required();
}

qdyn::MisiurewiczData solve_from(const MisFlags& mf, const Common& cm) {
  return qdyn::solve_misiurewicz(mf.k, mf.p, parse_complex(mf.seed, cm.precisionBits),
                                 cm.precisionBits);
}

int run(int argc, char** argv) {
  CLI::App app{"quadratic-family dynamics toolkit: Misiurewicz points, backward orbits, "
               "skinning fixed points, surgery sequences, self-similarity reports"};
  app.set_help_flag("--help", "Print help"); // long-form flags only
  app.require_subcommand(1);

  // --- misiurewicz ---------------------------------------------------------
  auto* cMis = app.add_subcommand("misiurewicz", "Solve for a Misiurewicz parameter (k, p)");
  static Common misCm;
  static MisFlags misMf;
  add_common(cMis, misCm);
  add_mis(cMis, misMf);
  cMis->callback([]() {
    check_common(misCm);
    Prec P = misCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto data = solve_from(misMf, misCm);
    std::cout << "misiurewicz: c = " << cx_str(data.c, digits) << "  mu = "
              << cx_str(data.mu, digits) << "  nu = " << cx_str(data.nu, digits)
              << "  (k=" << data.k << " p=" << data.p << " m=" << data.m
              << " residual=" << data.residual.str(3) << ")\n";
    json rec;
    rec["inputs"] = {{"k", misMf.k}, {"p", misMf.p}, {"seed", misMf.seed}};
    json outs;
    outs["c"] = qdyn::io::cx(data.c, digits);
    outs["mu"] = qdyn::io::cx(data.mu, digits);
    outs["nu"] = qdyn::io::cx(data.nu, digits);
    outs["m"] = data.m;
    outs["residual"] = data.residual.str(6);
    outs["record"] = qdyn::io::misiurewicz_to_json(data);
    rec["outputs"] = outs;
    rec["meta"] = meta_block(misCm, P);
    emit(misCm, rec, {"quantity", "re", "im"},
         {{"c", data.c.re.str(digits), data.c.im.str(digits)},
          {"mu", data.mu.re.str(digits), data.mu.im.str(digits)},
          {"nu", data.nu.re.str(digits), data.nu.im.str(digits)}});
  });

  // --- nu ------------------------------------------------------------------
  auto* cNu = app.add_subcommand("nu", "Rigidity derivative nu with a finite-difference check");
  static Common nuCm;
  static MisFlags nuMf;
  add_common(cNu, nuCm);
  add_mis(cNu, nuMf);
  cNu->callback([]() {
    check_common(nuCm);
    Prec P = nuCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto data = solve_from(nuMf, nuCm);
    BigComplex cd = qdyn::nu_central_difference(data, P);
    BigFloat gap = dist(data.nu, cd);
    std::cout << "nu: " << cx_str(data.nu, digits) << "  central-difference "
              << cx_str(cd, 12) << "  |gap| = " << gap.str(3) << "\n";
    json rec;
    rec["inputs"] = {{"k", nuMf.k}, {"p", nuMf.p}, {"seed", nuMf.seed}};
    rec["outputs"] = {{"nu", qdyn::io::cx(data.nu, digits)},
                      {"nu_central_difference", qdyn::io::cx(cd, digits)},
                      {"gap", gap.str(6)}};
    rec["meta"] = meta_block(nuCm, P);
    emit(nuCm, rec, {"quantity", "re", "im"},
         {{"nu", data.nu.re.str(digits), data.nu.im.str(digits)},
          {"nu_central_difference", cd.re.str(digits), cd.im.str(digits)}});
  });

  // --- backward ------------------------------------------------------------
  auto* cBwd = app.add_subcommand("backward", "Backward orbit toward the landing cycle");
  static Common bwdCm;
  static MisFlags bwdMf;
  static long bwdN = 16;
  static long bwdPhase = 0;
  static std::string bwdPolicy = "cycle";
  add_common(cBwd, bwdCm);
  add_mis(cBwd, bwdMf);
  cBwd->add_option("--n", bwdN, "Number of backward steps");
  cBwd->add_option("--phase", bwdPhase, "Cycle-target phase offset");
  cBwd->add_option("--policy", bwdPolicy, "Branch policy: cycle|principal")
      ->check(CLI::IsMember({"cycle", "principal"}));
  cBwd->callback([]() {
    check_common(bwdCm);
    Prec P = bwdCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto data = solve_from(bwdMf, bwdCm);
    qdyn::BranchPolicy pol = bwdPolicy == "cycle" ? qdyn::BranchPolicy::cycle(bwdPhase)
                                                  : qdyn::BranchPolicy::principal();
    auto orbit = qdyn::backward_orbit(data, BigComplex(P), pol, bwdN, P);
    std::cout << "backward: N = " << bwdN << "  tracked cycle point index = "
              << orbit.track_index << "  m_track = " << orbit.m_track
              << "  scaled terms = " << orbit.scaled.size() << "\n";
    json rec;
    rec["inputs"] = {{"k", bwdMf.k}, {"p", bwdMf.p},     {"seed", bwdMf.seed},
                     {"n", bwdN},    {"phase", bwdPhase}, {"policy", bwdPolicy}};
    json pts = json::array();
    std::vector<std::vector<std::string>> rows;
    for (size_t j = 0; j < orbit.points.size(); ++j) {
      json row;
      row["j"] = j;
      row["q"] = qdyn::io::cx(orbit.points[j], digits);
      std::vector<std::string> cells{std::to_string(j), orbit.points[j].re.str(digits),
                                     orbit.points[j].im.str(digits), "", ""};
      if (j > 0 && data.p > 0 && j % static_cast<size_t>(data.p) == 0) {
        size_t kk = j / static_cast<size_t>(data.p);
        if (kk < orbit.scaled.size() + 1 && kk >= 1) {
          const auto& s = orbit.scaled[kk - 1];
          row["scaled"] = qdyn::io::cx(s, digits);
          cells[3] = s.re.str(digits);
          cells[4] = s.im.str(digits);
        }
      }
      pts.push_back(row);
      rows.push_back(cells);
    }
    rec["outputs"] = {{"points", pts},
                      {"tracked", qdyn::io::cx(orbit.tracked, digits)},
                      {"track_index", orbit.track_index},
                      {"m_track", orbit.m_track}};
    rec["meta"] = meta_block(bwdCm, P);
    emit(bwdCm, rec, {"j", "q_re", "q_im", "s_re", "s_im"}, rows);
  });

  // --- limit-x ---------------------------------------------------------------
  auto* cLx = app.add_subcommand("limit-x", "Scaled-tail limit x of the backward orbit");
  static Common lxCm;
  static MisFlags lxMf;
  static long lxN = 16;
  static long lxPhase = 0;
  add_common(cLx, lxCm);
  add_mis(cLx, lxMf);
  cLx->add_option("--n", lxN, "Number of backward steps");
  cLx->add_option("--phase", lxPhase, "Cycle-target phase offset");
  cLx->callback([]() {
    check_common(lxCm);
    Prec P = lxCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto data = solve_from(lxMf, lxCm);
    auto orbit = qdyn::backward_orbit(data, BigComplex(P), qdyn::BranchPolicy::cycle(lxPhase),
                                      lxN, P);
    BigFloat err(P);
    BigComplex x = qdyn::limit_x(orbit, &err);
    BigComplex nuT = qdyn::nu_at_tracked(orbit, P);
    std::cout << "limit-x: x = " << cx_str(x, digits) << "  error <= " << err.str(3)
              << "  (tracked index " << orbit.track_index << ", m_track " << orbit.m_track
              << ")\n";
    json rec;
    rec["inputs"] = {{"k", lxMf.k}, {"p", lxMf.p}, {"seed", lxMf.seed}, {"n", lxN},
                     {"phase", lxPhase}};
    rec["outputs"] = {{"x", qdyn::io::cx(x, digits)},
                      {"error", err.str(6)},
                      {"nu_tracked", qdyn::io::cx(nuT, digits)},
                      {"track_index", orbit.track_index},
                      {"m_track", orbit.m_track}};
    rec["meta"] = meta_block(lxCm, P);
    emit(lxCm, rec, {"quantity", "re", "im"},
         {{"x", x.re.str(digits), x.im.str(digits)},
          {"nu_tracked", nuT.re.str(digits), nuT.im.str(digits)}});
  });

  // --- skinning-table ---------------------------------------------------------
  auto* cSkt = app.add_subcommand("skinning-table", "Fixed points v_n of the skinning map");
  static Common sktCm;
  static std::string sktRange = "3..9";
  add_common(cSkt, sktCm);
  cSkt->add_option("--n", sktRange, "Range of marked-point counts, e.g. 3..9");
  cSkt->callback([]() {
    check_common(sktCm);
    Prec P = sktCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto [nMin, nMax] = parse_range(sktRange);
    if (nMin < 3) qdyn::fail(Err::UsageError, "skinning-table requires n >= 3");
    auto rows = qdyn::v_table(nMin, nMax, P, tol_or_default(sktCm, P));
    std::cout << "skinning-table: n = " << nMin << ".." << nMax << "  v_" << nMax << " = "
              << rows.back().v.str(digits) << "\n";
    json rec;
    rec["inputs"] = {{"n", sktRange}};
    json tab = json::array();
    std::vector<std::vector<std::string>> csv;
    for (const auto& r : rows) {
      tab.push_back({{"n", r.n}, {"v", r.v.str(digits)}, {"c", r.c.str(digits)}});
      csv.push_back({std::to_string(r.n), r.v.str(digits), r.c.str(digits)});
    }
    rec["outputs"] = {{"table", tab}};
    rec["meta"] = meta_block(sktCm, P);
    if (sktCm.out.empty()) {
      for (const auto& row : csv) std::cout << row[0] << "," << row[1] << "," << row[2] << "\n";
    }
    emit(sktCm, rec, {"n", "v", "c"}, csv);
  });

  // --- skinning-limit ----------------------------------------------------------
  auto* cSkl = app.add_subcommand("skinning-limit", "Extrapolated limit of (v_n + sqrt(2))*4^n");
  static Common sklCm;
  static long sklNMax = 14;
  add_common(cSkl, sklCm);
  cSkl->add_option("--n-max", sklNMax, "Deepest table index used for the series");
  cSkl->callback([]() {
    check_common(sklCm);
    Prec P = sklCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto series = qdyn::limit_series(sklNMax, P);
    std::cout << "skinning-limit: limit = " << series.limit.str(digits) << "  error <= "
              << series.error.str(3) << "  terms = " << series.s.size() << "\n";
    json rec;
    rec["inputs"] = {{"n_max", sklNMax}};
    json terms = json::array();
    std::vector<std::vector<std::string>> csv;
    for (size_t i = 0; i < series.s.size(); ++i) {
      long n = series.n_first + static_cast<long>(i);
      terms.push_back({{"n", n}, {"s", series.s[i].str(digits)}});
      csv.push_back({std::to_string(n), series.s[i].str(digits)});
    }
    rec["outputs"] = {{"series", terms}, {"limit", series.limit.str(digits)},
                      {"error", series.error.str(6)}};
    rec["meta"] = meta_block(sklCm, P);
    emit(sklCm, rec, {"n", "s"}, csv);
  });

  // --- surgery -----------------------------------------------------------------
  auto* cSur = app.add_subcommand("surgery", "Newton surgery sequence c_n -> c");
  static Common surCm;
  static MisFlags surMf;
  static long surFrom = 1;
  static long surTo = 10;
  static long surPhase = 0;
  add_common(cSur, surCm);
  add_mis(cSur, surMf);
  cSur->add_option("--n-from", surFrom, "First entry index");
  cSur->add_option("--n-to", surTo, "Last entry index");
  cSur->add_option("--phase", surPhase, "Cycle-target phase offset for the backward orbit");
  cSur->callback([]() {
    check_common(surCm);
    Prec P = surCm.precisionBits;
    long digits = qdyn::decimal_digits(P);
    auto data = solve_from(surMf, surCm);
    auto orbit = qdyn::backward_orbit(data, BigComplex(P), qdyn::BranchPolicy::cycle(surPhase),
                                      surTo, P);
    auto seq = qdyn::build_sequence(data, orbit, surFrom, surTo, P);
    std::cout << "surgery: entries = " << seq.entries.size() << "  x estimate = "
              << cx_str(seq.xEstimate, digits) << "  x error <= " << seq.xError.str(3) << "\n";
    json rec;
    rec["inputs"] = {{"k", surMf.k},     {"p", surMf.p},   {"seed", surMf.seed},
                     {"n_from", surFrom}, {"n_to", surTo},  {"phase", surPhase}};
    json entries = json::array();
    std::vector<std::vector<std::string>> csv;
    for (const auto& e : seq.entries) {
      entries.push_back({{"n", e.n},
                         {"c", qdyn::io::cx(e.c_n, digits)},
                         {"residual", e.residual.str(6)},
                         {"t", qdyn::io::cx(e.t_n, digits)}});
      csv.push_back({std::to_string(e.n), e.c_n.re.str(digits), e.c_n.im.str(digits),
                     e.residual.str(6), e.t_n.re.str(digits), e.t_n.im.str(digits)});
    }
    rec["outputs"] = {{"entries", entries},
                      {"x_estimate", qdyn::io::cx(seq.xEstimate, digits)},
                      {"x_error", seq.xError.str(6)}};
    rec["meta"] = meta_block(surCm, P);
    emit(surCm, rec, {"n", "c_re", "c_im", "residual", "t_re", "t_im"}, csv);
  });

  // --- tan-lei -------------------------------------------------------------------
  auto* cTl = app.add_subcommand("tan-lei", "Quantitative self-similarity report");
  static Common tlCm;
  static MisFlags tlMf;
  static std::string tlRange = "4..7";
  static double tlH = 0.0025;
  static long tlDepth = 13;
  static long tlMaxIter = 0;
  add_common(cTl, tlCm);
  add_mis(cTl, tlMf);
  cTl->add_option("--n-range", tlRange, "Zoom depth range, e.g. 4..7");
  cTl->add_option("--h", tlH, "Boundary grid step relative to the window radius");
  cTl->add_option("--depth", tlDepth, "Julia walk sample size exponent (2^depth points)");
  cTl->add_option("--max-iter", tlMaxIter, "Escape-time iteration cap (0: automatic)");
  cTl->callback([]() {
    check_common(tlCm);
    Prec P = tlCm.precisionBits;
    auto data = solve_from(tlMf, tlCm);
    qdyn::TanLeiParams prm;
    auto [nFrom, nTo] = parse_range(tlRange);
    prm.n_from = nFrom;
    prm.n_to = nTo;
    prm.h = tlH;
    prm.depth = tlDepth;
    prm.maxIter = tlMaxIter;
    prm.seedState = tlCm.seedState;
    auto rep = qdyn::tan_lei_report(data, prm, P);
    std::cout << "tan-lei: cross = " << rep.cross << "  resJ = " << rep.resJ << "  resM = "
              << rep.resM << "  (J zoom points " << rep.juliaCount << ", boundary cells "
              << rep.boundaryCount << ")\n";
    json rec;
    rec["inputs"] = {{"k", tlMf.k},     {"p", tlMf.p},     {"seed", tlMf.seed},
                     {"n_range", tlRange}, {"h", tlH},     {"depth", tlDepth},
                     {"max_iter", tlMaxIter}, {"seed_state", tlCm.seedState}};
    json sj = json::array();
    json sm = json::array();
    std::vector<std::vector<std::string>> csv;
    for (size_t i = 0; i < rep.seriesJ.size(); ++i) {
      sj.push_back({{"n", rep.seriesJ[i].first}, {"d", rep.seriesJ[i].second}});
      sm.push_back({{"n", rep.seriesM[i].first}, {"d", rep.seriesM[i].second}});
      csv.push_back({std::to_string(rep.seriesJ[i].first), std::to_string(rep.seriesJ[i].second),
                     std::to_string(rep.seriesM[i].second)});
    }
    rec["outputs"] = {{"seriesJ", sj},
                      {"seriesM", sm},
                      {"cross", rep.cross},
                      {"resJ", rep.resJ},
                      {"resM", rep.resM},
                      {"epsJ", rep.epsJ},
                      {"epsM", rep.epsM},
                      {"juliaCount", rep.juliaCount},
                      {"boundaryCount", rep.boundaryCount}};
    rec["meta"] = meta_block(tlCm, P);
    emit(tlCm, rec, {"n", "dJ", "dM"}, csv);
  });

  // --- render ---------------------------------------------------------------------
  auto* cRen = app.add_subcommand("render", "Escape-time PGM image of a parameter window");
  static Common renCm;
  static std::string renCenter = "-0.5,0";
  static double renRadius = 1.6;
  static long renPx = 512;
  static long renMaxIter = 256;
  add_common(cRen, renCm);
  cRen->add_option("--center", renCenter, "Window center, e.g. '-0.5,0'");
  cRen->add_option("--radius", renRadius, "Half-width of the square window");
  cRen->add_option("--px", renPx, "Image width and height in pixels");
  cRen->add_option("--max-iter", renMaxIter, "Escape-time iteration cap");
  cRen->callback([]() {
    check_common(renCm);
    Prec P = renCm.precisionBits;
    if (renCm.out.empty()) qdyn::fail(Err::UsageError, "render requires --out");
    if (renPx < 8 || renPx > 8192) qdyn::fail(Err::UsageError, "px must lie in [8, 8192]");
    if (renMaxIter < 1) qdyn::fail(Err::UsageError, "max-iter must be >= 1");
    if (!(renRadius > 0.0)) qdyn::fail(Err::UsageError, "radius must be > 0");
    BigComplex center = parse_complex(renCenter, P);
    const double cx0 = center.re.to_double() - renRadius;
    const double cy0 = center.im.to_double() - renRadius;
    const double h = 2.0 * renRadius / static_cast<double>(renPx);
    std::vector<unsigned char> img(static_cast<size_t>(renPx) * static_cast<size_t>(renPx));
    for (long j = 0; j < renPx; ++j) {
      const double ci = cy0 + (static_cast<double>(j) + 0.5) * h;
      for (long i = 0; i < renPx; ++i) {
        const double cr = cx0 + (static_cast<double>(i) + 0.5) * h;
        double zr = 0.0, zi = 0.0;
        long it = 0;
        while (it < renMaxIter) {
          double r2 = zr * zr, i2 = zi * zi;
          if (r2 + i2 > 4.0) break;
          zi = 2.0 * zr * zi + ci;
          zr = r2 - i2 + cr;
          ++it;
        }
        unsigned char v = 0;
        if (it < renMaxIter) v = static_cast<unsigned char>(55 + (200 * it) / renMaxIter);
        // rows written bottom-up so +imaginary points up in the image
        img[static_cast<size_t>(renPx - 1 - j) * renPx + i] = v;
      }
    }
    std::string comment = "window center " + renCenter + " radius " + std::to_string(renRadius) +
                          " px " + std::to_string(renPx) + " maxIter " +
                          std::to_string(renMaxIter) + " precisionBits " + std::to_string(P);
    qdyn::io::write_pgm(renCm.out, renPx, renPx, img, 255, renCm.binary, comment);
    std::cout << "render: wrote " << renCm.out << " (" << renPx << "x" << renPx << ", "
              << (renCm.binary ? "P5" : "P2") << ")\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e); // --help and friends: exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // malformed invocation is a usage error
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n"; // what() is already "ErrName: message"
    return e.code() == Err::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
