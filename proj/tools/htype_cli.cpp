// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C interface.
//
//   htype-cli build    --r 3 --m 4 --out alg.json
//   htype-cli geodesic --alg alg.json --xdot0 1,0,0,0 --theta 0,0,6.28 --samples 101
//   htype-cli connect  --alg alg.json --x 1,0,0,0 --z 0,0,0.5
//   htype-cli figures  --which mu --max 50.27 --points 1601 --out mu.csv
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "htype/htype.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CliError {
  int exit_code;
  std::string message;
};

struct AlgebraDeleter {
  void operator()(htype_algebra* a) const { htype_algebra_free(a); }
};
struct ConnectionDeleter {
  void operator()(htype_connection* c) const { htype_connection_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { htype_string_free(s); }
};
using AlgebraPtr = std::unique_ptr<htype_algebra, AlgebraDeleter>;
using ConnectionPtr = std::unique_ptr<htype_connection, ConnectionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

void check(htype_status st) {
  if (st == HTYPE_OK) return;
  const int code = st == HTYPE_ERR_NUMERICAL || st == HTYPE_ERR_INTERNAL ? kExitNumerical : kExitValidation;
  throw CliError{code, htype_last_error()};
}

std::string fmt_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::vector<double> parse_list(const std::string& text, const char* name) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw CliError{kExitValidation, std::string(name) + ": empty entry"};
    item = item.substr(first, last - first + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v))
      throw CliError{kExitValidation, std::string(name) + ": cannot parse '" + item + "'"};
    out.push_back(v);
  }
  if (out.empty()) throw CliError{kExitValidation, std::string(name) + ": expected a comma-separated list"};
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitValidation, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraPtr load_algebra(const std::string& path) {
  htype_algebra* raw = nullptr;
  check(htype_algebra_from_json(read_file(path).c_str(), &raw));
  return AlgebraPtr(raw);
}

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliError{kExitValidation, "cannot write " + path};
  out << text;
}

void require_length(const std::vector<double>& v, std::size_t n, const char* name) {
  if (v.size() != n)
    throw CliError{kExitValidation, std::string(name) + ": expected " + std::to_string(n) + " entries, got " +
                                        std::to_string(v.size())};
}

// ---- build ---------------------------------------------------------------

struct BuildArgs {
  std::size_t r = 1;
  std::size_t m = 2;
  std::string out;
};

void run_build(const BuildArgs& a) {
  htype_algebra* raw = nullptr;
  check(htype_algebra_build(a.r, a.m, &raw));
  AlgebraPtr alg(raw);
  double violation = 0.0;
  check(htype_algebra_verify(alg.get(), &violation));
  if (violation != 0.0) throw CliError{kExitNumerical, "constructed algebra failed verification"};
  char* json = nullptr;
  check(htype_algebra_to_json(alg.get(), &json));
  StringPtr text(json);
  emit(a.out, std::string(text.get()) + "\n");
}

// ---- geodesic ------------------------------------------------------------

struct GeodesicArgs {
  std::string alg;
  std::string xdot0;
  std::string theta;
  int samples = 101;
  double horizon = 1.0;
  std::string format = "csv";
  std::string out;
};

void run_geodesic(const GeodesicArgs& a) {
  AlgebraPtr alg = load_algebra(a.alg);
  std::size_t r = 0;
  std::size_t m = 0;
  check(htype_algebra_dims(alg.get(), &r, &m));
  const auto xdot0 = parse_list(a.xdot0, "--xdot0");
  const auto theta = parse_list(a.theta, "--theta");
  require_length(xdot0, m, "--xdot0");
  require_length(theta, r, "--theta");

  std::vector<double> x(m), z(r), vx(m);
  std::ostringstream csv;
  nlohmann::json rows = nlohmann::json::array();
  csv << "t";
  for (std::size_t i = 1; i <= m; ++i) csv << ",x_" << i;
  for (std::size_t k = 1; k <= r; ++k) csv << ",z_" << k;
  csv << ",speed\n";

  for (int i = 0; i < a.samples; ++i) {
    const double t = i + 1 == a.samples ? a.horizon : a.horizon * i / (a.samples - 1);
    check(htype_geodesic_eval(alg.get(), xdot0.data(), theta.data(), t, x.data(), z.data(), vx.data()));
    double speed2 = 0.0;
    for (double v : vx) speed2 += v * v;
    const double speed = std::sqrt(speed2);
    csv << fmt_double(t);
    for (double v : x) csv << ',' << fmt_double(v);
    for (double v : z) csv << ',' << fmt_double(v);
    csv << ',' << fmt_double(speed) << '\n';
    rows.push_back({{"t", t}, {"x", x}, {"z", z}, {"speed", speed}});
  }

  if (a.format == "csv") {
    emit(a.out, csv.str());
  } else {
    nlohmann::json doc = {{"spec", {{"xdot0", xdot0}, {"theta", theta}, {"horizon", a.horizon}}},
                          {"samples", std::move(rows)}};
    emit(a.out, doc.dump() + "\n");
  }
}

// ---- connect -------------------------------------------------------------

struct ConnectArgs {
  std::string alg;
  std::string x;
  std::string z;
  double alpha_cap = 8.0 * std::numbers::pi;
  std::string out;
};

void run_connect(const ConnectArgs& a) {
  AlgebraPtr alg = load_algebra(a.alg);
  std::size_t r = 0;
  std::size_t m = 0;
  check(htype_algebra_dims(alg.get(), &r, &m));
  const auto x = parse_list(a.x, "--x");
  const auto z = parse_list(a.z, "--z");
  require_length(x, m, "--x");
  require_length(z, r, "--z");

  htype_connection* raw = nullptr;
  check(htype_connect(alg.get(), x.data(), z.data(), a.alpha_cap, &raw));
  ConnectionPtr conn(raw);
  char* json = nullptr;
  check(htype_connection_to_json(conn.get(), &json));
  StringPtr text(json);

  // Round-trip through the validating parser before anything is written.
  htype_connection* reparsed = nullptr;
  check(htype_connection_from_json(alg.get(), text.get(), &reparsed));
  ConnectionPtr guard(reparsed);
  emit(a.out, std::string(text.get()) + "\n");
}

// ---- figures -------------------------------------------------------------

struct FigureArgs {
  std::string which;
  double max = 0.0;
  int points = 1001;
  std::string out;
};

constexpr double kPoleBand = 1e-9;

void run_figures(const FigureArgs& a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> grid;
  for (int i = 0; i < a.points; ++i)
    grid.push_back(i + 1 == a.points ? a.max : a.max * i / (a.points - 1));

  // Marked abscissae from the reference plots: the poles 2n pi of mu(|theta|/2)
  // and the crossing nu(2 pi) = pi.
  std::vector<double> marks;
  if (a.which == "mu") {
    for (int n = 1; n * two_pi <= a.max; ++n) marks.push_back(n * two_pi);
  } else if (a.which == "nu") {
    if (two_pi <= a.max) marks.push_back(two_pi);
  }
  for (double mk : marks) {
    const bool present = std::any_of(grid.begin(), grid.end(), [mk](double g) { return std::abs(g - mk) <= 1e-12; });
    if (!present) grid.push_back(mk);
  }
  std::sort(grid.begin(), grid.end());

  std::ostringstream csv;
  if (a.which == "mu") csv << "theta,mu_half_theta\n";
  else if (a.which == "nu") csv << "alpha,nu\n";
  else csv << "alpha,sinc_2alpha\n";

  for (double g : grid) {
    csv << fmt_double(g) << ',';
    double v = 0.0;
    if (a.which == "mu") {
      const double n = std::round(g / two_pi);
      if (n >= 1 && std::abs(g - n * two_pi) <= kPoleBand) {
        csv << '\n';
        continue;
      }
      const htype_status st = htype_mu(0.5 * g, &v);
      if (st == HTYPE_ERR_DOMAIN) {
        csv << '\n';
        continue;
      }
      check(st);
    } else if (a.which == "nu") {
      check(htype_nu(g, &v));
    } else {
      check(htype_sinc(2.0 * g, &v));
    }
    csv << fmt_double(v) << '\n';
  }
  emit(a.out, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H-type group geodesics, distances and cut-locus classification"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Construct an algebra and write it as JSON");
  build_cmd->add_option("--r", build.r, "Center dimension")->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--m", build.m, "Horizontal dimension")->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--out", build.out, "Output path (default stdout)");

  GeodesicArgs geo;
  auto* geo_cmd = app.add_subcommand("geodesic", "Sample a geodesic from the origin");
  geo_cmd->add_option("--alg", geo.alg, "Algebra JSON")->required();
  geo_cmd->add_option("--xdot0", geo.xdot0, "Initial horizontal velocity, comma-separated")->required();
  geo_cmd->add_option("--theta", geo.theta, "Covector, comma-separated")->required();
  geo_cmd->add_option("--samples", geo.samples, "Number of uniform samples (>= 2)")->check(CLI::Range(2, 10000000));
  geo_cmd->add_option("--horizon", geo.horizon, "Final time")->check(CLI::NonNegativeNumber);
  geo_cmd->add_option("--format", geo.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  geo_cmd->add_option("--out", geo.out, "Output path (default stdout)");

  ConnectArgs con;
  auto* con_cmd = app.add_subcommand("connect", "Find all geodesics from the origin to a target");
  con_cmd->add_option("--alg", con.alg, "Algebra JSON")->required();
  con_cmd->add_option("--x", con.x, "Horizontal part, comma-separated")->required();
  con_cmd->add_option("--z", con.z, "Vertical part, comma-separated")->required();
  con_cmd->add_option("--alpha-cap", con.alpha_cap, "Search bound for |theta|/2")->check(CLI::PositiveNumber);
  con_cmd->add_option("--out", con.out, "Output path (default stdout)");

  FigureArgs fig;
  auto* fig_cmd = app.add_subcommand("figures", "Emit mu, nu or sinc profile data as CSV");
  fig_cmd->add_option("--which", fig.which, "mu | nu | sinc")->required()->check(CLI::IsMember({"mu", "nu", "sinc"}));
  fig_cmd->add_option("--max", fig.max, "Upper end of the abscissa range")->required()->check(CLI::PositiveNumber);
  fig_cmd->add_option("--points", fig.points, "Grid points (>= 2)")->check(CLI::Range(2, 100000000));
  fig_cmd->add_option("--out", fig.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*build_cmd) run_build(build);
    else if (*geo_cmd) run_geodesic(geo);
    else if (*con_cmd) run_connect(con);
    else if (*fig_cmd) run_figures(fig);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitOk;
}
