#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "xiscope/errors.hpp"
#include "xiscope/report.hpp"

using namespace xiscope;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

PrecisionConfig digits(int d) {
  PrecisionConfig cfg;
  cfg.digits = d;
  return cfg;
}

}  // namespace

TEST_CASE("numbers use 17 significant digits") {
  CHECK(report::num(0.1) == "0.10000000000000001");
  CHECK(report::num(0.0) == "0");
  CHECK(report::num(-0.0) == "0");
  CHECK(report::num(1.0 / 3.0) == "0.33333333333333331");
  CHECK(report::num(-2.5e-300) == "-2.5e-300");
  CHECK(report::num(1.0 / 0.0) == "inf");
}

TEST_CASE("report schema") {
  const scan::SyntheticSource src({0.01, false});
  const auto rep = scan::scan_range(src, {0.2}, 5.5, 7.5, digits(40));
  const auto j = report::to_json(rep);
  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("intervals"));
  REQUIRE(j.contains("checks"));
  REQUIRE(j.contains("failures"));
  REQUIRE(j["intervals"].size() == 1);
  const auto& iv = j["intervals"][0];
  for (const char* key : {"beta", "t_left", "t_right", "u_sign", "v_left", "v_right", "v_inner_zero", "mu",
                          "mu_scaled", "extrema_count", "verdict"}) {
    CAPTURE(key);
    CHECK(iv.contains(key));
  }
  CHECK(iv["verdict"] == "single_peak_ok");
  CHECK(iv["u_sign"] == 1);
  CHECK(std::abs(std::stod(iv["mu"].get<std::string>()) - 0.0300667556190759) < 1e-6);
  CHECK(j["checks"]["min_mu_scaled"]["pass"] == true);
  CHECK(report::render(rep) == report::render(rep));
}

TEST_CASE("atomic write replaces the target and leaves no temp file") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "xiscope_report_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.json";
  report::write_atomic(target.string(), "first\n");
  report::write_atomic(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS_AS(report::write_atomic((dir / "missing" / "x.json").string(), "x"), ResourceError);
  fs::remove_all(dir);
}

TEST_CASE("curve rows") {
  const scan::SyntheticSource src({0.01, false});
  const auto rows = report::sample_curves(src, {0.0, 0.2}, 0.0, 12.0, 25, 2);
  REQUIRE(rows.size() == 50);
  for (std::size_t i = 0; i < 25; ++i) {
    const auto& r0 = rows[i];
    const auto& r2 = rows[25 + i];
    CHECK(r0.beta == 0.0);
    CHECK(r0.v_scaled == 0.0);
    CHECK(r0.t == r2.t);
    // u(t, beta) - u(t, 0) = (cosh beta - 1) cos t: the parallel shift of the model.
    CHECK(std::abs(r2.u_scaled - r0.u_scaled - (std::cosh(0.2) - 1.0) * std::cos(r0.t)) < 1e-12);
    CHECK(std::abs(r0.abs_v_over_beta_scaled - std::abs(std::sin(r0.t))) < 1e-12);
  }
  CHECK(rows.front().t == 0.0);
  CHECK(rows[24].t == 12.0);
  const std::string csv = report::curves_csv(rows);
  CHECK(csv.rfind("t,beta,u_scaled,v_scaled,abs_u_scaled,abs_v_over_beta_scaled,norm_scaled\n", 0) == 0);
  std::istringstream is(csv);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(lines == 51);
  CHECK_THROWS_AS(report::sample_curves(src, {0.2}, 0.0, 1.0, 1), DomainError);
}
