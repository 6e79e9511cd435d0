#include <thread>

#include "doctest.h"
#include "support.hpp"
#include "xiscope/complex.hpp"
#include "xiscope/parallel.hpp"
#include "xiscope/precision.hpp"
#include "xiscope/errors.hpp"

using namespace xiscope;
using mp::Real;

TEST_CASE("precision scope is restored and per thread") {
  const auto outer = mp::working_bits();
  {
    mp::PrecisionScope s(80);
    CHECK(mp::working_bits() == mp::bits_for_digits(80));
    int seen_in_thread = 0;
    std::thread th([&] { seen_in_thread = static_cast<int>(mp::working_bits()); });
    th.join();
    CHECK(seen_in_thread != static_cast<int>(mp::bits_for_digits(80)));
  }
  CHECK(mp::working_bits() == outer);
}

TEST_CASE("arithmetic at high precision") {
  mp::PrecisionScope s(60);
  const Real third = Real(1) / Real(3);
  CHECK(testing::diff_to(third * Real(3), "1") < 1e-58);
  CHECK(testing::diff_to(Real::pi(), "3.14159265358979323846264338327950288419716939937510582097494") < 1e-58);
  CHECK(testing::diff_to(mp::exp(mp::log(Real(7))), "7") < 1e-57);
  Real sh, ch;
  mp::sinh_cosh(sh, ch, Real(0.2));
  CHECK(testing::diff_to(ch * ch - sh * sh, "1") < 1e-57);
  CHECK(mp::factorial(20) == Real(2432902008176640000.0));
  CHECK(Real(-2).sign() == -1);
  CHECK(Real(0).is_zero());
}

TEST_CASE("mixed precision operands keep the wider precision") {
  Real wide;
  {
    mp::PrecisionScope s(100);
    wide = Real(1) / Real(7);
  }
  mp::PrecisionScope s(20);
  const Real sum = wide + wide;
  mp::PrecisionScope back(100);
  CHECK(testing::diff_to(sum, "0.2857142857142857142857142857142857142857142857142857142857142857142857142857142857142857142857") <
        1e-90);
}

TEST_CASE("complex helpers") {
  mp::PrecisionScope s(40);
  const Complex z{Real(3), Real(4)};
  CHECK(testing::diff_to(abs(z), "5") < 1e-38);
  const Complex w = z * z.conj();
  CHECK(testing::diff_to(w.re, "25") < 1e-37);
  CHECK(w.im.is_zero());
  const Complex q = z / z;
  CHECK(testing::diff_to(q.re, "1") < 1e-38);
  CHECK(mp::abs(q.im).to_double() < 1e-38);
  const Complex e = exp(log(z));
  CHECK(testing::diff_to(e.re, "3") < 1e-37);
  CHECK(testing::diff_to(e.im, "4") < 1e-37);
  // 2^(i pi / ln 2) = e^{i pi} = -1
  const Complex p = pow(Real(2), Complex{Real(0), Real::pi() / mp::log(Real(2))});
  CHECK(testing::diff_to(p.re, "-1") < 1e-37);
}

TEST_CASE("precision config validation and schedule") {
  PrecisionConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.digits = 19;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = PrecisionConfig{};
  cfg.x_max = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = PrecisionConfig{};
  cfg.nodes_per_halfperiod = 4;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  CHECK(required_digits(0) == 30);
  CHECK(required_digits(60) == 51);
  CHECK(required_digits(110) == 68);
  CHECK(PrecisionConfig::for_t_max(100).digits == required_digits(100));
  CHECK(PrecisionConfig{}.series_exponent() == 45);
}

TEST_CASE("parallel_for writes every slot and rethrows the lowest failure") {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
  try {
    parallel_for(50, 3, [](std::size_t i) {
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}
