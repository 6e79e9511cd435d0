#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "xiscope/errors.hpp"
#include "xiscope/oracle.hpp"
#include "xiscope/xi_kernel.hpp"

using namespace xiscope;
using testing::diff_to;

namespace {

PrecisionConfig digits(int d) {
  PrecisionConfig cfg;
  cfg.digits = d;
  return cfg;
}

xi::KernelFunction exp_kernel() {
  return {"exp(-x)", [](const mp::Real& x) { return mp::exp(-x); }, 1.0, 1.0, 0.0};
}

}  // namespace

TEST_CASE("xi at the centre of the strip") {
  const auto cfg = digits(40);
  const auto v = xi::eval_xi({0.0, 0.0}, cfg);
  mp::PrecisionScope s(50);
  CHECK(diff_to(v.u, "0.497120778188314109912773739685") < 1e-30);
  CHECK(v.v.is_zero());
  CHECK(v.err_estimate < 1e-35);
}

TEST_CASE("xi against frozen reference values") {
  struct Ref {
    double beta, t;
    const char* u;
    const char* v;
  };
  const Ref refs[] = {
      {0.3, 20.0, "-0.00003419285328893957869237806279", "-0.00001749290414571347976892180908"},
      {0.1, 3.0, "0.4032227458121604729525333698", "0.005674035673943597585241198795"},
      {0.45, 7.5, "0.1253496570682212315355639576", "0.02204993642158794580770225075"},
      {0.2, 10.0, "0.03778297820569854269995381888", "0.004487613764465440334515909884"},
      {0.0, 50.0, "3.162195125957889139062737e-15", "0"},
      {0.5, 30.0, "-6.65956729139210348230329748992e-09", "-2.29404513290462424729691559513e-08"},
  };
  const auto cfg = digits(required_digits(50));
  for (const auto& r : refs) {
    CAPTURE(r.beta);
    CAPTURE(r.t);
    const auto v = xi::eval_xi({r.beta, r.t}, cfg);
    mp::PrecisionScope s(60);
    const double m = xi::scale_M_double(r.t, r.beta);
    CHECK(diff_to(v.u, r.u) / m < 1e-22);
    CHECK(diff_to(v.v, r.v) / m < 1e-22);
  }
}

TEST_CASE("first and second derivatives") {
  const auto cfg = digits(40);
  const auto d1 = xi::eval_xi_derivative({0.2, 10.0}, 1, cfg);
  const auto d2 = xi::eval_xi_derivative({0.2, 10.0}, 2, cfg);
  mp::PrecisionScope s(50);
  CHECK(diff_to(d1.re, "-0.00184910246158725503540553898") < 1e-24);
  CHECK(diff_to(d1.im, "0.02241317944821155482048402356") < 1e-24);
  CHECK(diff_to(d2.re, "-0.009253139113477072548524862605") < 1e-24);
  CHECK(diff_to(d2.im, "-0.0003736414862015529321184339728") < 1e-24);
  CHECK_THROWS_AS(xi::eval_xi_derivative({0.2, 10.0}, 3, cfg), ContractError);
}

TEST_CASE("kernel transform of exp(-x)") {
  const auto cfg = digits(40);
  const auto k0 = xi::eval_kernel_transform(exp_kernel(), {0.0, 0.0}, 0, cfg);
  const auto k = xi::eval_kernel_transform(exp_kernel(), {0.3, 5.0}, 0, cfg);
  const auto k1 = xi::eval_kernel_transform(exp_kernel(), {0.3, 5.0}, 1, cfg);
  const auto k2 = xi::eval_kernel_transform(exp_kernel(), {0.3, 5.0}, 2, cfg);
  mp::PrecisionScope s(50);
  // 2 Gamma(1/4, 1)
  CHECK(diff_to(k0.value.re, "0.492511058386997417748994866137") < 1e-28);
  CHECK(diff_to(k.value.re, "0.158131864299627621887854354802") < 1e-28);
  CHECK(diff_to(k.value.im, "0.0208510107851870078702137319485") < 1e-28);
  CHECK(diff_to(k1.value.re, "-0.00599520482068298363596522603219") < 1e-28);
  CHECK(diff_to(k1.value.im, "0.0696412383043362060438576107256") < 1e-28);
  CHECK(diff_to(k2.value.re, "-0.0202230413776515775060525518525") < 1e-28);
  CHECK(diff_to(k2.value.im, "0.00137610745029691139475235818614") < 1e-28);
}

TEST_CASE("kernel decay contract") {
  auto bad = exp_kernel();
  bad.evaluator = [](const mp::Real& x) { return mp::exp(-x / mp::Real(4)); };
  CHECK_THROWS_AS(bad.check_decay(), ContractError);
  CHECK_NOTHROW(xi::theta_kernel(digits(30)).check_decay());
}

TEST_CASE("beta symmetry on the critical line") {
  const auto cfg = digits(required_digits(60));
  for (double t : {1.0, 5.0, 10.0, 20.0, 35.0, 60.0}) {
    CAPTURE(t);
    const auto v = xi::eval_xi({0.0, t}, cfg);
    const auto d1 = xi::eval_xi_derivative({0.0, t}, 1, cfg);
    const auto d2 = xi::eval_xi_derivative({0.0, t}, 2, cfg);
    const double bound = 1e-20 * std::max(1.0, xi::scale_M_double(t, 0.0));
    CHECK(std::abs(v.v.to_double()) < bound);
    CHECK(std::abs(d1.re.to_double()) < bound);
    CHECK(std::abs(d2.im.to_double()) < bound);
  }
}

TEST_CASE("reflection beta -> -beta conjugates v") {
  const auto cfg = digits(40);
  for (double t : {3.0, 17.0, 26.0}) {
    const auto a = xi::eval_xi({0.35, t}, cfg);
    const auto b = xi::eval_xi({-0.35, t}, cfg);
    const double m = xi::scale_M_double(t, 0.35);
    CHECK(mp::abs(a.u - b.u).to_double() / m < 1e-30);
    CHECK(mp::abs(a.v + b.v).to_double() / m < 1e-30);
  }
}

TEST_CASE("Cauchy-Riemann by central differences") {
  const auto cfg = digits(45);
  const double h = 1e-8;
  for (auto [beta, t] : {std::pair{0.1, 12.0}, std::pair{0.3, 23.5}, std::pair{0.45, 40.0}}) {
    const auto g = xi::t_gradient({beta, t}, cfg);
    const auto p = xi::eval_xi({beta + h, t}, cfg);
    const auto q = xi::eval_xi({beta - h, t}, cfg);
    mp::PrecisionScope s(55);
    const mp::Real two_h = mp::Real(beta + h) - mp::Real(beta - h);
    const double m = xi::scale_M_double(t, beta);
    CHECK(mp::abs(g.u_t + (p.v - q.v) / two_h).to_double() / m < 1e-12);
    CHECK(mp::abs(g.v_t - (p.u - q.u) / two_h).to_double() / m < 1e-12);
  }
}

TEST_CASE("kernel route matches the product route") {
  const auto cfg = digits(required_digits(60));
  for (auto [beta, t] : {std::pair{0.05, 0.5}, std::pair{0.27, 14.0}, std::pair{0.5, 33.3}, std::pair{0.12, 59.0}}) {
    const auto k = xi::eval_xi({beta, t}, cfg);
    const Complex p = oracle::xi_product(oracle::s_from_strip(beta, t), cfg);
    mp::PrecisionScope s(cfg.digits + 10);
    const double disc = abs(Complex{k.u - p.re, k.v - p.im}).to_double() / xi::scale_M_double(t, 0.5);
    CHECK(disc < 1e-15);
  }
}

TEST_CASE("strip norm and scale") {
  const auto cfg = digits(40);
  mp::PrecisionScope s(50);
  CHECK(std::abs(xi::scale_M_double(30.0, 0.5) - 1.05305208242294e-7) < 1e-20);
  CHECK(std::abs(xi::scale_M_double(2.0, 0.0) - 1.66303661080610) < 1e-13);
  CHECK(std::abs(xi::scale_M(30.0, 0.5).to_double() - xi::scale_M_double(30.0, 0.5)) < 1e-20);
  const auto v = xi::eval_xi({0.2, 10.0}, cfg);
  const mp::Real n = xi::norm_xi({0.2, 10.0}, cfg);
  CHECK(mp::abs(n - (mp::abs(v.u) + mp::abs(v.v) / mp::Real(0.2))).to_double() < 1e-35);
  const auto g = xi::t_gradient({0.0, 10.0}, cfg);
  const auto v0 = xi::eval_xi({0.0, 10.0}, cfg);
  CHECK(mp::abs(xi::norm_xi({0.0, 10.0}, cfg) - (mp::abs(v0.u) + mp::abs(g.u_t))).to_double() < 1e-35);
  CHECK_THROWS_AS(xi::norm_xi({-0.1, 10.0}, cfg), ContractError);
}

TEST_CASE("contract and precision errors") {
  const auto cfg = digits(40);
  CHECK_THROWS_AS(xi::eval_xi({0.6, 10.0}, cfg), DomainError);
  CHECK_THROWS_AS(xi::eval_xi({0.1, -1.0}, cfg), DomainError);
  CHECK_THROWS_AS(xi::eval_xi({0.1, 60.0}, cfg), PrecisionError);
  try {
    xi::eval_xi({0.1, 60.0}, cfg);
  } catch (const PrecisionError& e) {
    CHECK(e.required_digits() == required_digits(60.0));
  }
}

TEST_CASE("refining the quadrature does not move the value") {
  auto coarse = digits(45);
  auto fine = coarse;
  fine.nodes_per_halfperiod = 24;
  fine.x_max = xi::xi_integrator(coarse)->x_max_for(40.0) + 10.0;
  const auto a = xi::eval_xi({0.3, 40.0}, coarse);
  const auto b = xi::eval_xi({0.3, 40.0}, fine);
  const double m = xi::scale_M_double(40.0, 0.3);
  CHECK(mp::abs(a.u - b.u).to_double() / m < 1e-25);
  CHECK(mp::abs(a.v - b.v).to_double() / m < 1e-25);
}
