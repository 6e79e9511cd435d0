// Field sources: anything that yields u + i v and its derivatives on the strip.
// The scanner only talks to this interface, so the same verification runs
// against xi and against the closed-form fixture.
#pragma once

#include <memory>
#include <string>

#include "xiscope/precision.hpp"
#include "xiscope/real.hpp"
#include "xiscope/xi_kernel.hpp"

namespace xiscope::scan {

/// Values at one point. Order 0 fills u, v; order 1 adds u_t, v_t
/// (u_beta = v_t, v_beta = -u_t); order 2 adds u_bb, v_bb.
struct FieldSample {
  double beta = 0.0;
  double t = 0.0;
  int order = 0;
  mp::Real u;
  mp::Real v;
  mp::Real u_t;
  mp::Real v_t;
  mp::Real u_bb;
  mp::Real v_bb;
  double err_estimate = 0.0;
};

class FieldSource {
 public:
  virtual ~FieldSource() = default;
  virtual FieldSample sample(double beta, double t, int order) const = 0;
  /// Normalisation used for scaled outputs and tolerances.
  virtual double scale(double t, double beta) const = 0;
  virtual std::string name() const = 0;
  /// Decimal working precision of the samples.
  virtual int digits() const = 0;
};

/// xi through the theta-kernel integral.
class XiSource final : public FieldSource {
 public:
  explicit XiSource(PrecisionConfig cfg);
  FieldSample sample(double beta, double t, int order) const override;
  double scale(double t, double beta) const override { return xi::scale_M_double(t, beta); }
  std::string name() const override { return "xi"; }
  int digits() const override { return cfg_.digits; }
  const PrecisionConfig& config() const { return cfg_; }

 private:
  PrecisionConfig cfg_;
  std::shared_ptr<const xi::KernelIntegrator> integrator_;
};

/// Closed-form analytic model F(tau) = cosh(tau) - 1 + epsilon, i.e.
/// u = cosh(beta) cos(t) - 1 + epsilon, v = sinh(beta) sin(t).
/// A corrupted model reports conj(F) instead, which flips the sign of v and
/// of the Lagarias quantity; it exists to exercise the anomaly paths.
struct SyntheticModel {
  double epsilon = 0.01;
  bool corrupted = false;
};

enum class Quantity { u, v, u_t, v_t, u_beta, v_beta };

/// Closed-form value of one quantity of the model at p.
mp::Real synthetic_eval(const SyntheticModel& model, const xi::StripPoint& p, Quantity what);

class SyntheticSource final : public FieldSource {
 public:
  explicit SyntheticSource(SyntheticModel model, int digits = 40);
  FieldSample sample(double beta, double t, int order) const override;
  double scale(double, double) const override { return 1.0; }
  std::string name() const override;
  int digits() const override { return digits_; }
  const SyntheticModel& model() const { return model_; }

 private:
  SyntheticModel model_;
  int digits_;
};

}  // namespace xiscope::scan
