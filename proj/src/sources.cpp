#include "xiscope/sources.hpp"

#include <sstream>

namespace xiscope::scan {

using mp::Real;

XiSource::XiSource(PrecisionConfig cfg) : cfg_(std::move(cfg)), integrator_(xi::xi_integrator(cfg_)) {}

FieldSample XiSource::sample(double beta, double t, int order) const {
  mp::PrecisionScope scope(cfg_.digits + 10);
  const xi::KernelMoments m = integrator_->integrate({beta, t}, order);
  FieldSample out;
  out.beta = beta;
  out.t = t;
  out.order = order;
  out.u = m.k[0].re;
  out.v = m.k[0].im;
  if (order >= 1) {
    out.u_t = -m.k[1].im;
    out.v_t = m.k[1].re;
  }
  if (order >= 2) {
    out.u_bb = m.k[2].re;
    out.v_bb = m.k[2].im;
  }
  out.err_estimate = m.err_estimate;
  return out;
}

Real synthetic_eval(const SyntheticModel& model, const xi::StripPoint& p, Quantity what) {
  const Real beta(p.beta);
  const Real t(p.t);
  Real sh;
  Real ch;
  Real s;
  Real c;
  mp::sinh_cosh(sh, ch, beta);
  mp::sin_cos(s, c, t);
  const Real flip(model.corrupted ? -1 : 1);
  switch (what) {
    case Quantity::u:
      return ch * c - Real(1) + Real(model.epsilon);
    case Quantity::v:
      return flip * sh * s;
    case Quantity::u_t:
      return -(ch * s);
    case Quantity::v_t:
      return flip * sh * c;
    case Quantity::u_beta:
      return sh * c;
    case Quantity::v_beta:
      return flip * ch * s;
  }
  return Real(0);
}

SyntheticSource::SyntheticSource(SyntheticModel model, int digits) : model_(model), digits_(digits) {}

FieldSample SyntheticSource::sample(double beta, double t, int order) const {
  mp::PrecisionScope scope(digits_);
  const xi::StripPoint p{beta, t};
  FieldSample out;
  out.beta = beta;
  out.t = t;
  out.order = order;
  out.u = synthetic_eval(model_, p, Quantity::u);
  out.v = synthetic_eval(model_, p, Quantity::v);
  if (order >= 1) {
    out.u_t = synthetic_eval(model_, p, Quantity::u_t);
    out.v_t = synthetic_eval(model_, p, Quantity::v_t);
  }
  if (order >= 2) {
    // F'' = F for cosh: u_bb = u + 1 - epsilon, v_bb = v.
    out.u_bb = out.u + Real(1) - Real(model_.epsilon);
    out.v_bb = out.v;
  }
  return out;
}

std::string SyntheticSource::name() const {
  std::ostringstream os;
  os << "fixture(epsilon=" << model_.epsilon << (model_.corrupted ? ", corrupted" : "") << ")";
  return os.str();
}

}  // namespace xiscope::scan
