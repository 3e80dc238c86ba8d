#include "glassey/core/problem.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "glassey/errors.hpp"

namespace glassey::core {
namespace {

constexpr double kCriticalTol = 1e-12;

std::string window_message(const char* regime, const ProblemSpec& spec, double s1, double s2) {
  std::ostringstream os;
  os << "weight_exponents(" << regime << "): empty or violated s-window for n=" << spec.n_dim
     << ", p=" << spec.p << ", s1=" << s1 << ", s2=" << s2;
  return os.str();
}

}  // namespace

void ProblemSpec::validate() const {
  require(n_dim >= 2, "ProblemSpec: n_dim must be >= 2");
  require(std::isfinite(p) && p > 1.0, "ProblemSpec: p must be > 1");
  require(std::isfinite(a) && std::isfinite(b), "ProblemSpec: a and b must be finite");
}

CriticalExponents critical_exponents(const ProblemSpec& spec) {
  spec.validate();
  const double n = spec.n_dim;
  return {1.0 + 2.0 / (n - 1.0), n / 2.0 + 1.0 - 1.0 / (spec.p - 1.0)};
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::supercritical: return "supercritical";
    case Regime::critical: return "critical";
    case Regime::subcritical: return "subcritical";
  }
  return "unknown";
}

Regime parse_regime(std::string_view text) {
  if (text == "supercritical") return Regime::supercritical;
  if (text == "critical") return Regime::critical;
  if (text == "subcritical") return Regime::subcritical;
  throw PreconditionViolation("unknown regime '" + std::string(text) + "'");
}

Regime classify(const ProblemSpec& spec) {
  const double pc = critical_exponents(spec).p_c;
  if (std::fabs(spec.p - pc) <= kCriticalTol * pc) return Regime::critical;
  return spec.p > pc ? Regime::supercritical : Regime::subcritical;
}

WeightExponents weight_exponents(Regime regime, const ProblemSpec& spec, double s1, double s2) {
  spec.validate();
  const double n = spec.n_dim;
  const double p = spec.p;
  const Regime actual = classify(spec);
  if (actual != regime) {
    throw PreconditionViolation("weight_exponents: p = " + std::to_string(p) + " is " +
                                std::string(to_string(actual)) + ", not " +
                                std::string(to_string(regime)));
  }

  WeightExponents w{};
  switch (regime) {
    case Regime::supercritical: {
      require(spec.n_dim >= 3, "weight_exponents(supercritical): requires n >= 3");
      const double mid = n / 2.0 - 1.0 / (p - 1.0);
      if (!(0.5 <= s1 && s1 < mid && mid < s2 && s2 <= 1.0)) {
        throw PreconditionViolation(window_message("supercritical", spec, s1, s2));
      }
      w.delta = (n - 2.0 * s2) * (p - 1.0) / 4.0;
      w.delta_prime = (1.0 - (s2 - s1) * (p - 1.0)) / 2.0;
      break;
    }
    case Regime::critical: {
      require(spec.n_dim >= 3, "weight_exponents(critical): requires n >= 3");
      if (!(0.5 < s2 && s2 <= 1.0)) {
        throw PreconditionViolation(window_message("critical", spec, 0.5, s2));
      }
      w.delta = (n - 2.0 * s2) * (p - 1.0) / 4.0;
      w.delta_prime = w.delta;
      w.log_governed = true;
      break;
    }
    case Regime::subcritical: {
      const double split = 1.0 + 1.0 / (n - 1.0);
      w.delta = p < split ? (n - 1.0) * (p - 1.0) / 2.0 : (n - 1.0) * (p - 1.0) / 4.0;
      w.delta_prime = 0.0;
      break;
    }
  }
  if (!(w.delta > 0.0 && w.delta < 0.5)) {
    throw PreconditionViolation("weight_exponents: delta = " + std::to_string(w.delta) +
                                " outside (0, 1/2)");
  }
  return w;
}

WeightParams::WeightParams(double delta, double delta_prime, double horizon)
    : WeightParams(delta, delta_prime, horizon, false) {}

WeightParams::WeightParams(double delta, double delta_prime, double horizon, bool log_governed)
    : delta_(delta), delta_prime_(delta_prime), horizon_(horizon), log_governed_(log_governed) {
  require(std::isfinite(delta) && delta > 0.0 && delta < 0.5, "WeightParams: need 0 < delta < 1/2");
  require(std::isfinite(delta_prime), "WeightParams: delta' must be finite");
  if (log_governed) {
    require(delta_prime == delta, "WeightParams: critical instance needs delta' = delta");
  } else {
    require(delta_prime < delta, "WeightParams: need delta' < delta");
  }
  require(std::isfinite(horizon) && horizon > 0.0, "WeightParams: horizon must be positive");
}

WeightParams WeightParams::critical(double delta, double horizon) {
  return WeightParams(delta, delta, horizon, true);
}

WeightParams WeightParams::from(const WeightExponents& w, double horizon) {
  return WeightParams(w.delta, w.delta_prime, horizon, w.log_governed);
}

WeightParams WeightParams::with_horizon(double horizon) const {
  return WeightParams(delta_, delta_prime_, horizon, log_governed_);
}

}  // namespace glassey::core
