#pragma once

#include <string_view>

namespace glassey::core {

/// box u = a|u_t|^p + b|grad u|^p in n_dim space dimensions.
struct ProblemSpec {
  int n_dim = 3;
  double p = 2.0;
  double a = 1.0;
  double b = 0.0;

  /// Throws PreconditionViolation unless n_dim >= 2, p > 1 and a, b are finite.
  void validate() const;
};

struct CriticalExponents {
  double p_c;  // 1 + 2/(n-1)
  double s_c;  // n/2 + 1 - 1/(p-1)
};

CriticalExponents critical_exponents(const ProblemSpec& spec);

enum class Regime { supercritical, critical, subcritical };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);

/// Position of p relative to p_c; p within 1e-12 (relative) of p_c counts as critical.
Regime classify(const ProblemSpec& spec);

/// The (delta, delta') pair selecting a local-energy norm.
struct WeightExponents {
  double delta;
  double delta_prime;
  /// Set in the critical regime: delta' == delta and the log(2+T) term governs.
  bool log_governed = false;
};

/// supercritical: delta = (n-2 s2)(p-1)/4, delta' = (1-(s2-s1)(p-1))/2 on the window
///   1/2 <= s1 < n/2 - 1/(p-1) < s2 <= 1, n >= 3.
/// critical (p = p_c, n >= 3): delta = (n-2 s2)(p-1)/4 with 1/2 < s2 <= 1; delta' = delta.
/// subcritical (p < p_c): delta = (n-1)(p-1)/2 below 1 + 1/(n-1), (n-1)(p-1)/4 from there
///   up to p_c; s1, s2 ignored; delta' = 0.
WeightExponents weight_exponents(Regime regime, const ProblemSpec& spec, double s1, double s2);

/// (delta, delta', T) for one concrete LE / LE* norm.
class WeightParams {
 public:
  /// 0 < delta < 1/2, delta' < delta, horizon > 0.
  WeightParams(double delta, double delta_prime, double horizon);
  /// Critical-regime instance with delta' = delta.
  static WeightParams critical(double delta, double horizon);
  static WeightParams from(const WeightExponents& w, double horizon);

  double delta() const noexcept { return delta_; }
  double delta_prime() const noexcept { return delta_prime_; }
  double horizon() const noexcept { return horizon_; }
  bool log_governed() const noexcept { return log_governed_; }

  WeightParams with_horizon(double horizon) const;

 private:
  WeightParams(double delta, double delta_prime, double horizon, bool log_governed);

  double delta_;
  double delta_prime_;
  double horizon_;
  bool log_governed_;
};

}  // namespace glassey::core
