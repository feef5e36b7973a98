#pragma once

#include <memory>
#include <string>
#include <vector>

#include "levyparam/coefficients.hpp"
#include "levyparam/levy_component.hpp"

namespace levyparam {

enum class NoiseCase { A, B };

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Index inequalities balancing unequal coordinate scalings (case B).
struct ConditionDReport {
  struct Line {
    std::string inequality;
    double lhs, rhs;
    double margin;  // rhs - lhs
    bool pass;      // margin >= 0
  };
  std::vector<Line> lines;
  bool pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};
ConditionDReport check_condition_D(double alpha, double beta, double gamma1, double gamma2,
                                   double gamma3);

/// The admissible-epsilon ceiling: four-term minimum per noise case.
/// Throws ConfigError naming the violated index inequality when the
/// parameters make the result non-positive.
double compute_eps0(NoiseCase c, double alpha, double beta, double gamma1, double gamma2,
                    double gamma3, int d);

/// Full model: components, coefficients, case, epsilon.
struct ModelSpec {
  int d = 1;
  std::vector<LevyComponent> components;
  CoefficientField coefficients;
  NoiseCase noise_case = NoiseCase::A;
  double eps = 0.0;   // actual epsilon in use, 0 < eps <= eps0
  double eps0 = 0.0;
  double alpha = 0.0;  // min over components of the declared lower index
  double beta = 0.0;   // max over components of the declared upper index

  /// kappa(u) = (u, h_i(1), h_i^{-1}(1), h_i^{-1}(1/u)).
  std::vector<double> kappa(double u) const;

  /// Validate invariants and fill eps0/eps/alpha/beta. eps_request = 0
  /// picks the default min(eps0, 1/8).
  static ModelSpec assemble(int d, std::vector<LevyComponent> comps, CoefficientField f,
                            NoiseCase c, double eps_request = 0.0);
};

/// Parse the JSON model config (strict: unknown keys are errors).
/// Schema:
///   {
///     "d": int,
///     "components": [ {"type": "stable", "alpha": a, "c": c}
///                   | {"type": "stable_normalized", "alpha": a}
///                   | {"type": "discretized_stable", "alpha": a, "c": c,
///                      "decay": q} ],
///     "coefficients": {"name": ..., "params": {...}},
///     "case": "A" | "B",
///     "eps": number (optional)
///   }
/// Coefficient names: "constant" (params: "matrix" row-major list or
/// "angle_deg"), "rotation" ("angle_deg"), "rotation_field" ("theta_amp"),
/// "identity_perturb" ("amp"), "time_matrix" ("gamma", optional "t_max").
ModelSpec parse_model_config(const std::string& json_text);
ModelSpec load_model_config(const std::string& path);

/// Canonical digest of the parsed config (manifest field).
std::string model_config_hash(const std::string& json_text);

}  // namespace levyparam
