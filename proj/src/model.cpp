#include "levyparam/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace levyparam {

using nlohmann::json;

ConditionDReport check_condition_D(double alpha, double beta, double gamma1, double gamma2,
                                   double gamma3) {
  ConditionDReport rep;
  auto add = [&](std::string name, double lhs, double rhs) {
    rep.lines.push_back({std::move(name), lhs, rhs, rhs - lhs, rhs - lhs >= 0.0});
  };
  add("beta/alpha < 1 + gamma1", beta / alpha, 1.0 + gamma1);
  add("1/alpha - 1/beta < gamma2", 1.0 / alpha - 1.0 / beta, gamma2);
  add("beta/alpha < gamma3", beta / alpha, gamma3);
  return rep;
}

double compute_eps0(NoiseCase c, double alpha, double beta, double gamma1, double gamma2,
                    double gamma3, int d) {
  if (!(gamma3 > std::max(1.0, beta)))
    throw ConfigError("eps0: gamma3 must exceed max(1, beta)");
  double dd = (double)d;
  if (c == NoiseCase::A) {
    double t1 = gamma1 * alpha / (2.0 * (dd + 3.0) * beta);
    double t2 = gamma2 * alpha / (2.0 * (dd + 3.0));
    double r = gamma1 / (beta * (1.0 + gamma1));
    double t3 = r / (2.0 + 2.0 / alpha + r);
    double t4 = std::isinf(gamma3)
                    ? 1.0
                    : (gamma3 - 1.0) / (gamma3 - 1.0 + beta * (1.0 + (dd + 1.0) / alpha));
    double e = std::min(std::min(t1, t2), std::min(t3, t4));
    if (!(e > 0.0)) throw ConfigError("eps0: non-positive (degenerate Holder indices)");
    return e;
  }
  ConditionDReport D = check_condition_D(alpha, beta, gamma1, gamma2, gamma3);
  for (const auto& l : D.lines)
    if (l.margin <= 0.0)
      throw ConfigError("eps0: condition (D) fails strictly at '" + l.inequality + "'");
  double t1 = ((1.0 + gamma1) / beta - 1.0 / alpha) / (2.0 * (dd + 3.0) / alpha);
  double t2 = (gamma2 - (1.0 / alpha - 1.0 / beta)) / (2.0 * (dd + 3.0) / alpha);
  double r = 1.0 / beta - 1.0 / ((1.0 + gamma1) * alpha);
  double t3 = r / (2.0 + 2.0 / alpha + r);
  double t4 = std::isinf(gamma3) ? 1.0
                                 : (gamma3 - beta / alpha) / (gamma3 + beta * (1.0 + dd / alpha));
  double e = std::min(std::min(t1, t2), std::min(t3, t4));
  if (!(e > 0.0)) throw ConfigError("eps0: non-positive under (D)");
  return e;
}

std::vector<double> ModelSpec::kappa(double u) const {
  std::vector<double> k{u};
  for (const auto& c : components) k.push_back(c.h_at_1());
  for (const auto& c : components) k.push_back(c.h_inv_at_1());
  for (const auto& c : components) k.push_back(c.h_inverse(1.0 / u));
  return k;
}

ModelSpec ModelSpec::assemble(int d, std::vector<LevyComponent> comps, CoefficientField f,
                              NoiseCase c, double eps_request) {
  if (d < 1) throw ConfigError("model: d >= 1 required");
  if ((int)comps.size() != d) throw ConfigError("model: components.size() must equal d");
  ModelSpec m;
  m.d = d;
  m.alpha = comps.front().alpha_idx();
  m.beta = comps.front().beta_idx();
  for (const auto& cc : comps) {
    m.alpha = std::min(m.alpha, cc.alpha_idx());
    m.beta = std::max(m.beta, cc.beta_idx());
  }
  if (c == NoiseCase::A) {
    for (size_t i = 1; i < comps.size(); ++i) {
      bool same = comps[i].measure().index() == comps[0].measure().index() &&
                  std::abs(comps[i].h_at_1() - comps[0].h_at_1()) < 1e-12 &&
                  comps[i].alpha_idx() == comps[0].alpha_idx() &&
                  comps[i].beta_idx() == comps[0].beta_idx();
      if (!same) throw ConfigError("model: case A requires identical components");
    }
  } else {
    ConditionDReport D = check_condition_D(m.alpha, m.beta, f.gamma1, f.gamma2, f.gamma3);
    for (const auto& l : D.lines)
      if (l.margin <= 0.0)
        throw ConfigError("model: condition (D) fails at '" + l.inequality + "'");
  }
  m.noise_case = c;
  m.eps0 = compute_eps0(c, m.alpha, m.beta, f.gamma1, f.gamma2, f.gamma3, d);
  double eps = eps_request > 0.0 ? eps_request : std::min(m.eps0, 0.125);
  if (!(eps > 0.0 && eps <= m.eps0))
    throw ConfigError("model: eps must lie in (0, eps0]");
  m.eps = eps;
  m.components = std::move(comps);
  m.coefficients = std::move(f);
  return m;
}

namespace {

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
  }
}

double need_num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError("config: missing numeric '" + key + "' in " + where);
  return j[key].get<double>();
}

LevyComponent parse_component(const json& j, int idx) {
  std::string where = "components[" + std::to_string(idx) + "]";
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError("config: " + where + " must be an object with 'type'");
  std::string type = j["type"].get<std::string>();
  if (type == "stable") {
    reject_unknown_keys(j, {"type", "alpha", "c"}, where);
    return LevyComponent::stable(need_num(j, "alpha", where), need_num(j, "c", where));
  }
  if (type == "stable_normalized") {
    reject_unknown_keys(j, {"type", "alpha"}, where);
    return LevyComponent::stable_normalized(need_num(j, "alpha", where));
  }
  if (type == "discretized_stable") {
    reject_unknown_keys(j, {"type", "alpha", "c", "decay"}, where);
    return LevyComponent::discretized_stable(need_num(j, "alpha", where),
                                             need_num(j, "c", where),
                                             need_num(j, "decay", where));
  }
  throw ConfigError("config: unknown component type '" + type + "' in " + where);
}

CoefficientField parse_coefficients(const json& j, int d) {
  if (!j.is_object() || !j.contains("name"))
    throw ConfigError("config: coefficients must be an object with 'name'");
  reject_unknown_keys(j, {"name", "params"}, "coefficients");
  std::string name = j["name"].get<std::string>();
  json p = j.contains("params") ? j["params"] : json::object();
  if (name == "constant") {
    reject_unknown_keys(p, {"matrix", "angle_deg"}, "coefficients.params");
    if (p.contains("angle_deg")) return make_rotation_field(p["angle_deg"].get<double>());
    if (!p.contains("matrix")) throw ConfigError("config: constant field needs 'matrix'");
    auto v = p["matrix"].get<std::vector<double>>();
    if ((int)v.size() != d * d)
      throw ConfigError("config: matrix must have d*d entries (row-major)");
    Eigen::MatrixXd A(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) A(i, k) = v[i * d + k];
    return make_constant_field(A);
  }
  if (name == "rotation") {
    reject_unknown_keys(p, {"angle_deg"}, "coefficients.params");
    if (d != 2) throw ConfigError("config: rotation field needs d = 2");
    return make_rotation_field(need_num(p, "angle_deg", "coefficients.params"));
  }
  if (name == "rotation_field") {
    reject_unknown_keys(p, {"theta_amp"}, "coefficients.params");
    if (d != 2) throw ConfigError("config: rotation_field needs d = 2");
    return make_rotation_angle_field(need_num(p, "theta_amp", "coefficients.params"));
  }
  if (name == "identity_perturb") {
    reject_unknown_keys(p, {"amp"}, "coefficients.params");
    return make_identity_perturbation_field(need_num(p, "amp", "coefficients.params"), d);
  }
  if (name == "time_matrix") {
    reject_unknown_keys(p, {"gamma", "t_max"}, "coefficients.params");
    if (d != 2) throw ConfigError("config: time_matrix needs d = 2");
    double tmax = p.contains("t_max") ? p["t_max"].get<double>() : 0.75;
    return make_time_matrix_field(need_num(p, "gamma", "coefficients.params"), tmax);
  }
  throw ConfigError("config: unknown coefficient field '" + name + "'");
}

}  // namespace

ModelSpec parse_model_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  reject_unknown_keys(j, {"d", "components", "coefficients", "case", "eps"}, "top level");
  if (!j.contains("d") || !j["d"].is_number_integer())
    throw ConfigError("config: missing integer 'd'");
  int d = j["d"].get<int>();
  if (!j.contains("components") || !j["components"].is_array())
    throw ConfigError("config: missing array 'components'");
  std::vector<LevyComponent> comps;
  int idx = 0;
  for (const auto& cj : j["components"]) comps.push_back(parse_component(cj, idx++));
  if (!j.contains("coefficients"))
    throw ConfigError("config: missing object 'coefficients'");
  CoefficientField f = parse_coefficients(j["coefficients"], d);
  NoiseCase c = NoiseCase::A;
  if (j.contains("case")) {
    std::string cs = j["case"].get<std::string>();
    if (cs == "A")
      c = NoiseCase::A;
    else if (cs == "B")
      c = NoiseCase::B;
    else
      throw ConfigError("config: 'case' must be \"A\" or \"B\"");
  }
  double eps = j.contains("eps") ? j["eps"].get<double>() : 0.0;
  return ModelSpec::assemble(d, std::move(comps), std::move(f), c, eps);
}

ModelSpec load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

std::string model_config_hash(const std::string& text) {
  json j = json::parse(text);
  std::string canon = j.dump();
  // FNV-1a 64
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace levyparam
