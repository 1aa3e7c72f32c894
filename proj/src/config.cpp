#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "maxiset/error.hpp"
#include "maxiset/experiments.hpp"

namespace maxiset {

using nlohmann::json;

namespace {

const json& member_or_null(const json& obj, const std::string& key) {
  static const json null_value;
  const auto it = obj.find(key);
  return it == obj.end() ? null_value : *it;
}

template <class T>
T get_or(const json& obj, const std::string& key, T fallback) {
  const json& v = member_or_null(obj, key);
  if (v.is_null()) return fallback;
  try {
    if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!v.is_number_integer()) throw InvalidInput("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw InvalidInput("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw InvalidInput("config: key '" + key + "' has the wrong type");
  }
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput("config: '" + what + "' must be > 0");
  }
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw InvalidInput("config: '" + where + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw InvalidInput("config: unknown key '" + key + "' in " + where);
    }
  }
}

json section_of(const json& raw, const std::string& name) {
  const json& v = member_or_null(raw, name);
  return v.is_null() ? json::object() : v;
}

std::vector<double> number_list(const json& obj, const std::string& key,
                                std::vector<double> fallback) {
  const json& v = member_or_null(obj, key);
  if (v.is_null()) return fallback;
  if (!v.is_array() || v.empty()) {
    throw InvalidInput("config: '" + key + "' must be a non-empty array of numbers");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidInput("config: '" + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json resolve_family(const json& raw, Family family, const ExperimentConfig& c) {
  const auto rates = calibration_rates(c.s, family);
  const double nn = static_cast<double>(c.n);
  json out = json::object();
  switch (family) {
    case Family::quadratic: {
      const json sec = section_of(raw, "quadratic");
      check_keys(sec, "quadratic", {"gamma", "J", "kappa2"});
      out["gamma"] = get_or<double>(sec, "gamma", 1.0 / rates.tuning_exponent);
      out["J"] = get_or<std::int64_t>(sec, "J", 4096);
      require_positive(out["gamma"].get<double>(), "quadratic.gamma");
      if (out["J"].get<std::int64_t>() < 1) throw InvalidInput("config: quadratic.J must be >= 1");
      if (sec.contains("kappa2")) {
        out["kappa2"] = number_list(sec, "kappa2", {});
        out["J"] = out["kappa2"].size();
      }
      break;
    }
    case Family::kernel: {
      const json sec = section_of(raw, "kernel");
      check_keys(sec, "kernel", {"kernel", "h", "h_multiplier", "J"});
      const double mult = get_or<double>(sec, "h_multiplier", 1.0);
      require_positive(mult, "kernel.h_multiplier");
      out["kernel"] = get_or<std::string>(sec, "kernel", "box");
      out["h_multiplier"] = mult;
      out["h"] = get_or<double>(sec, "h", mult * std::pow(nn, -rates.tuning_exponent));
      out["J"] = get_or<std::int64_t>(sec, "J", 4096);
      const double h = out["h"].get<double>();
      if (!(h > 0.0 && h < 0.5)) throw InvalidInput("config: kernel.h must lie in (0, 0.5)");
      if (out["J"].get<std::int64_t>() < 1) throw InvalidInput("config: kernel.J must be >= 1");
      break;
    }
    case Family::chisq: {
      const json sec = section_of(raw, "chisq");
      check_keys(sec, "chisq", {"k", "k_multiplier", "grid"});
      const double mult = get_or<double>(sec, "k_multiplier", 1.0);
      require_positive(mult, "chisq.k_multiplier");
      out["k_multiplier"] = mult;
      out["k"] = get_or<std::int64_t>(
          sec, "k", std::max<std::int64_t>(2, std::llround(mult * std::pow(nn, rates.tuning_exponent))));
      out["grid"] = get_or<std::int64_t>(sec, "grid", 4096);
      if (out["k"].get<std::int64_t>() < 2) throw InvalidInput("config: chisq.k must be >= 2");
      if (out["grid"].get<std::int64_t>() < 64) throw InvalidInput("config: chisq.grid must be >= 64");
      break;
    }
    case Family::cvm: {
      const json sec = section_of(raw, "cvm");
      check_keys(sec, "cvm", {"calibration_reps", "calibration_seed", "cache", "grid", "J"});
      out["calibration_reps"] = get_or<std::int64_t>(sec, "calibration_reps", 20000);
      out["calibration_seed"] = get_or<std::uint64_t>(sec, "calibration_seed", 20240601);
      out["cache"] = get_or<std::string>(sec, "cache", "");
      out["grid"] = get_or<std::int64_t>(sec, "grid", 4096);
      out["J"] = get_or<std::int64_t>(sec, "J", 1024);
      if (out["calibration_reps"].get<std::int64_t>() < 1000) {
        throw InvalidInput("config: cvm.calibration_reps must be >= 1000");
      }
      if (out["grid"].get<std::int64_t>() < 64) throw InvalidInput("config: cvm.grid must be >= 64");
      break;
    }
    case Family::minimax: {
      const json sec = section_of(raw, "minimax");
      check_keys(sec, "minimax", {"P0", "rho", "J", "inverse_gamma"});
      out["P0"] = get_or<double>(sec, "P0", 1.0);
      const double gamma = get_or<double>(sec, "inverse_gamma", 0.0);
      if (gamma < 0.0) throw InvalidInput("config: minimax.inverse_gamma must be >= 0");
      out["inverse_gamma"] = gamma;
      const double rate = 4.0 * c.s / (1.0 + 4.0 * c.s + 4.0 * gamma);
      out["rho"] = get_or<double>(sec, "rho", std::pow(nn, -rate));
      out["J"] = get_or<std::int64_t>(sec, "J", 0);
      require_positive(out["P0"].get<double>(), "minimax.P0");
      require_positive(out["rho"].get<double>(), "minimax.rho");
      if (out["J"].get<std::int64_t>() < 0) throw InvalidInput("config: minimax.J must be >= 0");
      break;
    }
  }
  return out;
}

}  // namespace

const json& ExperimentConfig::section(const std::string& name) const {
  static const json empty = json::object();
  const auto it = resolved.find(name);
  return it == resolved.end() ? empty : *it;
}

std::string ExperimentConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

ExperimentConfig resolve_config(const json& raw) {
  check_keys(raw, "config",
             {"family", "n", "sigma", "alpha", "s", "reps", "seed", "threads", "output",
              "quadratic", "kernel", "chisq", "cvm", "minimax", "alternative",
              "power_curve", "consistency", "decomposition", "bayes"});
  ExperimentConfig c;
  if (!raw.contains("family") || !raw["family"].is_string()) {
    throw InvalidInput("config: 'family' (string) is required");
  }
  c.family = family_from_string(raw["family"].get<std::string>());
  c.n = get_or<std::int64_t>(raw, "n", 2000);
  c.sigma = get_or<double>(raw, "sigma", 1.0);
  c.alpha = get_or<double>(raw, "alpha", 0.05);
  c.s = get_or<double>(raw, "s", 1.0);
  c.reps = get_or<std::int64_t>(raw, "reps", 1000);
  c.seed = get_or<std::uint64_t>(raw, "seed", 1);
  c.threads = static_cast<int>(get_or<std::int64_t>(raw, "threads", 1));
  c.output = get_or<std::string>(raw, "output", "");
  if (c.n < 2) throw InvalidInput("config: n must be >= 2");
  require_positive(c.sigma, "sigma");
  require_positive(c.s, "s");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw InvalidInput("config: alpha must lie in (0, 1)");
  if (c.reps < 1) throw InvalidInput("config: reps must be >= 1");
  if (c.threads < 1) throw InvalidInput("config: threads must be >= 1");

  json r = json::object();
  r["family"] = std::string(to_string(c.family));
  r["n"] = c.n;
  r["sigma"] = c.sigma;
  r["alpha"] = c.alpha;
  r["s"] = c.s;
  r["reps"] = c.reps;
  r["seed"] = c.seed;
  r[std::string(to_string(c.family))] = resolve_family(raw, c.family, c);

  json alt = section_of(raw, "alternative");
  if (!alt.is_object()) throw InvalidInput("config: 'alternative' must be an object");
  if (!alt.contains("type")) alt["type"] = "zero";
  r["alternative"] = alt;

  if (raw.contains("power_curve")) {
    const json sec = section_of(raw, "power_curve");
    check_keys(sec, "power_curve", {"points", "mode"});
    const std::string mode = get_or<std::string>(sec, "mode", "drift");
    if (mode != "drift" && mode != "scale") {
      throw InvalidInput("config: power_curve.mode must be 'drift' or 'scale'");
    }
    r["power_curve"] = {{"points", number_list(sec, "points", {0, 0.5, 1, 1.5, 2, 2.5})},
                        {"mode", mode}};
  }
  if (raw.contains("consistency")) {
    const json sec = section_of(raw, "consistency");
    check_keys(sec, "consistency", {"C", "norm_scale"});
    const auto C = number_list(sec, "C", {1, 4, 16, 64});
    for (std::size_t i = 0; i < C.size(); ++i) {
      require_positive(C[i], "consistency.C");
      if (i && C[i] <= C[i - 1]) throw InvalidInput("config: consistency.C must increase");
    }
    const double scale = get_or<double>(sec, "norm_scale", 1.0);
    require_positive(scale, "consistency.norm_scale");
    r["consistency"] = {{"C", C}, {"norm_scale", scale}};
  }
  if (raw.contains("decomposition")) {
    const json sec = section_of(raw, "decomposition");
    check_keys(sec, "decomposition", {"gammas", "P0", "tol"});
    const auto g = number_list(sec, "gammas", {0.5, 1, 2, 4});
    for (std::size_t i = 0; i < g.size(); ++i) {
      require_positive(g[i], "decomposition.gammas");
      if (i && g[i] <= g[i - 1]) throw InvalidInput("config: decomposition.gammas must increase");
    }
    const double P0 = get_or<double>(sec, "P0", 1.0);
    const double tol = get_or<double>(sec, "tol", 1e-13);
    require_positive(P0, "decomposition.P0");
    require_positive(tol, "decomposition.tol");
    r["decomposition"] = {{"gammas", g}, {"P0", P0}, {"tol", tol}};
  }
  if (raw.contains("bayes")) {
    const json sec = section_of(raw, "bayes");
    check_keys(sec, "bayes", {"delta", "draws"});
    const double delta = get_or<double>(sec, "delta", 0.2);
    const auto draws = get_or<std::int64_t>(sec, "draws", 1000);
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("config: bayes.delta must lie in (0, 1)");
    if (draws < 1) throw InvalidInput("config: bayes.draws must be >= 1");
    r["bayes"] = {{"delta", delta}, {"draws", draws}};
  }

  c.resolved = r;
  c.hash = fnv1a64(r.dump());
  return c;
}

}  // namespace maxiset
