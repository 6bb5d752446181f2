#include "mloop/config.hpp"

#include <fstream>
#include <numeric>
#include <set>

#include "mloop/errors.hpp"
#include "mloop/presets.hpp"

namespace mloop {

namespace {

using nlohmann::json;

void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &path) {
  for (const auto &[key, value] : j.items())
    if (!known.count(key))
      throw ConfigError("unknown config key '" + path + key + "'");
}

std::vector<Multidegree> parse_weights(const json &j, size_t n) {
  std::vector<Multidegree> out;
  if (!j.is_array())
    throw ConfigError("'weights' must be an array");
  for (const auto &entry : j) {
    if (entry.is_number_integer()) {
      if (n != 1)
        throw ConfigError("scalar weights need n = 1");
      out.push_back({entry.get<int>()});
    } else if (entry.is_array()) {
      Multidegree w;
      for (const auto &c : entry) {
        if (!c.is_number_integer())
          throw ConfigError("weight entries must be integers");
        w.push_back(c.get<int>());
      }
      if (w.size() != n)
        throw ConfigError("weight arity differs from n");
      out.push_back(std::move(w));
    } else {
      throw ConfigError("'weights' entries must be integers or integer arrays");
    }
  }
  return out;
}

RunConfig::AutomorphismSpec parse_automorphism(const json &j, const std::string &path) {
  RunConfig::AutomorphismSpec spec;
  if (j.is_string()) {
    spec.kind = j.get<std::string>();
    return spec;
  }
  if (!j.is_object())
    throw ConfigError("automorphism entries must be strings or objects (" + path + ")");
  reject_unknown(j, {"kind", "order", "exponents", "matrix"}, path + ".");
  spec.kind = j.value("kind", "");
  if (spec.kind.empty())
    throw ConfigError("automorphism object needs a 'kind' (" + path + ")");
  if (j.contains("order"))
    spec.order = j.at("order").get<unsigned>();
  if (j.contains("exponents"))
    for (const auto &e : j.at("exponents"))
      spec.exponents.push_back(e.get<long>());
  if (j.contains("matrix")) {
    for (const auto &row : j.at("matrix")) {
      std::vector<std::string> r;
      for (const auto &entry : row)
        r.push_back(entry.is_string() ? entry.get<std::string>() : entry.dump());
      spec.matrix.push_back(std::move(r));
    }
  }
  return spec;
}

} // namespace

RunConfig RunConfig::from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw ConfigError("config root must be a JSON object");
  reject_unknown(j, {"schema_version", "preset", "algebra", "structure_constants", "n", "r", "automorphisms",
                     "weights", "cutoff", "degree_cap", "trials", "density", "weierstrass"},
                 "");
  RunConfig cfg;
  if (!j.contains("schema_version"))
    throw ConfigError("missing 'schema_version'");
  cfg.schema_version = j.at("schema_version").get<int>();
  if (cfg.schema_version != 1)
    throw ConfigError("unsupported schema_version " + std::to_string(cfg.schema_version));

  cfg.preset = j.value("preset", "");
  cfg.algebra = j.value("algebra", "");
  if (j.contains("structure_constants")) {
    for (const auto &plane : j.at("structure_constants")) {
      std::vector<std::vector<std::string>> p;
      for (const auto &row : plane) {
        std::vector<std::string> r;
        for (const auto &entry : row)
          r.push_back(entry.is_string() ? entry.get<std::string>() : entry.dump());
        p.push_back(std::move(r));
      }
      cfg.structure_constants.push_back(std::move(p));
    }
  }
  if (!cfg.preset.empty() && (!cfg.algebra.empty() || !cfg.structure_constants.empty() || j.contains("n") ||
                              j.contains("r") || j.contains("automorphisms")))
    throw ConfigError("'preset' excludes the explicit algebra fields");
  if (cfg.preset.empty() && cfg.algebra.empty() && cfg.structure_constants.empty())
    throw ConfigError("need 'preset', 'algebra', or 'structure_constants'");
  if (!cfg.algebra.empty() && !cfg.structure_constants.empty())
    throw ConfigError("'algebra' and 'structure_constants' are mutually exclusive");

  cfg.n = j.value("n", 1u);
  if (cfg.n < 1)
    throw ConfigError("'n' must be >= 1");
  if (j.contains("r")) {
    for (const auto &e : j.at("r"))
      cfg.r.push_back(e.get<unsigned>());
  } else {
    cfg.r.assign(cfg.n, 1);
  }
  if (cfg.preset.empty() && cfg.r.size() != cfg.n)
    throw ConfigError("'r' must have n entries");

  if (j.contains("automorphisms")) {
    const auto &arr = j.at("automorphisms");
    if (!arr.is_array())
      throw ConfigError("'automorphisms' must be an array");
    for (size_t k = 0; k < arr.size(); ++k)
      cfg.automorphisms.push_back(parse_automorphism(arr[k], "automorphisms[" + std::to_string(k) + "]"));
  } else if (cfg.preset.empty()) {
    cfg.automorphisms.assign(cfg.n, AutomorphismSpec{"identity", 1, {}, {}});
  }
  if (cfg.preset.empty() && cfg.automorphisms.size() != cfg.n)
    throw ConfigError("'automorphisms' must have n entries");

  if (j.contains("weights"))
    cfg.weights = parse_weights(j.at("weights"), cfg.preset.empty() ? cfg.n : multiloop_preset(cfg.preset)->rank());
  cfg.cutoff = j.value("cutoff", 3);
  if (cfg.cutoff < 1)
    throw ConfigError("'cutoff' must be >= 1");
  cfg.degree_cap = j.value("degree_cap", 64);
  if (cfg.degree_cap < 1)
    throw ConfigError("'degree_cap' must be >= 1");
  cfg.trials = j.value("trials", 500);
  if (cfg.trials < 1)
    throw ConfigError("'trials' must be >= 1");

  if (j.contains("density")) {
    const auto &d = j.at("density");
    reject_unknown(d, {"function", "N", "k"}, "density.");
    cfg.density.function = d.value("function", cfg.density.function);
    if (d.contains("N")) {
      cfg.density.orders.clear();
      for (const auto &e : d.at("N"))
        cfg.density.orders.push_back(e.get<int>());
    }
    cfg.density.k = d.value("k", cfg.density.k);
    if (cfg.density.k < 0)
      throw ConfigError("'density.k' must be >= 0");
  }
  if (j.contains("weierstrass")) {
    const auto &w = j.at("weierstrass");
    reject_unknown(w, {"function", "mu", "N"}, "weierstrass.");
    cfg.weierstrass.function = w.value("function", cfg.weierstrass.function);
    cfg.weierstrass.mu = w.value("mu", cfg.weierstrass.mu);
    if (cfg.weierstrass.mu < 0)
      throw ConfigError("'weierstrass.mu' must be >= 0");
    if (w.contains("N")) {
      cfg.weierstrass.orders.clear();
      for (const auto &e : w.at("N"))
        cfg.weierstrass.orders.push_back(e.get<int>());
    }
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return from_json(j);
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  if (!preset.empty()) {
    j["preset"] = preset;
  } else {
    if (!algebra.empty())
      j["algebra"] = algebra;
    else
      j["structure_constants"] = structure_constants;
    j["n"] = n;
    j["r"] = r;
    nlohmann::ordered_json autos = nlohmann::ordered_json::array();
    for (const auto &a : automorphisms) {
      nlohmann::ordered_json spec;
      spec["kind"] = a.kind;
      if (a.kind == "diag_conj") {
        spec["order"] = a.order;
        spec["exponents"] = a.exponents;
      }
      if (a.kind == "matrix")
        spec["matrix"] = a.matrix;
      autos.push_back(spec);
    }
    j["automorphisms"] = autos;
  }
  j["weights"] = weights;
  j["cutoff"] = cutoff;
  j["degree_cap"] = degree_cap;
  j["trials"] = trials;
  j["density"] = {{"function", density.function}, {"N", density.orders}, {"k", density.k}};
  j["weierstrass"] = {{"function", weierstrass.function}, {"mu", weierstrass.mu}, {"N", weierstrass.orders}};
  return j;
}

MultiloopPtr RunConfig::build() const {
  if (!preset.empty())
    return multiloop_preset(preset);

  unsigned m = 1;
  for (unsigned rk : r)
    m = std::lcm(m, rk);
  auto field = CycloField::make(m);

  LieAlgebra L = [&] {
    if (!algebra.empty())
      return LieAlgebra::preset(algebra, field);
    size_t d = structure_constants.size();
    std::vector<std::vector<std::vector<Scalar>>> c(
        d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(field, 0L))));
    for (size_t i = 0; i < d; ++i) {
      if (structure_constants[i].size() != d)
        throw ConfigError("structure_constants must be a cubic array");
      for (size_t j2 = 0; j2 < d; ++j2) {
        if (structure_constants[i][j2].size() != d)
          throw ConfigError("structure_constants must be a cubic array");
        for (size_t k = 0; k < d; ++k)
          c[i][j2][k] = Scalar::parse(field, structure_constants[i][j2][k]);
      }
    }
    return LieAlgebra::from_structure_constants(field, std::move(c), "config");
  }();

  std::vector<FiniteAutomorphism> sigmas;
  for (const auto &spec : automorphisms) {
    if (spec.kind == "identity") {
      sigmas.push_back(FiniteAutomorphism::identity(L));
    } else if (spec.kind == "neg_transpose") {
      sigmas.push_back(FiniteAutomorphism::neg_transpose(L));
    } else if (spec.kind == "diag_conj") {
      sigmas.push_back(FiniteAutomorphism::diag_conjugation(L, spec.order, spec.exponents));
    } else if (spec.kind == "matrix") {
      size_t d = L.dim();
      if (spec.matrix.size() != d)
        throw ConfigError("automorphism matrix must be d x d");
      ExactMatrix A(field, d, d);
      for (size_t i = 0; i < d; ++i) {
        if (spec.matrix[i].size() != d)
          throw ConfigError("automorphism matrix must be d x d");
        for (size_t j2 = 0; j2 < d; ++j2)
          A.set(i, j2, Scalar::parse(field, spec.matrix[i][j2]));
      }
      if (spec.order < 1)
        throw ConfigError("matrix automorphism needs its order");
      sigmas.push_back(FiniteAutomorphism(L, std::move(A), spec.order));
    } else {
      throw ConfigError("unknown automorphism kind '" + spec.kind + "'");
    }
  }
  return MultiloopAlgebra::build(std::move(L), TorusAction(r, field), std::move(sigmas), "config");
}

} // namespace mloop
