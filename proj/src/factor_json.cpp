#include "trigspline/factor_json.hpp"

#include <map>

#include "trigspline/errors.hpp"

namespace trigspline {

namespace {

using nlohmann::json;

const std::map<FactorFamily, std::string> kFamilyNames = {
    {FactorFamily::ConstantPower, "ConstantPower"},
    {FactorFamily::SincPower, "SincPower"},
    {FactorFamily::Transformed, "Transformed"},
    {FactorFamily::BumpSine, "BumpSine"},
    {FactorFamily::BumpPoly, "BumpPoly"},
    {FactorFamily::Composite, "Composite"},
    {FactorFamily::Product, "Product"},
};

const std::map<TransformKind, std::string> kTransformNames = {
    {TransformKind::Sin, "Sin"},       {TransformKind::Arcsin, "Arcsin"},
    {TransformKind::Tan, "Tan"},       {TransformKind::Arctan, "Arctan"},
    {TransformKind::Log, "Log"},       {TransformKind::Exp, "Exp"},
    {TransformKind::Root, "Root"},
};

template <typename Enum>
Enum parse_tag(const std::map<Enum, std::string>& names, const std::string& s,
               const char* what) {
  for (const auto& [value, name] : names)
    if (name == s) return value;
  throw ConfigError(std::string("unknown ") + what + " tag: " + s);
}

}  // namespace

json factor_to_json(const FactorSpec& spec) {
  json j;
  j["family"] = kFamilyNames.at(spec.family);
  switch (spec.family) {
    case FactorFamily::ConstantPower:
    case FactorFamily::SincPower:
    case FactorFamily::BumpSine:
    case FactorFamily::BumpPoly:
      j["r"] = spec.r;
      j["alpha"] = spec.alpha;
      break;
    case FactorFamily::Transformed:
      j["r"] = spec.r;
      j["alpha"] = spec.alpha;
      j["transform"] = kTransformNames.at(spec.transform);
      j["base"] = spec.base == BaseFamily::ConstantPower ? "ConstantPower"
                                                         : "SincPower";
      if (spec.transform == TransformKind::Log ||
          spec.transform == TransformKind::Exp)
        j["a"] = spec.a;
      if (spec.transform == TransformKind::Root) j["m_root"] = spec.m_root;
      break;
    case FactorFamily::Composite:
      j["head"] = spec.head;
      j["tail"] = factor_to_json(*spec.tail);
      break;
    case FactorFamily::Product:
      j["operands"] = json::array(
          {factor_to_json(*spec.left), factor_to_json(*spec.right)});
      break;
  }
  if (spec.scale != 1.0) j["scale"] = spec.scale;
  if (spec.modulation == Modulation::Alternating) j["modulation"] = "alternating";
  if (spec.modulation == Modulation::EvenHalf) j["modulation"] = "even_half";
  return j;
}

FactorSpec factor_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("factor spec must be a JSON object");
  if (!j.contains("family")) throw ConfigError("factor spec needs a family");
  const auto family =
      parse_tag(kFamilyNames, j.at("family").get<std::string>(), "family");
  FactorSpec spec;
  switch (family) {
    case FactorFamily::ConstantPower:
      spec = FactorSpec::constant_power(j.at("alpha").get<double>(),
                                        j.at("r").get<int>());
      break;
    case FactorFamily::SincPower:
      spec = FactorSpec::sinc_power(j.at("alpha").get<double>(),
                                    j.at("r").get<int>());
      break;
    case FactorFamily::Transformed: {
      const auto kind = parse_tag(
          kTransformNames, j.at("transform").get<std::string>(), "transform");
      const std::string base_name = j.value("base", "ConstantPower");
      const BaseFamily base = base_name == "SincPower"
                                  ? BaseFamily::SincPower
                                  : BaseFamily::ConstantPower;
      if (base_name != "SincPower" && base_name != "ConstantPower")
        throw ConfigError("transform base must be ConstantPower or SincPower");
      spec = FactorSpec::transformed(kind, base, j.at("alpha").get<double>(),
                                     j.at("r").get<int>(), j.value("a", 2.0),
                                     j.value("m_root", 2));
      break;
    }
    case FactorFamily::BumpSine:
      spec = FactorSpec::bump_sine(j.at("alpha").get<double>(),
                                   j.at("r").get<int>());
      break;
    case FactorFamily::BumpPoly:
      spec = FactorSpec::bump_poly(j.at("alpha").get<double>(),
                                   j.at("r").get<int>());
      break;
    case FactorFamily::Composite:
      spec = FactorSpec::composite(j.at("head").get<std::vector<double>>(),
                                   factor_from_json(j.at("tail")));
      break;
    case FactorFamily::Product: {
      const auto& ops = j.at("operands");
      if (!ops.is_array() || ops.size() != 2)
        throw ConfigError("product factor needs exactly two operands");
      spec = FactorSpec::product(factor_from_json(ops[0]),
                                 factor_from_json(ops[1]));
      break;
    }
  }
  if (j.contains("scale")) spec = spec.scaled(j.at("scale").get<double>());
  if (j.contains("modulation")) {
    const std::string m = j.at("modulation").get<std::string>();
    if (m == "alternating")
      spec.modulation = Modulation::Alternating;
    else if (m == "even_half")
      spec.modulation = Modulation::EvenHalf;
    else
      throw ConfigError("unknown modulation tag: " + m);
  }
  spec.validate();
  return spec;
}

json run_config_to_json(const RunConfig& config) {
  const SplineConfig& s = config.spline;
  json j;
  j["N"] = s.node_count;
  j["I1"] = s.stitch_indicator;
  j["I2"] = s.interp_indicator;
  j["r"] = s.r;
  j["gamma"] = s.filters.gamma;
  j["eta"] = s.filters.eta;
  j["factor"] = factor_to_json(s.factor);
  j["sign_variant"] = s.variant == SignVariant::ConstantSign ? "ConstantSign"
                                                             : "SignChanging";
  j["epsilon"] = s.truncation.epsilon;
  j["m_max"] = s.truncation.m_max;
  j["samples"] = config.samples;
  j["format"] = config.format;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig config;
  SplineConfig& s = config.spline;
  s.node_count = j.value("N", 9);
  s.stitch_indicator = j.value("I1", 0);
  s.interp_indicator = j.value("I2", 0);
  s.r = j.value("r", 1);
  if (j.contains("gamma")) s.filters.gamma = j.at("gamma").get<std::array<double, 3>>();
  if (j.contains("eta")) s.filters.eta = j.at("eta").get<std::array<double, 3>>();
  if (j.contains("factor"))
    s.factor = factor_from_json(j.at("factor"));
  else
    s.factor = FactorSpec::constant_power(1.0, s.r);
  if (j.contains("sign_variant")) {
    const std::string v = j.at("sign_variant").get<std::string>();
    if (v == "ConstantSign")
      s.variant = SignVariant::ConstantSign;
    else if (v == "SignChanging")
      s.variant = SignVariant::SignChanging;
    else
      throw ConfigError("unknown sign_variant tag: " + v);
  }
  s.truncation.epsilon = j.value("epsilon", 1e-10);
  s.truncation.m_max = j.value("m_max", 1000000L);
  config.samples = j.value("samples", 721);
  config.format = j.value("format", "csv");
  if (config.format != "csv" && config.format != "json")
    throw ConfigError("format must be csv or json");
  if (config.samples < 1) throw ConfigError("samples must be >= 1");
  s.validate();
  return config;
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  try {
    return run_config_from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

}  // namespace trigspline
