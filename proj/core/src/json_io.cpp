#include "specdiv/json_io.hpp"

#include <numeric>
#include <sstream>

#include "specdiv/errors.hpp"

namespace specdiv {

namespace {

long get_long(const Json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw InvalidArgument(std::string(what) + ": expected an integer");
  }
  return j.get<long>();
}

Rat get_rat(const Json& j, const char* what) {
  if (!j.is_string()) {
    throw InvalidArgument(std::string(what) + ": expected a \"p/q\" string");
  }
  return rat_parse(j.get<std::string>());
}

}  // namespace

Json element_to_json(const FqmElement& g) {
  return Json::array({g.w, g.x, g.y, g.z});
}

FqmElement element_from_json(const DiscriminantForm& form, const Json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw InvalidArgument("element: expected [w, x, y, z]");
  }
  return reduce(form, get_long(j[0], "element"), get_long(j[1], "element"),
                get_long(j[2], "element"), get_long(j[3], "element"));
}

Json subgroup_to_json(const FqmSubgroup& H) {
  Json gens = Json::array();
  for (const auto& g : H.generators()) gens.push_back(element_to_json(g));
  return Json{{"N", H.form().N()},
              {"Nprime", H.form().Nprime()},
              {"generators", gens}};
}

FqmSubgroup subgroup_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("Nprime")) {
    throw InvalidArgument("subgroup: expected {N, Nprime, generators}");
  }
  DiscriminantForm form(get_long(j["N"], "subgroup N"),
                        get_long(j["Nprime"], "subgroup Nprime"));
  std::vector<FqmElement> gens;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) {
      throw InvalidArgument("subgroup: generators must be an array");
    }
    for (const auto& g : j["generators"]) {
      gens.push_back(element_from_json(form, g));
    }
  }
  return FqmSubgroup::from_generators(form, gens);
}

Json label_to_json(const CuspLabel& label) {
  return Json{{"star", label.star}, {"a", label.a}, {"c", label.c}};
}

CuspLabel label_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("star") || !j.contains("a") ||
      !j.contains("c")) {
    throw InvalidArgument("label: expected {star, a, c}");
  }
  return make_label(static_cast<int>(get_long(j["star"], "label star")),
                    get_long(j["a"], "label a"), get_long(j["c"], "label c"));
}

Json divisor_to_json(const BoundaryDivisor& d) {
  Json entries = Json::array();
  for (const auto& [label, mult] : d.entries) {
    entries.push_back(Json{{"star", label.star},
                           {"a", label.a},
                           {"c", label.c},
                           {"mult", rat_str(mult)}});
  }
  return Json{{"entries", entries}};
}

BoundaryDivisor divisor_from_json(const DiscriminantForm& form,
                                  const Json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    throw InvalidArgument("divisor: expected {entries: [...]}");
  }
  BoundaryDivisor d{form, {}};
  for (const auto& e : j["entries"]) {
    CuspLabel label = label_from_json(e);
    if (!e.contains("mult")) {
      throw InvalidArgument("divisor entry: missing mult");
    }
    d.entries[label] = get_rat(e["mult"], "divisor mult");
  }
  return d;
}

Json vector_to_json(const GroupAlgebraVector& v) {
  Json out = Json::object();
  for (const auto& [g, c] : v.coeffs) {
    if (c.is_zero()) continue;
    if (!c.is_rational()) {
      throw InvalidArgument("vector serialization requires rational entries");
    }
    std::ostringstream key;
    key << "[" << g.w << "," << g.x << "," << g.y << "," << g.z << "]";
    out[key.str()] = rat_str(c.rational_value());
  }
  return out;
}

Json certificate_to_json(const SpecialCertificate& cert) {
  Json coeffs = Json::object();
  for (size_t i = 0; i < cert.coefficients.size(); ++i) {
    if (cert.coefficients[i] == 0) continue;
    coeffs["H_" + std::to_string(i)] = rat_str(cert.coefficients[i]);
  }
  return Json{{"special", true},
              {"coefficients", coeffs},
              {"invariant_vector", vector_to_json(cert.invariant_vector)}};
}

Json series_to_json(const PuiseuxSeries& s) {
  long m = 1;
  for (const auto& [e, c] : s.terms) {
    m = std::lcm(m, e.get_den().get_si());
  }
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms) {
    Json coeff = Json::array();
    for (const auto& r : c.coeffs()) coeff.push_back(rat_str(r));
    terms.push_back(Json{{"exp", rat_str(e)}, {"coeff", coeff}});
  }
  return Json{{"m", m},
              {"conductor", s.field ? s.field->conductor() : 1},
              {"truncation", rat_str(s.truncation)},
              {"terms", terms}};
}

}  // namespace specdiv
