#include "smallball/hyperbolic/coefficient_field.hpp"

namespace smallball {

using nlohmann::json;

const char* field_mode_name(FieldMode m) { return m == FieldMode::ExactVolume ? "exact-volume" : "extended"; }

FieldMode parse_field_mode(const std::string& s) {
  if (s == "exact-volume") return FieldMode::ExactVolume;
  if (s == "extended") return FieldMode::Extended;
  throw FormatError("unknown field mode: " + s);
}

AlphaKind parse_alpha_kind(const std::string& s) {
  if (s == "signs") return AlphaKind::Signs;
  if (s == "integers") return AlphaKind::Integers;
  if (s == "dyadic") return AlphaKind::Dyadic;
  throw FormatError("unknown coefficient kind: " + s);
}

std::vector<Shape> field_shapes(int n, int d, FieldMode mode) {
  if (mode == FieldMode::ExactVolume) return enumerate_shapes(n, d);
  if (d != 2) throw DomainError("extended coefficient fields are two-dimensional");
  std::vector<Shape> out;
  for (int k = n; k >= 0; --k)
    for (const Shape& r : enumerate_shapes(k, d)) out.push_back(r);
  return out;
}

namespace {

template <class S, class Encode>
json encode(const CoefficientField<S>& f, const char* scalar, Encode enc) {
  json shapes = json::array();
  for (std::size_t k = 0; k < f.shapes().size(); ++k) {
    json values = json::array();
    for (const auto& x : f.values(k)) values.push_back(enc(x));
    json r = json::array();
    for (int l : f.shapes()[k].levels()) r.push_back(l);
    shapes.push_back(json{{"shape", r}, {"values", values}});
  }
  return json{{"n", f.n()},
              {"d", f.d()},
              {"mode", field_mode_name(f.mode())},
              {"scalar", scalar},
              {"shapes", shapes}};
}

}  // namespace

json field_to_json(const CoefficientField<Rational>& f) {
  return encode(f, "rational", [](const Rational& x) { return to_string(x); });
}
json field_to_json(const CoefficientField<double>& f) {
  return encode(f, "float64", [](double x) { return x; });
}
json field_to_json(const CoefficientField<Integer>& f) {
  return encode(f, "integer", [](Integer x) { return x; });
}

CoefficientField<Rational> field_from_json(const json& j) {
  try {
    int n = j.at("n").get<int>();
    int d = j.at("d").get<int>();
    FieldMode mode = parse_field_mode(j.at("mode").get<std::string>());
    std::vector<Shape> shapes = field_shapes(n, d, mode);
    std::map<Shape, std::vector<Rational>> given;
    for (const auto& entry : j.at("shapes")) {
      Shape r(entry.at("shape").get<std::vector<int>>());
      std::vector<Rational> v;
      for (const auto& x : entry.at("values")) {
        if (x.is_string()) {
          v.push_back(parse_rational(x.get<std::string>()));
        } else if (x.is_number_integer()) {
          v.push_back(Rational(x.get<long>()));
        } else {
          v.push_back(Rational(x.get<double>()));
        }
      }
      given[r] = std::move(v);
    }
    std::vector<std::vector<Rational>> values;
    for (const Shape& r : shapes) {
      auto it = given.find(r);
      if (it == given.end()) throw FormatError("missing shape " + r.str());
      values.push_back(std::move(it->second));
    }
    if (given.size() != shapes.size()) throw FormatError("unexpected extra shapes");
    return CoefficientField<Rational>(n, d, mode, std::move(values));
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad coefficient field: ") + e.what());
  }
}

}  // namespace smallball
