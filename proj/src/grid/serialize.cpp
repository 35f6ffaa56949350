#include "smallball/grid/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace smallball {

using nlohmann::json;

namespace {

json header(const Resolution& res, ScalarMode mode, const char* encoding) {
  json levels = json::array();
  for (int l : res.levels()) levels.push_back(l);
  return json{{"format", "gridfunction"}, {"version", 1},      {"d", res.dim()},
              {"levels", levels},         {"mode", mode_name(mode)}, {"encoding", encoding},
              {"count", res.cells()}};
}

Resolution resolution_from(const json& h) {
  std::vector<int> levels = h.at("levels").get<std::vector<int>>();
  if (static_cast<int>(levels.size()) != h.at("d").get<int>()) throw FormatError("levels do not match d");
  return Resolution(levels);
}

}  // namespace

void write_grid(std::ostream& os, const GridFunction<double>& f, GridEncoding enc) {
  if (enc == GridEncoding::Json) {
    json h = header(f.resolution(), ScalarMode::Float64, "json");
    h["values"] = std::vector<double>(f.values().begin(), f.values().end());
    os << h.dump() << '\n';
    return;
  }
  os << header(f.resolution(), ScalarMode::Float64, "binary").dump() << '\n';
  for (double v : f.values()) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
    os.write(b, 8);
  }
}

void write_grid(std::ostream& os, const GridFunction<Rational>& f) {
  json h = header(f.resolution(), ScalarMode::Rational, "json");
  json values = json::array();
  for (const auto& v : f.values()) values.push_back(to_string(v));
  h["values"] = std::move(values);
  os << h.dump() << '\n';
}

void write_grid(std::ostream& os, const GridFunction<Integer>& f) {
  json h = header(f.resolution(), ScalarMode::Integer, "json");
  h["values"] = std::vector<Integer>(f.values().begin(), f.values().end());
  os << h.dump() << '\n';
}

AnyGrid read_grid(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing grid header");
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad grid header: ") + e.what());
  }
  if (h.value("format", "") != "gridfunction") throw FormatError("not a gridfunction document");
  Resolution res = resolution_from(h);
  ScalarMode mode = parse_mode(h.at("mode").get<std::string>());
  std::string enc = h.at("encoding").get<std::string>();
  if (enc == "binary") {
    if (mode != ScalarMode::Float64) throw FormatError("binary payload must be float64");
    std::vector<double> v(res.cells());
    for (auto& x : v) {
      unsigned char b[8];
      if (!is.read(reinterpret_cast<char*>(b), 8)) throw FormatError("truncated binary payload");
      std::uint64_t bits = 0;
      for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
      x = std::bit_cast<double>(bits);
    }
    return GridFunction<double>(res, std::move(v));
  }
  if (enc != "json") throw FormatError("unknown encoding: " + enc);
  const json& values = h.at("values");
  if (values.size() != res.cells()) throw FormatError("value count does not match resolution");
  switch (mode) {
    case ScalarMode::Float64:
      return GridFunction<double>(res, values.get<std::vector<double>>());
    case ScalarMode::Integer:
      return GridFunction<Integer>(res, values.get<std::vector<Integer>>());
    case ScalarMode::Rational: {
      std::vector<Rational> v;
      v.reserve(values.size());
      for (const auto& s : values) v.push_back(parse_rational(s.get<std::string>()));
      return GridFunction<Rational>(res, std::move(v));
    }
  }
  throw FormatError("unreachable");
}

void save_grid(const std::string& path, const AnyGrid& f, GridEncoding enc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, GridFunction<double>>) {
          write_grid(os, g, enc);
        } else {
          write_grid(os, g);
        }
      },
      f);
  if (!os) throw IoError("write failed: " + path);
}

AnyGrid load_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return read_grid(is);
}

}  // namespace smallball
