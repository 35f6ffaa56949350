// Command line driver: exact verification suites and experiment runners.
// Exit codes: 0 ok, 1 identity failure, 2 budget or validation, 3 I/O.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "smallball/coincidence/beck_gain.hpp"
#include "smallball/coincidence/nsd.hpp"
#include "smallball/coincidence/product_rule.hpp"
#include "smallball/core/version.hpp"
#include "smallball/discrepancy/discrepancy.hpp"
#include "smallball/grid/haar.hpp"
#include "smallball/hyperbolic/reports.hpp"
#include "smallball/riesz/short_product.hpp"
#include "smallball/riesz/temlyakov.hpp"

using nlohmann::json;
using namespace smallball;

namespace {

struct Config {
  std::string command;
  int n = 4;
  std::string n_range;
  int d = 3;
  int q = 2;
  double a = 1.0;
  double eps = 0.0;
  std::uint64_t seed = 1;
  bool exact = false;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  std::uint64_t budget = kDefaultTupleBudget;
  std::string p_list = "2";
  int trials = 20;
  std::string kind = "C2_restricted";
  int s = 0, t = 1, b = 0;
  std::string generator = "vdc";
  std::string N_list = "4..1024";
  std::string points;
  int level = 8;
  int vertices = 3;
  bool fault = false;
};

json config_json(const Config& c) {
  // only the knobs that shape the output
  return json{{"command", c.command}, {"n", c.n},           {"n_range", c.n_range}, {"d", c.d},
              {"q", c.q},             {"a", c.a},           {"eps", c.eps},         {"seed", c.seed},
              {"exact", c.exact},     {"threads", c.threads}, {"format", c.format}, {"budget", c.budget},
              {"p", c.p_list},        {"trials", c.trials}, {"kind", c.kind},       {"s", c.s},
              {"t", c.t},             {"b", c.b},           {"generator", c.generator}, {"N", c.N_list},
              {"points", c.points},   {"level", c.level},   {"vertices", c.vertices}};
}

class ValidationError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

long long parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not an integer: " + s);
  }
  if (used != s.size()) throw ValidationError("not an integer: " + s);
  return v;
}

// "a..b" (step 1, or doubling when `doubling`) or "x,y,z"
std::vector<long long> parse_range(const std::string& s, bool doubling = false) {
  std::vector<long long> out;
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    long long lo = parse_int(s.substr(0, dots)), hi = parse_int(s.substr(dots + 2));
    if (lo > hi || lo < 1) throw ValidationError("bad range: " + s);
    for (long long v = lo; v <= hi; v = doubling ? 2 * v : v + 1) out.push_back(v);
  } else {
    for (const auto& item : split(s, ',')) out.push_back(parse_int(item));
  }
  if (out.empty()) throw ValidationError("empty list: " + s);
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("not a number: " + item);
    }
  }
  if (out.empty()) throw ValidationError("empty list: " + s);
  return out;
}

json num(const Rational& x) { return to_string(x); }
json num(double x) { return x; }
json num(Integer x) { return x; }

RieszParams riesz_params(const Config& c) {
  return c.eps > 0 ? make_params(c.n, c.a, c.eps) : make_params_q(c.n, c.q, c.a);
}

json params_json(const RieszParams& p) {
  json blocks = json::array();
  for (std::size_t t = 0; t < p.blocks.size(); ++t)
    blocks.push_back({{"r1", {p.intervals[t].first, p.intervals[t].second}}, {"size", p.blocks[t].size()}});
  return {{"n", p.n},           {"q", p.q},     {"a", p.a},     {"eps", p.eps}, {"b", p.b},
          {"rho_tilde", p.rho_tilde}, {"rho_tilde_exact", to_string(p.rho_tilde_exact)},
          {"rho", p.rho},       {"blocks", blocks}};
}

// ---- verify ----

struct Suite {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::string detail;
};

std::uint64_t product_rule_work(int n_max, int d) {
  std::uint64_t total = 0;
  for (int n = 1; n <= n_max; ++n) {
    auto shapes = enumerate_shapes(n, d);
    const std::uint64_t cells = std::uint64_t{1} << n;
    for (std::size_t i = 0; i < shapes.size(); ++i)
      for (std::size_t j = i + 1; j < shapes.size(); ++j) {
        std::vector<Shape> two{shapes[i], shapes[j]};
        if (!strongly_distinct(two)) continue;
        total += cells * cells;
        for (std::size_t k = j + 1; k < shapes.size(); ++k) {
          std::vector<Shape> three{shapes[i], shapes[j], shapes[k]};
          if (strongly_distinct(three)) total += cells * cells * cells;
        }
      }
  }
  return total;
}

std::vector<Suite> run_verify(const Config& c) {
  std::vector<Suite> suites;
  auto fail = [](Suite& s, std::string why) {
    if (s.passed) s.detail = std::move(why);
    s.passed = false;
  };

  {
    Suite s{"product_rule"};
    const std::uint64_t work = product_rule_work(c.n, 3);
    if (work > c.budget) throw BudgetExceeded("product rule tuples exceed budget", work, c.budget);
    set_product_rule_fault(c.fault);
    auto rep = check_product_rule(c.n, 3);
    set_product_rule_fault(false);
    s.checks = rep.tuples;
    if (rep.failure) fail(s, "product rule disagrees for " + *rep.failure);
    suites.push_back(s);
  }

  const RieszParams p = riesz_params(c);
  const std::uint64_t tuples = expansion_tuple_count(p);
  if (tuples > c.budget) throw BudgetExceeded("expansion tuples exceed budget", tuples, c.budget);

  Rng rng(c.seed);
  std::vector<CoefficientField<Integer>> fields;
  for (int k = 0; k < 3; ++k)
    fields.push_back(random_field<Integer>(c.n, 3, FieldMode::ExactVolume, AlphaKind::Integers, rng));

  {
    Suite s{"temlyakov_2d"};
    for (int k = 0; k < 5; ++k) {
      auto alpha = random_field<Rational>(c.n, 2, FieldMode::ExactVolume, AlphaKind::Dyadic, rng);
      auto rep = verify_temlyakov<Rational>(alpha);
      ++s.checks;
      if (!rep.passed()) fail(s, "field " + std::to_string(k) + ": " + rep.failures.front());
    }
    suites.push_back(s);
  }
  {
    Suite s{"short_product_mean"};
    for (std::size_t k = 0; k < fields.size(); ++k) {
      auto psi = short_product_keyed<Rational>(block_sums(fields[k], p), p.rho_tilde_exact);
      ++s.checks;
      if (psi.mean() != Rational(1)) fail(s, "field " + std::to_string(k) + ": mean " + to_string(psi.mean()));
    }
    suites.push_back(s);
  }
  {
    Suite s{"duality"};
    for (std::size_t k = 0; k < fields.size(); ++k) {
      ++s.checks;
      if (!duality_certificate<Rational>(fields[k], p, c.budget).passed())
        fail(s, "field " + std::to_string(k) + ": certificate failed");
    }
    suites.push_back(s);
  }
  {
    Suite s{"decomposition"};
    for (std::size_t k = 0; k < fields.size(); ++k) {
      auto dec = sd_decomposition<Rational>(fields[k], p, c.budget);
      ++s.checks;
      if (!dec.identity_holds || !dec.degree_identity_holds)
        fail(s, "field " + std::to_string(k) + ": mismatch at cell " +
                    (dec.mismatch_cell ? std::to_string(*dec.mismatch_cell) : std::string("?")));
    }
    suites.push_back(s);
  }
  {
    Suite s{"gamma"};
    for (int t = 0; t < p.q; ++t) {
      auto rep = gamma_identity(fields[0], p, t);
      ++s.checks;
      if (!rep.identity_holds) fail(s, "block " + std::to_string(t));
    }
    suites.push_back(s);
  }
  {
    Suite s{"inclusion_exclusion"};
    auto alpha = random_field<Integer>(c.n, 3, FieldMode::ExactVolume, AlphaKind::Signs, rng);
    for (unsigned mask = 1; mask < (1u << p.q); ++mask) {
      std::vector<int> V;
      for (int v = 1; v <= p.q; ++v)
        if (mask >> (v - 1) & 1) V.push_back(v);
      if (V.size() > 3) continue;
      auto rep = inclusion_exclusion_check(V, alpha, p, c.budget);
      ++s.checks;
      if (!rep.holds || !rep.exact_partition_holds) fail(s, "V mask " + std::to_string(mask));
    }
    if (p.q >= 2) {
      std::vector<CoincidenceGraph> comps{CoincidenceGraph::from_cliques({1, 2}, {{1, 2}}, {})};
      if (p.q >= 3) comps.push_back(CoincidenceGraph(std::vector<int>{3}));
      ++s.checks;
      if (!factorization_check(comps, alpha, p, c.budget).holds) fail(s, "factorization");
    }
    suites.push_back(s);
  }
  {
    Suite s{"exponents"};
    for (int m = 4; m <= 5; ++m) {
      std::vector<int> V;
      for (int v = 1; v <= m; ++v) V.push_back(v);
      for (const auto& g : enumerate_admissible(V)) {
        if (!is_connected(g)) continue;
        ++s.checks;
        auto rep = exponent_recursion(g);
        if (rep.exponent > Rational(-1, 10)) fail(s, "exponent " + to_string(rep.exponent) + " for " + g.str());
      }
    }
    suites.push_back(s);
  }
  return suites;
}

// ---- output ----

struct Output {
  json result;
  std::string csv;  // table form, when the command has one
  int code = 0;
};

std::string csv_from_rows(const json& rows) {
  if (!rows.is_array() || rows.empty()) return "";
  std::ostringstream os;
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& v = r.at(keys[i]);
      os << (i ? "," : "") << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    os << '\n';
  }
  return os.str();
}

template <class S>
json temlyakov_json(const TemlyakovReport<S>& rep) {
  return {{"n", rep.n},
          {"min_value", num(rep.min_value)},
          {"mean", num(rep.mean)},
          {"inner", num(rep.inner)},
          {"expected", num(rep.expected)},
          {"nonnegative", rep.nonnegative},
          {"mean_is_one", rep.mean_is_one},
          {"identity_holds", rep.identity_holds},
          {"failures", rep.failures}};
}

Output cmd_verify(const Config& c) {
  Output o;
  auto suites = run_verify(c);
  json arr = json::array(), failures = json::array();
  for (const auto& s : suites) {
    arr.push_back({{"suite", s.name}, {"passed", s.passed}, {"checks", s.checks}, {"detail", s.detail}});
    if (!s.passed) failures.push_back(s.name + ": " + s.detail);
  }
  o.result = {{"suites", arr}, {"failures", failures}};
  o.csv = csv_from_rows(arr);
  o.code = failures.empty() ? 0 : 1;
  return o;
}

Output cmd_riesz2d(const Config& c) {
  Output o;
  Rng rng(c.seed);
  auto alpha = random_field<Rational>(c.n, 2, FieldMode::ExactVolume, AlphaKind::Dyadic, rng);
  json rep;
  bool ok;
  if (c.exact) {
    auto r = verify_temlyakov<Rational>(alpha);
    rep = temlyakov_json(r);
    ok = r.passed();
  } else {
    auto r = verify_temlyakov<double>(alpha.cast<double>());
    rep = temlyakov_json(r);
    ok = r.passed();
  }
  o.result = rep;
  o.csv = csv_from_rows(json::array({rep}));
  o.code = ok ? 0 : 1;
  return o;
}

template <class S>
json riesz3d_report(const CoefficientField<Integer>& alpha, const RieszParams& p, std::uint64_t budget, bool& ok) {
  std::vector<std::vector<int>> V_list;
  std::vector<int> all;
  for (int t = 0; t < p.q; ++t) {
    V_list.push_back({t});
    all.push_back(t);
  }
  if (p.q > 1) V_list.push_back(all);
  auto rep = norm_report<S>(alpha, p, V_list, {1.0, 2.0}, 1.0, budget);
  auto dual = duality_certificate<S>(alpha, p, budget);
  ok = dual.passed();
  json partial = json::array();
  for (const auto& row : rep.partial) partial.push_back({{"blocks", row.blocks}, {"r", row.r}, {"norm", row.norm}});
  return {{"mean", num(rep.mean)},
          {"negative_fraction", num(rep.negative_fraction)},
          {"l1", num(rep.l1)},
          {"l2", rep.l2},
          {"l1_sd", num(rep.l1_sd)},
          {"l1_nsd", num(rep.l1_nsd)},
          {"min_value", num(rep.min_value)},
          {"factor_lower_bound", num(rep.factor_lower_bound)},
          {"exp_reference", rep.exp_reference},
          {"rho_sq_block", rep.rho_sq_block},
          {"a_sq_q_power", rep.a_sq_q_power},
          {"partial", partial},
          {"duality",
           {{"sd1_inner", num(dual.sd1_inner)},
            {"sd1_expected", num(dual.sd1_expected)},
            {"psi_lower_bound", num(dual.psi.lower_bound)},
            {"sd_lower_bound", num(dual.sd.lower_bound)},
            {"sup_norm", num(dual.psi.sup_norm)},
            {"passed", dual.passed()}}}};
}

Output cmd_riesz3d(const Config& c) {
  Output o;
  if (c.d != 3) throw ValidationError("riesz3d needs --d 3");
  const RieszParams p = riesz_params(c);
  const std::uint64_t tuples = expansion_tuple_count(p);
  if (tuples > c.budget) throw BudgetExceeded("expansion tuples exceed budget", tuples, c.budget);
  Rng rng(c.seed);
  auto alpha = random_field<Integer>(c.n, 3, FieldMode::ExactVolume, AlphaKind::Signs, rng);
  bool ok = false;
  json rep = c.exact ? riesz3d_report<Rational>(alpha, p, c.budget, ok) : riesz3d_report<double>(alpha, p, c.budget, ok);
  o.result = {{"params", params_json(p)}, {"report", rep}};
  json flat = rep;
  flat.erase("partial");
  flat.erase("duality");
  flat["duality_passed"] = ok;
  o.csv = csv_from_rows(json::array({flat}));
  o.code = ok ? 0 : 1;
  return o;
}

Output cmd_beck_gain(const Config& c) {
  Output o;
  BeckGainConfig cfg;
  cfg.kind = parse_kind(c.kind);
  cfg.n_list.clear();
  for (auto v : parse_range(c.n_range.empty() ? "4..8" : c.n_range)) cfg.n_list.push_back(static_cast<int>(v));
  cfg.p_list = parse_doubles(c.p_list);
  cfg.q = c.q;
  cfg.s = c.s;
  cfg.t = c.t;
  cfg.b = c.b;
  cfg.a = static_cast<int>(c.a);
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.budget = c.budget;
  auto table = beck_gain_measure(cfg);
  json rows = json::array(), fits = json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"n", r.n},
                    {"p", r.p},
                    {"tuples", r.tuples},
                    {"norm", r.norm},
                    {"moment", to_string(r.moment)},
                    {"normalized", r.normalized},
                    {"trivial", r.trivial}});
  for (const auto& f : table.fits)
    fits.push_back({{"p", f.p}, {"fitted_exponent", f.fitted_exponent}, {"predicted_exponent", f.predicted_exponent}});
  o.result = {{"kind", kind_name(cfg.kind)}, {"rows", rows}, {"fits", fits}};
  o.csv = table.csv();
  return o;
}

Output cmd_sharpness(const Config& c) {
  Output o;
  std::vector<int> ns;
  for (auto v : parse_range(c.n_range.empty() ? "2..6" : c.n_range)) ns.push_back(static_cast<int>(v));
  if (c.trials < 1) throw ValidationError("--trials must be positive");
  auto rep = sharpness_experiment(ns, c.d, c.trials, c.seed, c.threads);
  json rows = json::array();
  bool ok = true;
  for (const auto& r : rep.rows) {
    rows.push_back({{"n", r.n},
                    {"shapes", r.shape_count},
                    {"mean_sup", r.mean_sup},
                    {"max_sup", r.max_sup},
                    {"coefficient_sums_ok", r.coefficient_sums_ok}});
    ok = ok && r.coefficient_sums_ok;
  }
  o.result = {{"rows", rows},
              {"fitted_exponent", rep.fitted_exponent},
              {"reference_low", rep.reference_low},
              {"reference_high", rep.reference_high}};
  o.csv = csv_from_rows(rows);
  o.code = ok ? 0 : 1;
  return o;
}

Output cmd_lp_profile(const Config& c) {
  Output o;
  Rng rng(c.seed);
  auto alpha = random_field<Integer>(c.n, c.d, FieldMode::ExactVolume, AlphaKind::Signs, rng);
  auto ps = parse_doubles(c.p_list);
  auto fd = alpha.cast<double>();
  LPProfile prof = c.exact ? lp_profile(hyperbolic_sum(alpha.cast<Rational>()), ps) : lp_profile(hyperbolic_sum(fd), ps);
  json rows = json::array();
  for (const auto& r : prof.rows)
    rows.push_back({{"p", r.p},
                    {"f_norm", r.f_norm},
                    {"s_norm", r.s_norm},
                    {"ratio", r.ratio},
                    {"ratio_over_sqrt_p", r.ratio_over_sqrt_p}});
  int p_max = 2;
  for (double p : ps) p_max = std::max(p_max, static_cast<int>(std::ceil(p)));
  auto expo = exp_integrability_profile(fd, p_max);
  json erows = json::array();
  for (const auto& r : expo.rows) erows.push_back({{"p", r.p}, {"lp_norm", r.lp_norm}, {"normalized", r.normalized}});
  o.result = {{"rows", rows},
              {"exp_integrability",
               {{"square_function_sup", expo.square_function_sup},
                {"rows", erows},
                {"sup_normalized", expo.sup_normalized}}}};
  o.csv = csv_from_rows(rows);
  return o;
}

Output cmd_discrepancy(const Config& c) {
  Output o;
  if (!c.points.empty()) {
    std::ifstream in(c.points);
    if (!in) throw IoError("cannot open " + c.points);
    PointSet A = read_points_csv(in);
    auto rep = discrepancy_sup(A, c.budget, false, c.level);
    json lp = json::array();
    for (double p : parse_doubles(c.p_list)) {
      auto e = discrepancy_lp(A, p, c.level);
      lp.push_back({{"p", e.p},
                    {"level", e.grid_level},
                    {"value", e.value},
                    {"error_bound", e.error_bound},
                    {"bound_rigorous", e.bound_rigorous}});
    }
    json sc = json::array(), ic = json::array();
    for (const auto& x : rep.sup_corner) sc.push_back(to_string(x));
    for (const auto& x : rep.inf_corner) ic.push_back(to_string(x));
    o.result = {{"N", A.size()},
                {"d", A.d},
                {"sup", to_string(rep.sup)},
                {"inf", to_string(rep.inf)},
                {"norm", to_string(rep.norm)},
                {"sup_corner", sc},
                {"inf_corner", ic},
                {"corners", rep.corners},
                {"l2_squared", to_string(l2_squared_warnock(A))},
                {"lp", lp}};
    o.csv = csv_from_rows(lp);
    return o;
  }
  std::vector<std::size_t> Ns;
  for (auto v : parse_range(c.N_list, true)) Ns.push_back(static_cast<std::size_t>(v));
  auto rep = scaling_report(c.generator, Ns, c.d == 3 && c.generator == "vdc" ? 2 : c.d, c.seed, c.budget);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"N", r.N}, {"log_N", r.log_n}, {"sup_norm", r.sup_norm}, {"sup_exact", r.sup_exact},
                    {"l2_norm", r.l2_norm}});
  o.result = {{"generator", rep.generator},
              {"rows", rows},
              {"sup_exponent", rep.sup_exponent},
              {"l2_exponent", rep.l2_exponent}};
  o.csv = rep.csv();
  return o;
}

Output cmd_graphs(const Config& c) {
  Output o;
  if (c.vertices < 0 || c.vertices > 6) throw ValidationError("--vertices must be 0..6");
  std::vector<int> V;
  for (int v = 1; v <= c.vertices; ++v) V.push_back(v);
  auto lat = graph_lattice(V);
  json arr = json::array(), rows = json::array();
  for (std::size_t i = 0; i < lat.graphs.size(); ++i) {
    const auto& g = lat.graphs[i];
    const bool conn = is_connected(g);
    json e = nullptr;
    if (conn && g.vertices().size() >= 2) e = to_string(exponent_recursion(g).exponent);
    json entry = graph_to_json(g);
    entry["connected"] = conn;
    entry["prime"] = static_cast<bool>(lat.prime[i]);
    entry["grade"] = lat.grade[i];
    entry["coefficient"] = lat.coefficient[i];
    entry["exponent"] = e;
    arr.push_back(entry);
    rows.push_back({{"graph", g.str()},
                    {"connected", conn},
                    {"prime", static_cast<bool>(lat.prime[i])},
                    {"grade", lat.grade[i]},
                    {"coefficient", lat.coefficient[i]},
                    {"exponent", e.is_null() ? std::string("") : e.get<std::string>()}});
  }
  o.result = {{"vertices", V}, {"graphs", arr}};
  o.csv = csv_from_rows(rows);
  return o;
}

void write_output(const Config& c, const Output& o) {
  const char* mode = (c.exact || c.command == "verify" || c.command == "graphs") ? "exact" : "float";
  std::string text;
  if (c.format == "csv") {
    text = "# smallball " + std::string(kVersion) + " mode=" + mode + " config=" + config_json(c).dump() + "\n" + o.csv;
  } else {
    json doc{{"version", kVersion}, {"mode", mode}, {"config", config_json(c)}, {"result", o.result}};
    text = doc.dump(2) + "\n";
  }
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw IoError("cannot write " + c.out);
  f << text;
  if (!f) throw IoError("write failed: " + c.out);
}

// File values fill options not given on the command line.
void apply_config_file(const std::string& path, CLI::App& app, std::map<std::string, std::function<void(const json&)>>& setters) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto s = setters.find(it.key());
    if (s == setters.end()) throw ValidationError("unknown config key: " + it.key());
    bool given = false;
    for (auto* sub : app.get_subcommands())
      if (auto* opt = sub->get_option_no_throw("--" + it.key()); opt && opt->count() > 0) given = true;
    if (auto* opt = app.get_option_no_throw("--" + it.key()); opt && opt->count() > 0) given = true;
    if (!given) {
      try {
        s->second(it.value());
      } catch (const json::exception& e) {
        throw ValidationError("config key " + it.key() + ": " + e.what());
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  std::string config_path;
  CLI::App app{"Small ball inequality experiments and exact verification"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--n", c.n, "level sum n")->check(CLI::Range(0, 30));
  app.add_option("--n-range", c.n_range, "list of n: a..b or comma separated");
  app.add_option("--d", c.d, "dimension")->check(CLI::Range(1, 3));
  app.add_option("--q", c.q, "number of blocks")->check(CLI::PositiveNumber);
  app.add_option("--a", c.a, "scale parameter a");
  app.add_option("--eps", c.eps, "q = round(a n^eps) when positive");
  app.add_option("--seed", c.seed, "random seed");
  app.add_flag("--exact", c.exact, "rational arithmetic");
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output file (stdout when empty)");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--budget", c.budget, "work budget");
  app.add_option("--p", c.p_list, "comma separated exponents");
  app.add_option("--trials", c.trials, "trials per n");
  app.add_option("--kind", c.kind, "coincidence class: C2, C2_restricted, C2b, B4, B4a");
  app.add_option("--s", c.s, "first block of the restricted class");
  app.add_option("--t", c.t, "second block of the restricted class");
  app.add_option("--b", c.b, "fixed first level for C2b");
  app.add_option("--generator", c.generator, "vdc, halton or random")->check(CLI::IsMember({"vdc", "halton", "random"}));
  app.add_option("--N", c.N_list, "point counts: a..b doubles, or comma separated");
  app.add_option("--points", c.points, "CSV point file");
  app.add_option("--level", c.level, "grid level for L^p estimates");
  app.add_option("--vertices", c.vertices, "vertex count for graph enumeration");
  app.add_option("--config", config_path, "JSON config; flags override it");
  app.add_flag("--inject-product-rule-fault", c.fault)->group("");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify", "run the exact identity suites"},
      {"riesz2d", "planar product identity on a random field"},
      {"riesz3d", "short Riesz product report in d = 3"},
      {"beck-gain", "coincidence class norms against n"},
      {"sharpness", "sup norm growth of random sign sums"},
      {"lp-profile", "L^p norms against the square function"},
      {"discrepancy", "star discrepancy of point sets"},
      {"graphs", "admissible coincidence graphs"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::map<std::string, std::function<void(const json&)>> setters{
      {"n", [&](const json& v) { c.n = v.get<int>(); }},
      {"n-range", [&](const json& v) { c.n_range = v.get<std::string>(); }},
      {"d", [&](const json& v) { c.d = v.get<int>(); }},
      {"q", [&](const json& v) { c.q = v.get<int>(); }},
      {"a", [&](const json& v) { c.a = v.get<double>(); }},
      {"eps", [&](const json& v) { c.eps = v.get<double>(); }},
      {"seed", [&](const json& v) { c.seed = v.get<std::uint64_t>(); }},
      {"exact", [&](const json& v) { c.exact = v.get<bool>(); }},
      {"threads", [&](const json& v) { c.threads = v.get<unsigned>(); }},
      {"out", [&](const json& v) { c.out = v.get<std::string>(); }},
      {"format", [&](const json& v) { c.format = v.get<std::string>(); }},
      {"budget", [&](const json& v) { c.budget = v.get<std::uint64_t>(); }},
      {"p", [&](const json& v) { c.p_list = v.get<std::string>(); }},
      {"trials", [&](const json& v) { c.trials = v.get<int>(); }},
      {"kind", [&](const json& v) { c.kind = v.get<std::string>(); }},
      {"s", [&](const json& v) { c.s = v.get<int>(); }},
      {"t", [&](const json& v) { c.t = v.get<int>(); }},
      {"b", [&](const json& v) { c.b = v.get<int>(); }},
      {"generator", [&](const json& v) { c.generator = v.get<std::string>(); }},
      {"N", [&](const json& v) { c.N_list = v.get<std::string>(); }},
      {"points", [&](const json& v) { c.points = v.get<std::string>(); }},
      {"level", [&](const json& v) { c.level = v.get<int>(); }},
      {"vertices", [&](const json& v) { c.vertices = v.get<int>(); }}};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto report_error = [&](const std::string& kind, const std::string& msg, int code, json extra = json::object()) {
    json err{{"version", kVersion}, {"error", kind}, {"message", msg}, {"config", config_json(c)}};
    err.update(extra);
    std::cerr << err.dump(2) << "\n";
    return code;
  };

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) apply_config_file(config_path, app, setters);
    if (c.format != "json" && c.format != "csv") throw ValidationError("--format must be json or csv");
    if (c.threads < 1) throw ValidationError("--threads must be positive");
    Output o;
    if (c.command == "verify") o = cmd_verify(c);
    else if (c.command == "riesz2d") o = cmd_riesz2d(c);
    else if (c.command == "riesz3d") o = cmd_riesz3d(c);
    else if (c.command == "beck-gain") o = cmd_beck_gain(c);
    else if (c.command == "sharpness") o = cmd_sharpness(c);
    else if (c.command == "lp-profile") o = cmd_lp_profile(c);
    else if (c.command == "discrepancy") o = cmd_discrepancy(c);
    else o = cmd_graphs(c);
    write_output(c, o);
    if (o.code == 1) {
      std::string names;
      if (o.result.contains("failures"))
        for (const auto& f : o.result["failures"]) names += f.get<std::string>() + "\n";
      std::cerr << "identity failure\n" << names;
    }
    return o.code;
  } catch (const BudgetExceeded& e) {
    return report_error("budget", e.what(), 2, {{"estimate", e.estimate()}, {"budget", e.budget()}});
  } catch (const IoError& e) {
    return report_error("io", e.what(), 3);
  } catch (const FormatError& e) {
    return report_error("format", e.what(), 3);
  } catch (const Error& e) {
    return report_error("validation", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 2);
  }
}
