#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "fracvex/alpha.hpp"
#include "fracvex/alpha_polynomial.hpp"
#include "fracvex/calculus.hpp"
#include "fracvex/convexity.hpp"
#include "fracvex/error.hpp"
#include "fracvex/expr.hpp"
#include "fracvex/inequalities.hpp"
#include "fracvex/special.hpp"

namespace fracvex::cli {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Settings: CLI flags > config file > built-in defaults.

class Settings {
 public:
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void set_default(const std::string& key, std::string value) { values_.emplace(key, std::move(value)); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw PreconditionError("missing required option --" + key);
    return it->second;
  }

  std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  double number(const std::string& key) const { return to_number(key, text(key)); }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v != std::floor(v)) throw PreconditionError("--" + key + " must be an integer");
    return static_cast<int>(v);
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_number(key, item));
    if (out.empty()) throw PreconditionError("--" + key + " needs at least one value");
    return out;
  }

  static double to_number(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw PreconditionError("--" + key + ": not a number '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw PreconditionError("--" + key + ": not a number '" + s + "'");
    return v;
  }

 private:
  std::map<std::string, std::string> values_;
};

std::string json_scalar_to_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      if (!out.empty()) out += ',';
      out += json_scalar_to_text(item);
    }
    return out;
  }
  return v.dump();
}

void merge_config(Settings& settings, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("invalid config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw PreconditionError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    if (!settings.has(key)) settings.set(key, json_scalar_to_text(value));
  }
}

// ---------------------------------------------------------------------------
// Rendering

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json witnesses_json(const std::vector<InequalityWitness>& ws) {
  json arr = json::array();
  for (const auto& w : ws) {
    json obj;
    obj["label"] = w.label;
    json values = json::object();
    for (const auto& [k, v] : w.values) values[k] = number_or_null(v);
    obj["values"] = values;
    arr.push_back(obj);
  }
  return arr;
}

json report_json(const InequalityReport& r, const std::optional<Expr>& expr) {
  json j;
  j["check"] = r.check;
  j["alpha"] = r.alpha;
  j["mode"] = to_string(r.mode);
  j["lhs"] = number_or_null(r.lhs);
  j["mid"] = r.mid ? number_or_null(*r.mid) : json(nullptr);
  j["rhs"] = number_or_null(r.rhs);
  json margins = json::array();
  for (double m : r.margins) margins.push_back(number_or_null(m));
  j["margins"] = margins;
  j["satisfied"] = r.satisfied;
  j["tolerance"] = r.tolerance;
  j["witnesses"] = witnesses_json(r.witnesses);
  j["grid"] = r.grid ? json(*r.grid) : json(nullptr);
  if (expr) j["expr"] = expr->to_string();
  return j;
}

json report_json(const ConvexityReport& r, const Expr& expr) {
  json j;
  j["check"] = "convexity:" + r.check;
  j["alpha"] = r.alpha;
  j["mode"] = to_string(r.mode);
  j["lhs"] = nullptr;
  j["mid"] = nullptr;
  j["rhs"] = nullptr;
  j["margins"] = json::array({number_or_null(r.min_margin)});
  j["satisfied"] = r.verdict == Verdict::convex || r.verdict == Verdict::strictly_convex;
  j["tolerance"] = r.tolerance;
  json ws = json::array();
  for (const auto& w : r.witnesses) {
    json o;
    o["x1"] = number_or_null(w.x1);
    o["lambda"] = number_or_null(w.lambda);
    o["x2"] = number_or_null(w.x2);
    o["lhs"] = number_or_null(w.lhs);
    o["rhs"] = number_or_null(w.rhs);
    ws.push_back(o);
  }
  j["witnesses"] = ws;
  j["grid"] = r.grid;
  j["expr"] = expr.to_string();
  j["verdict"] = to_string(r.verdict);
  j["concave"] = r.concave;
  j["violations"] = r.violations;
  j["reason"] = r.reason.empty() ? json(nullptr) : json(r.reason);
  return j;
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return csv_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\r\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

const char* kReportColumns = "alpha,mode,lhs,mid,rhs,margin1,margin2,satisfied";

std::string report_csv_row(const json& r) {
  const json& margins = r["margins"];
  std::string row = csv_field(r["alpha"]) + "," + csv_field(r["mode"]) + "," +
                    csv_field(r["lhs"]) + "," + csv_field(r["mid"]) + "," + csv_field(r["rhs"]);
  row += "," + (margins.size() > 0 ? csv_field(margins[0]) : std::string());
  row += "," + (margins.size() > 1 ? csv_field(margins[1]) : std::string());
  row += "," + csv_field(r["satisfied"]);
  return row;
}

bool is_report(const json& j) { return j.is_object() && j.contains("satisfied") && j.contains("margins"); }

std::string render_text(const json& j) {
  std::ostringstream os;
  if (j.is_array()) {
    for (const auto& item : j) os << render_text(item) << "\n";
    return os.str();
  }
  for (const auto& [key, value] : j.items()) {
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return os.str();
}

std::string render_csv(const json& j) {
  std::ostringstream os;
  if (is_report(j) || (j.is_array() && !j.empty() && is_report(j[0]))) {
    os << kReportColumns << "\n";
    if (j.is_array()) {
      for (const auto& item : j) os << report_csv_row(item) << "\n";
    } else {
      os << report_csv_row(j) << "\n";
    }
    return os.str();
  }
  std::string header;
  std::string row;
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured()) continue;
    header += (header.empty() ? "" : ",") + key;
    row += (row.empty() && header == key ? "" : ",") + csv_field(value);
  }
  os << header << "\n" << row << "\n";
  return os.str();
}

std::string render(const json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  if (format == "text") return render_text(j);
  if (format == "csv") return render_csv(j);
  throw PreconditionError("unknown format '" + format + "' (expected json|csv|text)");
}

void emit(const std::string& payload, const Settings& s, std::ostream& out) {
  if (s.has("out")) {
    std::ofstream file(s.text("out"), std::ios::binary);
    if (!file) throw PreconditionError("cannot write output file '" + s.text("out") + "'");
    file << payload;
    if (!file) throw PreconditionError("cannot write output file '" + s.text("out") + "'");
  } else {
    out << payload;
  }
}

// ---------------------------------------------------------------------------
// Commands

Alpha alpha_of(const Settings& s) { return Alpha(s.number_or("alpha", 1.0)); }
Mode mode_of(const Settings& s, Mode fallback = Mode::real) {
  return s.has("mode") ? parse_mode(s.text("mode")) : fallback;
}
std::string format_of(const Settings& s) { return s.text_or("format", "json"); }

int cmd_eval(const Settings& s, std::ostream& out) {
  const Expr e = parse(s.text("expr"));
  const Alpha alpha = alpha_of(s);
  const Mode mode = mode_of(s);
  const double x = s.number("at");
  json j;
  j["command"] = "eval";
  j["expr"] = e.to_string();
  j["alpha"] = alpha.value();
  j["mode"] = to_string(mode);
  j["at"] = x;
  if (mode == Mode::real) {
    j["value"] = number_or_null(eval_real(e, x, alpha));
    j["base"] = nullptr;
  } else {
    const FractalNumber v = eval_fractal(e, x, alpha);
    j["value"] = number_or_null(v.display());
    j["base"] = number_or_null(v.base());
  }
  emit(render(j, format_of(s)), s, out);
  return kExitOk;
}

int cmd_diff(const Settings& s, std::ostream& out) {
  const Expr e = parse(s.text("expr"));
  const Alpha alpha = alpha_of(s);
  const int order = s.integer_or("order", 1);
  const DiffResult d = alpha_diff(e, alpha, order);
  json j;
  j["command"] = "diff";
  j["expr"] = e.to_string();
  j["alpha"] = alpha.value();
  j["order"] = d.order;
  j["derivative"] = d.derivative.to_string();
  if (s.has("at")) {
    const double x = s.number("at");
    j["at"] = x;
    j["value"] = number_or_null(eval_real(d.derivative, x, alpha));
  } else {
    j["at"] = nullptr;
    j["value"] = nullptr;
  }
  emit(render(j, format_of(s)), s, out);
  return kExitOk;
}

int cmd_integrate(const Settings& s, std::ostream& out) {
  const Expr e = parse(s.text("expr"));
  const Alpha alpha = alpha_of(s);
  const Mode mode = mode_of(s);
  const double a = s.number("from");
  const double b = s.number("to");
  json j;
  j["command"] = "integrate";
  j["expr"] = e.to_string();
  j["alpha"] = alpha.value();
  j["mode"] = to_string(mode);
  j["from"] = a;
  j["to"] = b;
  if (mode == Mode::real) {
    j["value"] = number_or_null(lfi(e, a, b, alpha));
    j["base"] = nullptr;
  } else {
    const FractalNumber v = lfi_fractal(e, a, b, alpha);
    j["value"] = number_or_null(v.display());
    j["base"] = number_or_null(v.base());
  }
  emit(render(j, format_of(s)), s, out);
  return kExitOk;
}

int cmd_taylor(const Settings& s, std::ostream& out) {
  const Expr e = parse(s.text("expr"));
  const Alpha alpha = alpha_of(s);
  const double x0 = s.number_or("at", 0.0);
  const int n = s.integer_or("order", 2);
  Interval interval{x0, x0 + 1.0, false};
  if (s.has("interval")) interval = Interval::parse(s.text("interval"));
  const TaylorResult t = taylor_alpha(e, x0, n, alpha, interval.lo, interval.hi);
  json terms = json::array();
  for (const auto& term : t.polynomial.terms()) {
    json o;
    o["k"] = term.k.to_string();
    o["coeff"] = number_or_null(term.coeff);
    terms.push_back(o);
  }
  json j;
  j["command"] = "taylor";
  j["expr"] = e.to_string();
  j["alpha"] = alpha.value();
  j["at"] = x0;
  j["order"] = n;
  j["polynomial"] = t.polynomial.to_expr().to_string();
  j["terms"] = terms;
  j["remainder_bound"] = number_or_null(t.remainder_bound);
  j["interval"] = Interval{t.lo, t.hi, false}.to_string();
  emit(render(j, format_of(s)), s, out);
  return kExitOk;
}

std::pair<int, int> grid_of(const Settings& s, int points, int lambdas) {
  if (!s.has("grid")) return {points, lambdas};
  const std::string g = s.text("grid");
  const auto x = g.find('x');
  const double p = Settings::to_number("grid", g.substr(0, x));
  const double l = x == std::string::npos ? lambdas : Settings::to_number("grid", g.substr(x + 1));
  if (p < 1 || l < 2 || p != std::floor(p) || l != std::floor(l)) {
    throw PreconditionError("--grid expects N or NxL with positive integers");
  }
  return {static_cast<int>(p), static_cast<int>(l)};
}

bool convex_verdict(const ConvexityReport& r) {
  return r.verdict == Verdict::convex || r.verdict == Verdict::strictly_convex;
}

int cmd_convexity(const Settings& s, std::ostream& out) {
  const Expr e = parse(s.text("expr"));
  const Alpha alpha = alpha_of(s);
  const std::string method = s.text_or("method", "chord");
  if (method == "slope") {
    const auto triple = s.list("triple");
    if (triple.size() != 3) throw PreconditionError("--triple expects x1,x2,x3");
    const SlopeDiag d = slope_diag(e, triple[0], triple[1], triple[2], alpha);
    json j;
    j["command"] = "convexity";
    j["method"] = "slope";
    j["expr"] = e.to_string();
    j["alpha"] = alpha.value();
    j["triple"] = triple;
    j["real"] = {{"lhs", number_or_null(d.real.lhs)}, {"rhs", number_or_null(d.real.rhs)},
                 {"holds", d.real.holds}};
    if (d.fractal) {
      j["fractal"] = {{"lhs", number_or_null(d.fractal->lhs)},
                      {"rhs", number_or_null(d.fractal->rhs)},
                      {"holds", d.fractal->holds}};
    } else {
      j["fractal"] = nullptr;
    }
    emit(render(j, format_of(s)), s, out);
    return d.real.holds ? kExitOk : kExitViolated;
  }
  const Interval interval = Interval::parse(s.text("interval"));
  const auto make_chord = [&] {
    ChordOptions o;
    o.mode = mode_of(s);
    std::tie(o.points, o.lambdas) = grid_of(s, o.points, o.lambdas);
    o.strict = s.text_or("strict", "false") == "true";
    o.tolerance = s.number_or("tol", o.tolerance);
    return o;
  };
  const auto make_deriv = [&](int default_points) {
    DerivativeCheckOptions o;
    o.points = grid_of(s, default_points, 2).first;
    o.tolerance = s.number_or("tol", o.tolerance);
    return o;
  };
  if (method == "chord") {
    const ConvexityReport r = chord_check(e, interval, alpha, make_chord());
    emit(render(report_json(r, e), format_of(s)), s, out);
    return convex_verdict(r) ? kExitOk : kExitViolated;
  }
  if (method == "gradient" || method == "support" || method == "second") {
    ConvexityReport r;
    if (method == "gradient") r = grad_monotone_check(e, interval, alpha, make_deriv(201));
    if (method == "support") r = support_line_check(e, interval, alpha, make_deriv(50));
    if (method == "second") r = second_deriv_check(e, interval, alpha, make_deriv(201));
    emit(render(report_json(r, e), format_of(s)), s, out);
    return convex_verdict(r) ? kExitOk : kExitViolated;
  }
  if (method == "all") {
    const CrossCheck c = cross_check(e, interval, alpha);
    json arr = json::array({report_json(c.chord, e), report_json(c.gradient, e),
                            report_json(c.support, e), report_json(c.second, e)});
    emit(render(arr, format_of(s)), s, out);
    return convex_verdict(c.chord) ? kExitOk : kExitViolated;
  }
  throw PreconditionError("unknown --method '" + method +
                          "' (expected chord|gradient|support|second|all|slope)");
}

// One inequality verification at a given alpha; shared by verify and sweep.
struct Verification {
  InequalityReport report;
  std::optional<Expr> expr;
};

Verification verify_once(const std::string& subject, const Settings& s, Alpha alpha) {
  const double tol = s.number_or("tol", kDefaultTolerance);
  if (subject == "jensen") {
    const Expr e = parse(s.text("expr"));
    const auto xs = s.list("xs");
    std::vector<double> weights;
    if (s.has("weights")) {
      weights = s.list("weights");
    } else {
      weights.assign(xs.size(), 1.0 / static_cast<double>(xs.size()));
    }
    return {jensen(e, xs, weights, alpha, mode_of(s), tol), e};
  }
  if (subject == "hh") {
    const Expr e = parse(s.text("expr"));
    const Interval iv = Interval::parse(s.text("interval"));
    return {hermite_hadamard(e, iv.lo, iv.hi, alpha, mode_of(s), tol), e};
  }
  if (subject == "cs") {
    return {cauchy_schwarz(s.list("as"), s.list("bs"), alpha, tol), std::nullopt};
  }
  if (subject == "powermean") {
    return {power_mean_compare(s.list("data"), s.number("s"), s.number("t"), alpha,
                               mode_of(s, Mode::fractal), tol),
            std::nullopt};
  }
  throw PreconditionError("unknown verification '" + subject +
                          "' (expected jensen|hh|cs|powermean)");
}

int cmd_verify(const Settings& s, std::ostream& out) {
  const Verification v = verify_once(s.text("subject"), s, alpha_of(s));
  emit(render(report_json(v.report, v.expr), format_of(s)), s, out);
  return v.report.satisfied ? kExitOk : kExitViolated;
}

std::map<std::string, double> parse_inputs(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("--inputs expects key=value pairs");
    out[item.substr(0, eq)] = Settings::to_number("inputs", item.substr(eq + 1));
  }
  return out;
}

InequalityReport example_once(const Settings& s, Alpha alpha) {
  const std::string id = s.text("id");
  const double tol = s.number_or("tol", kDefaultTolerance);
  if (id == "5.3") {
    InequalityReport r = power_mean_compare(s.list("data"), s.number("s"), s.number("t"), alpha,
                                            mode_of(s, Mode::fractal), tol);
    r.check = "example-5.3";
    return r;
  }
  const auto inputs = s.has("inputs") ? parse_inputs(s.text("inputs")) : std::map<std::string, double>{};
  return run_example(id, alpha, inputs, tol);
}

int cmd_examples(const Settings& s, std::ostream& out) {
  const InequalityReport r = example_once(s, alpha_of(s));
  emit(render(report_json(r, std::nullopt), format_of(s)), s, out);
  return r.satisfied ? kExitOk : kExitViolated;
}

int cmd_sweep(const Settings& s, std::ostream& out) {
  const std::string check = s.text("check");
  const auto alphas = parse_alpha_range(s.text("alphas"));
  std::ostringstream csv;
  if (check == "riemann-diag") {
    const Expr e = parse(s.text("expr"));
    const Interval iv = Interval::parse(s.text_or("interval", "0,1"));
    std::vector<long> ns{100, 1000, 10000};
    if (s.has("ns")) {
      ns.clear();
      for (double v : s.list("ns")) ns.push_back(static_cast<long>(v));
    }
    csv << "alpha,n,sum,growth_exponent\n";
    for (double a : alphas) {
      const QuadratureDiag d = riemann_diag(e, iv.lo, iv.hi, Alpha(a), ns);
      for (std::size_t i = 0; i < d.ns.size(); ++i) {
        csv << csv_number(a) << "," << d.ns[i] << "," << csv_number(d.sums[i]) << ","
            << csv_number(d.growth_exponent) << "\n";
      }
    }
  } else {
    csv << kReportColumns << "\n";
    for (double a : alphas) {
      json row;
      if (check == "examples") {
        row = report_json(example_once(s, Alpha(a)), std::nullopt);
      } else {
        const Verification v = verify_once(check, s, Alpha(a));
        row = report_json(v.report, v.expr);
      }
      csv << report_csv_row(row) << "\n";
    }
  }
  emit(csv.str(), s, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Flag registration

struct Registry {
  std::map<std::string, std::string> storage;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App* app, const std::string& name, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, storage[name], help);
    options.emplace_back(name, opt);
  }
};

void add_common(CLI::App* app, Registry& reg) {
  reg.add(app, "expr", "expression in x, e.g. \"(x+1/x)^(10a)\"");
  reg.add(app, "alpha", "fractal order, 0 < alpha <= 1 (default 1)");
  reg.add(app, "mode", "real|fractal");
  reg.add(app, "tol", "tolerance");
  reg.add(app, "out", "write the output to this file");
  reg.add(app, "format", "json|csv|text (default json)");
  reg.add(app, "config", "JSON file with default flag values");
}

}  // namespace

std::vector<double> parse_alpha_range(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(Settings::to_number("alphas", item));
    if (parts.size() != 3) throw PreconditionError("--alphas expects start:stop:step");
    const double start = parts[0];
    const double stop = parts[1];
    const double step = parts[2];
    if (!(step > 0.0) || stop < start) {
      throw PreconditionError("--alphas needs step > 0 and start <= stop");
    }
    for (long i = 0;; ++i) {
      double a = start + static_cast<double>(i) * step;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", a);
      a = std::strtod(buf, nullptr);
      if (std::fabs(a - stop) <= 1e-12) a = stop;
      if (a > stop) break;
      out.push_back(a);
      if (a == stop) break;
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Settings::to_number("alphas", item));
  }
  if (out.empty()) throw PreconditionError("--alphas produced no values");
  for (double a : out) Alpha{a};
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fracvex: local fractional calculus and generalized convexity toolkit", "fracvex"};
  app.require_subcommand(1);
  Registry reg;

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression at a point");
  add_common(eval_cmd, reg);
  reg.add(eval_cmd, "at", "evaluation point");

  CLI::App* diff_cmd = app.add_subcommand("diff", "local fractional derivative");
  add_common(diff_cmd, reg);
  reg.add(diff_cmd, "order", "number of d^alpha applications (default 1)");
  reg.add(diff_cmd, "at", "optional evaluation point");

  CLI::App* integrate_cmd = app.add_subcommand("integrate", "local fractional integral");
  add_common(integrate_cmd, reg);
  reg.add(integrate_cmd, "from", "lower limit");
  reg.add(integrate_cmd, "to", "upper limit");

  CLI::App* taylor_cmd = app.add_subcommand("taylor", "generalized Taylor polynomial");
  add_common(taylor_cmd, reg);
  reg.add(taylor_cmd, "at", "expansion point (default 0)");
  reg.add(taylor_cmd, "order", "highest term n (default 2)");
  reg.add(taylor_cmd, "interval", "remainder interval lo,hi (default [at, at+1])");

  CLI::App* convexity_cmd = app.add_subcommand("convexity", "generalized convexity checks");
  add_common(convexity_cmd, reg);
  reg.add(convexity_cmd, "interval", "lo,hi  [lo,hi]  or (lo,hi)");
  reg.add(convexity_cmd, "method", "chord|gradient|support|second|all|slope (default chord)");
  reg.add(convexity_cmd, "grid", "N or NxL sample counts");
  reg.add(convexity_cmd, "triple", "x1,x2,x3 for --method slope");
  reg.add(convexity_cmd, "strict", "true for the strict chord inequality");

  CLI::App* verify_cmd = app.add_subcommand("verify", "verify an inequality instance");
  add_common(verify_cmd, reg);
  {
    CLI::Option* subject = verify_cmd->add_option("subject", reg.storage["subject"],
                                                  "jensen|hh|cs|powermean");
    subject->required();
    reg.options.emplace_back("subject", subject);
  }
  reg.add(verify_cmd, "xs", "jensen points");
  reg.add(verify_cmd, "weights", "jensen weights (default uniform)");
  reg.add(verify_cmd, "interval", "hh interval lo,hi");
  reg.add(verify_cmd, "as", "cs vector a");
  reg.add(verify_cmd, "bs", "cs vector b");
  reg.add(verify_cmd, "data", "power mean data");
  reg.add(verify_cmd, "s", "power mean exponent s");
  reg.add(verify_cmd, "t", "power mean exponent t");

  CLI::App* examples_cmd = app.add_subcommand("examples", "run a worked scenario");
  add_common(examples_cmd, reg);
  reg.add(examples_cmd, "id", "5.1|5.2|5.3|5.4|5.5");
  reg.add(examples_cmd, "inputs", "key=value list, e.g. a=0.5,b=0.5");
  reg.add(examples_cmd, "data", "5.3 data");
  reg.add(examples_cmd, "s", "5.3 exponent s");
  reg.add(examples_cmd, "t", "5.3 exponent t");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate a check over an alpha range (CSV)");
  add_common(sweep_cmd, reg);
  reg.add(sweep_cmd, "check", "hh|jensen|cs|powermean|examples|riemann-diag");
  reg.add(sweep_cmd, "alphas", "start:stop:step or a comma list");
  reg.add(sweep_cmd, "interval", "interval lo,hi");
  reg.add(sweep_cmd, "xs", "jensen points");
  reg.add(sweep_cmd, "weights", "jensen weights");
  reg.add(sweep_cmd, "as", "cs vector a");
  reg.add(sweep_cmd, "bs", "cs vector b");
  reg.add(sweep_cmd, "data", "power mean data");
  reg.add(sweep_cmd, "s", "power mean exponent s");
  reg.add(sweep_cmd, "t", "power mean exponent t");
  reg.add(sweep_cmd, "id", "example id for --check examples");
  reg.add(sweep_cmd, "inputs", "example inputs");
  reg.add(sweep_cmd, "ns", "partition counts for riemann-diag (default 100,1000,10000)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    Settings settings;
    for (const auto& [name, opt] : reg.options) {
      if (opt->count() > 0) settings.set(name, reg.storage[name]);
    }
    if (settings.has("config")) merge_config(settings, settings.text("config"));

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name == "eval") return cmd_eval(settings, out);
    if (name == "diff") return cmd_diff(settings, out);
    if (name == "integrate") return cmd_integrate(settings, out);
    if (name == "taylor") return cmd_taylor(settings, out);
    if (name == "convexity") return cmd_convexity(settings, out);
    if (name == "verify") return cmd_verify(settings, out);
    if (name == "examples") return cmd_examples(settings, out);
    if (name == "sweep") return cmd_sweep(settings, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace fracvex::cli
