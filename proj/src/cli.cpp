#include "hwkit/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hwkit/approx_eval.hpp"
#include "hwkit/asymptotics.hpp"
#include "hwkit/coefficients.hpp"
#include "hwkit/density_pricing.hpp"
#include "hwkit/errors.hpp"
#include "hwkit/exact_eval.hpp"

namespace hwkit {

namespace {

class FileNotFound : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Rows of preformatted cells; numeric cells go into JSON unquoted.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> numeric;

  void write_csv(std::ostream& os) const {
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(columns);
    for (const auto& r : rows) line(r);
  }

  void write_json(std::ostream& os) const {
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << "  {";
      for (std::size_t j = 0; j < columns.size(); ++j) {
        const bool num = j < numeric.size() && numeric[j];
        fmt::print(os, "{}\"{}\": {}", j ? ", " : "", columns[j], num ? rows[i][j] : "\"" + rows[i][j] + "\"");
      }
      os << (i + 1 < rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
  }
};

struct Options {
  std::string format = "csv";
  std::string out_path;
  std::optional<int> order;
  std::string domain;
  std::string quad_scheme = "tanh-sinh";
  double quad_tol = QuadratureSpec{}.target_rel_err;
  int precision = 6;
  std::string config_path;
};

std::string num(double v, int precision) { return fmt::format("{:.{}g}", v, precision); }

QuadratureSpec quad_spec(const Options& o) {
  QuadratureSpec q;
  q.scheme = parse_quad_scheme(o.quad_scheme);
  q.target_rel_err = o.quad_tol;
  q.validate();
  return q;
}

LogDomain parse_domain(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--domain expects 'lo,hi' in rho units");
  try {
    return LogDomain::from_rho(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw ParseError("--domain expects two numbers, got '" + text + "'");
  }
}

EvaluatorConfig evaluator_config(const Options& o, Target target) {
  EvaluatorConfig cfg;
  if (!o.config_path.empty()) cfg = parse_evaluator_config(read_file(o.config_path));
  else cfg.target = target;
  cfg.target = target;
  if (o.order) cfg.order = *o.order;
  if (!o.domain.empty()) cfg.domain = parse_domain(o.domain);
  return cfg;
}

Evaluators pricing_evaluators(const Options& o) {
  if (o.config_path.empty() && !o.order && o.domain.empty()) return default_evaluators();
  const EvaluatorConfig cfg = evaluator_config(o, Target::F);
  return make_evaluators(cfg.order, cfg.domain);
}

void emit(const Table& t, const Options& o, std::ostream& os) {
  if (o.format == "json") t.write_json(os);
  else t.write_csv(os);
}

unsigned thread_cap() {
  if (const char* env = std::getenv("HWKIT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::logic_error&) {
    }
    throw ParseError(std::string("HWKIT_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void cmd_coeffs(const std::string& family_name, const Options& o, std::ostream& os) {
  const Family f = parse_family(family_name);
  const int order = o.order.value_or(10);
  const RationalSeries s = coeffs_for(f, order);
  if (o.format == "series") {
    write_series(os, s);
    return;
  }
  if (o.format == "json") {
    fmt::print(os, "{{\"family\": \"{}\", \"order\": {}, \"prefactor_sq\": \"{}\", \"offset\": \"{}\", \"coeffs\": [\n",
               to_string(f), order, s.prefactor_sq().str(), to_string(s.offset()));
    for (int n = 0; n <= order; ++n)
      fmt::print(os, "  {{\"n\": {}, \"exact\": \"{}\", \"value\": {}}}{}\n", n, s[n].str(),
                 num(s[n].to_double(), o.precision), n < order ? "," : "");
    os << "]}\n";
    return;
  }
  Table t{{"n", "exact", "value"}, {}, {true, false, true}};
  for (int n = 0; n <= order; ++n) t.rows.push_back({std::to_string(n), s[n].str(), num(s[n].to_double(), o.precision)});
  t.write_csv(os);
}

void cmd_constants(int count, const Options& o, std::ostream& os) {
  const int p = std::max(o.precision, 12);
  const auto cp = critical_points(count);
  const auto& pd = puiseux_data();
  const auto& ac = asymptotic_constants();
  Table t{{"name", "value"}, {}, {false, true}};
  for (const auto& e : cp.entries) {
    t.rows.push_back({fmt::format("eta_{}", e.k), num(e.eta, p)});
    t.rows.push_back({fmt::format("z_{}", e.k), num(e.z, p)});
    t.rows.push_back({fmt::format("omega_{}", e.k), num(e.omega, p)});
  }
  const std::pair<const char*, double> named[] = {
      {"rho_x", cp.rho_x},
      {"theta_x", cp.theta_x},
      {"rho_x_times_inverse", cp.rho_x * (1 / cp.rho_x)},
      {"radius_omega", 1 - pd.omega1},
      {"C1", pd.C1},
      {"C2", pd.C2},
      {"C2_fit", pd.C2_fit},
      {"C32_J", pd.C32_J},
      {"C32_F", pd.C32_F},
      {"c_inf", ac.c_inf},
      {"d_inf", ac.d_inf},
      {"d_J", ac.d_J},
      {"d_F", ac.d_F},
      {"d_J_minus_d_F", ac.d_J - ac.d_F},
      {"d_G", ac.d_G},
  };
  for (const auto& [name, v] : named) t.rows.push_back({name, num(v, p)});
  emit(t, o, os);
}

void cmd_eval(const std::string& target_name, const std::vector<double>& args, const Options& o, std::ostream& os) {
  const Target target = parse_target(target_name);
  const PiecewiseEvaluator e = make_evaluator(evaluator_config(o, target));
  Table t{{"arg", "method", "value", "exact", "abs_diff"}, {}, {true, false, true, true, true}};
  for (double x : args) {
    const double v = e(x);
    const double ex = exact_value(target, x);
    t.rows.push_back({num(x, o.precision), e.uses_series(x) ? "series" : "exact", num(v, o.precision),
                      num(ex, o.precision), num(std::abs(v - ex), 3)});
  }
  emit(t, o, os);
}

void cmd_asympt(const std::string& family_name, const Options& o, std::ostream& os) {
  const AsymptFamily f = parse_asympt_family(family_name);
  const auto rows = diagnostic_epsilon(f, o.order.value_or(100));
  if (o.format != "json") {
    write_diagnostic_csv(os, rows, o.precision);
    return;
  }
  Table t{{"n", "coeff_exact", "coeff_asympt", "epsilon", "trig_factor"}, {}, {true, true, true, true, true}};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.n), num(r.coeff_exact, o.precision), num(r.coeff_asympt, o.precision),
                      num(r.epsilon, o.precision), num(r.trig_factor, o.precision)});
  t.write_json(os);
}

void cmd_density(const std::string& grid, double t, double mu, const Options& o, std::ostream& os) {
  double lo = 0, hi = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream gs(grid);
  gs.imbue(std::locale::classic());
  if (!(gs >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(lo > 0) || !(hi >= lo))
    throw ParseError("--a-grid expects lo:hi:n with 0 < lo <= hi and n >= 1, got '" + grid + "'");
  const Evaluators ev = pricing_evaluators(o);
  const QuadratureSpec q = quad_spec(o);
  const double norm = norm_factor(t, mu, ev, q);
  Table tab{{"a", "f0"}, {}, {true, true}};
  for (int i = 0; i < n; ++i) {
    const double a = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    tab.rows.push_back({num(a, o.precision), num(f0_density(a, t, mu, ev, q, norm), o.precision)});
  }
  emit(tab, o, os);
}

void cmd_theta(double rho, double t, const std::string& method, const Options& o, std::ostream& os) {
  if (method != "quadrature" && method != "asymptotic" && method != "both")
    throw DomainError("theta method must be quadrature, asymptotic or both");
  if (!(rho > 0 && t > 0)) throw DomainError("theta: rho and t must be positive");
  Table tab{{"method", "rho", "t", "r", "value"}, {}, {false, true, true, true, true}};
  auto row = [&](const char* m, double v) {
    tab.rows.push_back({m, num(rho, o.precision), num(t, o.precision), num(rho / t, o.precision), num(v, o.precision)});
  };
  if (method != "asymptotic") row("quadrature", theta_hw(rho / t, t, quad_spec(o)));
  if (method != "quadrature") row("asymptotic", theta_asympt(rho, t, pricing_evaluators(o)));
  emit(tab, o, os);
}

void cmd_price(const std::string& source, bool puts, const Options& o, std::ostream& os) {
  const std::vector<Scenario> sc = source == "table3" ? table3_scenarios() : parse_scenarios(read_file(source));
  const auto rows = price_scenarios(sc, pricing_evaluators(o), quad_spec(o), thread_cap(), puts);
  if (o.format == "json") write_prices_json(os, rows, o.precision);
  else write_prices_csv(os, rows, o.precision);
}

void cmd_bench(const Options& o, std::ostream& os) {
  const Evaluators ev = pricing_evaluators(o);
  const QuadratureSpec q = quad_spec(o);
  Table t{{"scenario", "seconds", "C_A"}, {}, {true, true, true}};
  double total = 0;
  const auto& sc = table3_scenarios();
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = price_scenario(sc[i], ev, q);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += dt;
    t.rows.push_back({std::to_string(i + 1), num(dt, 3), num(r.price, o.precision)});
  }
  t.rows.push_back({"total", num(total, 3), ""});
  if (o.format == "json") t.rows.back().back() = "null";
  emit(t, o, os);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hartman–Watson and Asian option toolkit", "hwkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "series"}));
  app.add_option("--out", o.out_path, "Write results to this file");
  app.add_option("--order", o.order, "Series order N");
  app.add_option("--domain", o.domain, "Series domain lo,hi in rho (or x) units");
  app.add_option("--quad-scheme", o.quad_scheme, "tanh-sinh, gauss-legendre or newton-cotes");
  app.add_option("--quad-tol", o.quad_tol, "Target relative error per integral")->check(CLI::PositiveNumber);
  app.add_option("--precision", o.precision, "Significant digits")->check(CLI::Range(1, 17));
  app.add_option("--config", o.config_path, "Evaluator JSON config");

  std::function<void(std::ostream&)> action;

  auto* coeffs = app.add_subcommand("coeffs", "Exact series coefficients");
  std::string family;
  std::optional<int> coeff_order;
  coeffs->add_option("family", family, "h, h_log, jbs_omega, jbs_log, F or G")->required();
  coeffs->add_option("N", coeff_order, "Order");
  coeffs->callback([&] {
    if (coeff_order) o.order = coeff_order;
    action = [&](std::ostream& os) { cmd_coeffs(family, o, os); };
  });

  auto* constants = app.add_subcommand("constants", "Critical points and asymptotic constants");
  int count = 5;
  constants->add_option("--count", count, "Number of critical points")->check(CLI::Range(1, 1000));
  constants->callback([&] { action = [&](std::ostream& os) { cmd_constants(count, o, os); }; });

  auto* eval = app.add_subcommand("eval", "Evaluate F, G or JBS");
  std::string target;
  std::vector<double> values;
  eval->add_option("target", target, "F, G or JBS")->required();
  eval->add_option("values", values, "rho (or x) values")->required();
  eval->callback([&] { action = [&](std::ostream& os) { cmd_eval(target, values, o, os); }; });

  auto* asympt = app.add_subcommand("asympt", "Exact vs asymptotic coefficients");
  std::string afamily;
  std::optional<int> asympt_order;
  asympt->add_option("family", afamily, "c, d, cJ, dJ, dF or dG")->required();
  asympt->add_option("N", asympt_order, "Highest n");
  asympt->callback([&] {
    if (asympt_order) o.order = asympt_order;
    action = [&](std::ostream& os) { cmd_asympt(afamily, o, os); };
  });

  auto* density = app.add_subcommand("density", "Marginal density f0 on a grid");
  std::string grid = "0.8:1.2:41";
  double dt = 0, dmu = 0;
  density->add_option("--a-grid", grid, "lo:hi:n");
  density->add_option("--t", dt, "Reduced time")->required()->check(CLI::PositiveNumber);
  density->add_option("--mu", dmu, "Drift parameter");
  density->callback([&] { action = [&](std::ostream& os) { cmd_density(grid, dt, dmu, o, os); }; });

  auto* theta = app.add_subcommand("theta", "Hartman–Watson integral at r = rho/t");
  double rho = 1, tt = 0;
  std::string method = "both";
  theta->add_option("rho", rho, "rho = r t")->required();
  theta->add_option("t", tt, "Time")->required();
  theta->add_option("method", method, "quadrature, asymptotic or both");
  theta->callback([&] { action = [&](std::ostream& os) { cmd_theta(rho, tt, method, o, os); }; });

  auto* price = app.add_subcommand("price", "Asian call prices");
  std::string source;
  bool puts = false;
  price->add_option("scenarios", source, "Scenario JSON file or 'table3'")->required();
  price->add_flag("--puts", puts, "Also price puts");
  price->callback([&] { action = [&](std::ostream& os) { cmd_price(source, puts, o, os); }; });

  auto* bench = app.add_subcommand("bench", "Wall time per benchmark scenario");
  bench->callback([&] { action = [&](std::ostream& os) { cmd_bench(o, os); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.format == "series" && !coeffs->parsed()) throw DomainError("--format series only applies to coeffs");
    std::ostringstream buf;
    action(buf);
    if (o.out_path.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) throw FileNotFound("cannot write '" + o.out_path + "'");
      f << buf.str();
    }
    return kExitOk;
  } catch (const FileNotFound& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFileNotFound;
  } catch (const ParseError& e) {
    fmt::print(err, "parse error: {}\n", e.what());
    return kExitParse;
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "numeric error: {}\n", e.what());
    return kExitNumeric;
  }
}

}  // namespace hwkit
