#include "cli.hpp"

#include "volterra/bounds.hpp"
#include "volterra/errors.hpp"
#include "volterra/gram_spectrum.hpp"
#include "volterra/kernel.hpp"
#include "volterra/oracle.hpp"
#include "volterra/point_spectrum.hpp"
#include "volterra/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace volterra::cli {

namespace {

constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::norm, "norm"},         {Command::sandwich, "sandwich"},
    {Command::spectrum, "spectrum"}, {Command::gram, "gram"},
    {Command::kernel, "kernel"},     {Command::hzeros, "hzeros"},
    {Command::iterates, "iterates"}, {Command::verify, "verify"},
};

double parse_number(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return kAlphaInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// ---- tables ----

using Row = std::vector<Value>;

Value num(double v) { return v; }
Value integer(long long v) { return v; }

// Runs `task(i)` for i in [0, count) on up to `jobs` threads and
// concatenates the produced rows in index order. The first failure (by
// index) is rethrown after all workers finish.
std::vector<Row> fan_out(int count, int jobs, const std::function<std::vector<Row>(int)>& task) {
  std::vector<std::vector<Row>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        results[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<Row> rows;
  for (int i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& r : results[i]) rows.push_back(std::move(r));
  }
  return rows;
}

int count_or(const RunConfig& c, int fallback) { return c.count > 0 ? c.count : fallback; }
int n_or(const RunConfig& c, int fallback) { return c.n > 0 ? c.n : fallback; }

// ---- commands ----

Table norm_table(const RunConfig& c) {
  Table t{{"command", "alpha", "p", "q", "grid_n", "norm22", "lower", "upper_holder",
           "upper_beta", "upper", "oracle", "within"},
          {}};
  const LpContext ctx(c.p, c.q);
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const auto s = norm_sandwich(a, ctx);
    const double oracle = pq_norm_estimate(discretize(a, c.grid_n), ctx);
    const bool within = oracle >= s.lower - c.tol && oracle <= s.upper + c.tol;
    return std::vector<Row>{{std::string("norm"), num(a), num(c.p), num(c.q),
                             integer(c.grid_n), num(norm_22(a)), num(s.lower),
                             num(s.upper_holder), num(s.upper_beta), num(s.upper), num(oracle),
                             within}};
  });
  return t;
}

Table sandwich_table(const RunConfig& c) {
  Table t{{"command", "alpha", "p", "q", "lower", "upper_holder", "upper_beta", "upper",
           "preferred", "holder_modulus_to_0"},
          {}};
  const LpContext ctx(c.p, c.q);
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const auto s = norm_sandwich(a, ctx);
    return std::vector<Row>{{std::string("sandwich"), num(a), num(c.p), num(c.q), num(s.lower),
                             num(s.upper_holder), num(s.upper_beta), num(s.upper),
                             std::string(to_string(preferred_upper_bound(ctx))),
                             num(holder_modulus(a, 0.0, ctx))}};
  });
  return t;
}

Table spectrum_table(const RunConfig& c) {
  Table t{{"command", "alpha", "p", "grid_n", "index", "exact", "oracle", "abs_error",
           "quasi_nilpotent", "eigen_residual"},
          {}};
  const int count = count_or(c, 5);
  if (count > 8) throw UsageError("spectrum: --count must be <= 8");
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const auto report = spectrum_description(a, count);
    const auto est = top_eigenvalues(discretize(a, c.grid_n), count);
    std::vector<Row> rows;
    for (int k = 0; k < count; ++k) {
      const double exact = report.quasi_nilpotent ? 0.0 : report.eigenvalues[k];
      const double residual = report.quasi_nilpotent
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : eigen_residual(a, k, c.grid_n, c.p);
      rows.push_back({std::string("spectrum"), num(a), num(c.p), integer(c.grid_n),
                      integer(k), num(exact), num(est.values[k]),
                      num(std::abs(est.values[k] - exact)), report.quasi_nilpotent,
                      num(residual)});
    }
    return rows;
  });
  return t;
}

Table gram_table(const RunConfig& c) {
  Table t{{"command", "alpha", "grid_n", "index", "zero_h", "eigenvalue", "oracle_eigenvalue",
           "residual", "boundary_value", "terms"},
          {}};
  const int count = count_or(c, 4);
  if (count > 8) throw UsageError("gram: --count must be <= 8");
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const auto oracle = top_gram_eigenvalues(discretize(a, c.grid_n), count);
    std::vector<Row> rows;
    for (int k = 0; k < count; ++k) {
      const auto pair = gram_eigenpair(a, k);
      rows.push_back({std::string("gram"), num(a), integer(c.grid_n), integer(k),
                      num(pair.zero_h), num(pair.eigenvalue), num(oracle[k]),
                      num(gram_residual(a, k, c.grid_n)), num(pair.eigenfunction(1.0)),
                      integer(pair.eigenfunction.terms())});
    }
    return rows;
  });
  return t;
}

Table kernel_table(const RunConfig& c) {
  Table t{{"command", "alpha", "n", "x", "y", "in_support", "K", "g", "g_lower"}, {}};
  const int n = n_or(c, 3);
  const int count = count_or(c, 5);
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const KernelSpec spec(a, n);
    std::vector<Row> rows;
    for (int ix = 0; ix < count; ++ix) {
      for (int iy = 0; iy < count; ++iy) {
        const double x = (ix + 0.5) / count;
        const double y = (iy + 0.5) / count;
        const double z = y * std::pow(x, -std::pow(a, n));
        const bool inside = z <= 1.0;
        const double g = inside ? g_value(spec, z) : 0.0;
        const double lower = inside && n >= 2 ? kernel_lower_bound(spec, z) : 0.0;
        rows.push_back({std::string("kernel"), num(a), integer(n), num(x), num(y), inside,
                        num(kernel_K(spec, x, y)), num(g), num(lower)});
      }
    }
    return rows;
  });
  return t;
}

Table hzeros_table(const RunConfig& c) {
  Table t{{"command", "alpha", "index", "zero_h"}, {}};
  const int count = count_or(c, 5);
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const auto zeros = find_zeros(a, count);
    std::vector<Row> rows;
    for (int k = 0; k < count; ++k) {
      rows.push_back({std::string("hzeros"), num(a), integer(k), num(zeros[k])});
    }
    return rows;
  });
  return t;
}

Table iterates_table(const RunConfig& c) {
  Table t{{"command", "alpha", "p", "grid_n", "n", "regime", "target", "log_lower", "log_upper",
           "log_oracle", "normalized_lower", "normalized_upper"},
          {}};
  const int n_max = n_or(c, 10);
  constexpr int kOracleMax = 6;
  t.rows = fan_out(static_cast<int>(c.alphas.size()), c.jobs, [&](int i) {
    const double a = c.alphas[i];
    const auto trend = growth_trend(a, c.p, std::max(n_max, 10));
    const auto m = discretize(a, c.grid_n);
    const LpContext ctx(c.p);
    std::vector<Row> rows;
    for (int n = 1; n <= n_max; ++n) {
      const double lower = log_iterate_norm_floor(a, n, c.p);
      const double upper = log_iterate_norm_upper(a, n, c.p);
      const double oracle = n <= kOracleMax ? std::log(iterate_matrix_norm(m, n, ctx))
                                            : std::numeric_limits<double>::quiet_NaN();
      const double scale = regime_scale(trend.regime, n);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rows.push_back({std::string("iterates"), num(a), num(c.p), integer(c.grid_n), integer(n),
                      std::string(to_string(trend.regime)), num(trend.target), num(lower),
                      num(upper), num(oracle), num(scale > 0.0 ? lower / scale : nan),
                      num(scale > 0.0 ? upper / scale : nan)});
    }
    return rows;
  });
  return t;
}

Table verify_table(const RunConfig& c) {
  Table t{{"command", "grid_n", "seed", "name", "max_residual", "tolerance", "pass"}, {}};
  VerifyOptions options;
  options.grid_n = c.grid_n;
  options.seed = c.seed;
  const auto& names = invariant_names();
  t.rows = fan_out(static_cast<int>(names.size()), c.jobs, [&](int i) {
    const auto r = run_invariant(names[i], options);
    return std::vector<Row>{{std::string("verify"), integer(c.grid_n),
                             integer(static_cast<long long>(c.seed)), r.name,
                             num(r.max_residual), num(r.tolerance), r.pass}};
  });
  return t;
}

// ---- output ----

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else {
          return x;
        }
      },
      v);
}

std::string json_field(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(x) ? format_double(x) : "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else {
          return nlohmann::json(x).dump();
        }
      },
      v);
}

std::string error_json(const std::exception& e) {
  nlohmann::ordered_json j;
  const char* type = "Error";
  if (dynamic_cast<const DomainError*>(&e)) type = "DomainError";
  if (auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
    type = "ConvergenceError";
    j["estimate"] = c->estimate();
  }
  if (auto* a = dynamic_cast<const AccuracyError*>(&e)) {
    type = "AccuracyError";
    j["value"] = a->value();
    j["error_estimate"] = a->error_estimate();
  }
  if (dynamic_cast<const NumericalInstability*>(&e)) type = "NumericalInstability";
  if (auto* s = dynamic_cast<const SearchHorizonError*>(&e)) {
    type = "SearchHorizonError";
    j["partial"] = s->partial();
  }
  nlohmann::ordered_json out;
  out["error"] = type;
  out["message"] = e.what();
  for (auto& [k, v] : j.items()) out[k] = v;
  return out.dump();
}

void validate(const RunConfig& c) {
  if (c.command != Command::verify && c.alphas.empty()) {
    throw UsageError(std::string(to_string(c.command)) + ": --alpha is required");
  }
  const bool allows_inf = c.command == Command::hzeros;
  for (double a : c.alphas) {
    if (std::isnan(a) || a < 0.0 || a == 0.0 ||
        (std::isinf(a) && !allows_inf)) {
      throw UsageError("alpha value " + format_double(a) + " is not valid for " +
                       to_string(c.command));
    }
  }
  if (!(c.p > 1.0) || !std::isfinite(c.p)) throw UsageError("--p must lie in (1, inf)");
  if (!(c.q > 1.0) || !std::isfinite(c.q)) throw UsageError("--q must lie in (1, inf)");
  if (c.grid_n < 16) throw UsageError("--grid-n must be >= 16");
  if (c.n < 0 || c.count < 0) throw UsageError("--n and --count must be positive");
  if (!(c.tol >= 0.0)) throw UsageError("--tol must be nonnegative");
  if (c.jobs < 1) throw UsageError("--jobs must be >= 1");
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kCommandNames) {
    if (name == n) return cmd;
  }
  return std::nullopt;
}

std::vector<double> parse_alpha_spec(const std::string& spec) {
  if (spec.empty()) throw UsageError("empty --alpha");
  if (spec.find(':') == std::string::npos) {
    std::vector<double> values;
    for (const auto& part : split(spec, ',')) values.push_back(parse_number(part));
    return values;
  }
  const auto parts = split(spec, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError("sweep must be start:stop:count[:log]");
  }
  const double start = parse_number(parts[0]);
  const double stop = parse_number(parts[1]);
  const double count_d = parse_number(parts[2]);
  const bool log = parts.size() == 4;
  if (log && parts[3] != "log") throw UsageError("sweep scale must be 'log'");
  if (!(count_d >= 1.0) || count_d != std::floor(count_d) || count_d > 1e6) {
    throw UsageError("sweep count must be a positive integer");
  }
  if (!std::isfinite(start) || !std::isfinite(stop)) throw UsageError("sweep ends must be finite");
  if (log && !(start > 0.0 && stop > 0.0)) throw UsageError("log sweep needs positive ends");
  const int count = static_cast<int>(count_d);
  std::vector<double> values;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    values.push_back(log ? start * std::pow(stop / start, t) : start + t * (stop - start));
  }
  if (count > 1) values.back() = stop;
  return values;
}

Table run(const RunConfig& config) {
  validate(config);
  switch (config.command) {
    case Command::norm: return norm_table(config);
    case Command::sandwich: return sandwich_table(config);
    case Command::spectrum: return spectrum_table(config);
    case Command::gram: return gram_table(config);
    case Command::kernel: return kernel_table(config);
    case Command::hzeros: return hzeros_table(config);
    case Command::iterates: return iterates_table(config);
    case Command::verify: return verify_table(config);
  }
  throw UsageError("unknown command");
}

bool all_passed(const Table& table) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), "pass");
  if (it == table.columns.end()) return true;
  const auto col = static_cast<std::size_t>(it - table.columns.begin());
  for (const auto& row : table.rows) {
    if (!std::get<bool>(row[col])) return false;
  }
  return true;
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    }
    return;
  }
  out << "[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n " : "\n ") << "{";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << '"' << table.columns[i] << "\":" << json_field(table.rows[r][i]);
    }
    out << "}";
  }
  out << "\n]\n";
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norms, spectra and iterated kernels of the operators T_alpha f(x) = "
               "int_0^{x^alpha} f(y) dy on [0, 1]."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string alpha_spec, format = "csv";
  std::optional<double> q;
  std::optional<int> jobs;
  RunConfig config;
  app.add_option("--alpha", alpha_spec,
                 "value, list a,b,c, or sweep start:stop:count[:log]; 'inf' allowed for hzeros");
  app.add_option("--p", config.p, "source exponent p");
  app.add_option("--q", q, "target exponent q (defaults to p)");
  app.add_option("--n", config.n, "iterate count (iterates) or kernel index (kernel)")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-n", config.grid_n, "oracle and residual grid size");
  app.add_option("--tol", config.tol, "oracle containment tolerance for the norm command");
  app.add_option("--count", config.count, "rows per alpha (zeros, eigenvalues, samples)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.out, "output path (default stdout)");
  app.add_option("--jobs", jobs, "worker threads (default: $VOLTERRA_ALPHA_JOBS or all cores)");
  app.add_option("--seed", config.seed, "seed of the random test functions in verify");

  const char* descriptions[] = {
      "exact ||T||_{2,2}, bound sandwich and oracle (p,q)-norm",
      "norm bounds and the preferred upper bound",
      "point spectrum against oracle eigenvalues, with eigenfunction residuals",
      "eigenpairs of T*T against oracle Gram eigenvalues",
      "samples of the iterated kernel K_n",
      "positive zeros of the series H_alpha",
      "iterate-norm bracket, oracle iterate norms and growth normalization",
      "run every invariant check",
  };
  int k = 0;
  for (const auto& [cmd, name] : kCommandNames) {
    app.add_subcommand(name, descriptions[k++])->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out, msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code == 0 ? 0 : 2;
  }

  try {
    config.command = *parse_command(app.get_subcommands().front()->get_name());
    config.q = q.value_or(config.p);
    config.format = format == "json" ? Format::json : Format::csv;
    if (!alpha_spec.empty()) config.alphas = parse_alpha_spec(alpha_spec);
    if (jobs) {
      config.jobs = *jobs;
    } else if (const char* env = std::getenv("VOLTERRA_ALPHA_JOBS")) {
      try {
        config.jobs = std::stoi(env);
      } catch (const std::exception&) {
        throw UsageError("VOLTERRA_ALPHA_JOBS is not an integer");
      }
    } else {
      config.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    validate(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Table table;
  try {
    table = run(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << error_json(e) << "\n";
    return 1;
  }

  if (config.out.empty()) {
    write_table(table, config.format, out);
  } else {
    std::ofstream file(config.out);
    if (!file) {
      err << "cannot open output file " << config.out << "\n";
      return 1;
    }
    write_table(table, config.format, file);
  }
  return all_passed(table) ? 0 : 1;
}

}  // namespace volterra::cli
