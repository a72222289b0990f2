#include "actionwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "actionwave/duality.hpp"
#include "actionwave/partial_waves.hpp"
#include "actionwave/table.hpp"
#include "actionwave/verify.hpp"

namespace actionwave::cli {

namespace {

enum class Format { kCsv, kJson };

struct RunConfig {
  std::optional<double> w;
  std::optional<int> n_max;
  double tol = 1.0e-12;
  double s = 1.0;
  double hbar = 1.0;
  double e = 1.0;
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 11;
  double c = kTwoPi;
  double threshold = 1.0;
  std::string out;
  Format format = Format::kCsv;
  bool format_given = false;
  std::uint64_t seed = 1;
  bool grid = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library parameter names -> the flag a user would fix.
std::string flag_for(const std::string& parameter) {
  static const std::map<std::string, std::string> flags = {
      {"w", "--w"},         {"n_max", "--nmax"},
      {"n", "--nmax"},      {"tol", "--tol"},
      {"S", "--s"},         {"hbar", "--hbar"},
      {"E", "--e"},         {"t", "--t0/--t1"},
      {"C", "--c"},         {"threshold", "--threshold"},
      {"S/hbar", "--s/--hbar"}, {"hbar/S", "--s/--hbar"},
  };
  const auto it = flags.find(parameter);
  return it == flags.end() ? parameter : it->second;
}

// Order used when --nmax is absent: the tail bound at a tenth of the
// requested tolerance.
int default_order(double w, double tol) {
  return required_order(w, std::max(0.1 * tol, 1.0e-15));
}

double require_w(const RunConfig& cfg) {
  if (!cfg.w) throw UsageError("--w is required");
  return BesselArgument(*cfg.w);
}

ActionState state_of(const RunConfig& cfg, double t = 0.0) {
  ActionState state{cfg.s, cfg.hbar, cfg.e, t, {}};
  state.validate();
  return state;
}

void emit(const Table& table, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == Format::kJson) {
    table.write_json(os);
  } else {
    table.write_csv(os);
  }
}

Table expand_table(const RunConfig& cfg) {
  const double w = require_w(cfg);
  const int n_max = cfg.n_max ? *cfg.n_max : default_order(w, cfg.tol);
  const BesselRow row = bessel_row(n_max, w);
  const Complex target(std::cos(w), std::sin(w));

  Table table;
  table.header = {"n",          "J_n",        "re_coeff",  "im_coeff",
                  "re_partial", "im_partial", "abs_error", "bound"};
  detail::fold_partial_waves(
      row, detail::static_pair_factor, [&](int n, const Complex& partial) {
        const Complex coeff = i_pow(n) * row[n];
        table.rows.push_back({std::int64_t{n}, row[n], coeff.real(),
                              coeff.imag(), partial.real(), partial.imag(),
                              std::abs(partial - target),
                              detail::tail_bound_unchecked(w, n)});
      });
  return table;
}

// Field sum_n i^n J_n(rho) e^{i n phi} on a polar grid of the auxiliary plane.
Table plane_field_table(const RunConfig& cfg) {
  const double rho_max = require_w(cfg);
  if (cfg.steps < 2) throw DomainError("steps", "--grid needs --steps >= 2");
  const int n_max = cfg.n_max ? *cfg.n_max : default_order(rho_max, cfg.tol);
  const int steps = cfg.steps;

  std::vector<double> rhos;
  for (int i = 0; i < steps; ++i) rhos.push_back(rho_max * i / (steps - 1));
  const std::vector<BesselRow> rows = bessel_rows(n_max, rhos);

  constexpr double pi = std::numbers::pi;
  Table table;
  table.header = {"rho", "phi", "re", "im"};
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const double phi = -pi + 2.0 * pi * j / (steps - 1);
      // i^{-n} J_{-n} = i^n J_n, so the +/-n pair carries 2 cos(n phi).
      const Complex field = detail::fold_partial_waves(
          rows[static_cast<std::size_t>(i)], [phi](int n) {
            return n == 0 ? Complex(1.0, 0.0)
                          : Complex(2.0 * std::cos(n * phi), 0.0);
          });
      table.rows.push_back({rhos[static_cast<std::size_t>(i)], phi,
                            field.real(), field.imag()});
    }
  }
  return table;
}

Table sweep_table(const RunConfig& cfg) {
  const double w = require_w(cfg);
  const int n_max = cfg.n_max ? *cfg.n_max : 30;
  if (n_max < 0 || n_max > kMaxOrder) {
    throw DomainError("n_max", "n_max must be in [0, 1000], got " +
                                   std::to_string(n_max));
  }
  Table table;
  table.header = {"n_max", "abs_error", "bound"};
  for (int n = 0; n <= n_max; ++n) {
    const ExpansionReport r = reconstruct(w, n);
    table.rows.push_back({std::int64_t{n}, r.abs_error, r.bound});
  }
  return table;
}

std::vector<double> time_grid(const RunConfig& cfg) {
  if (cfg.steps < 1) throw DomainError("steps", "--steps must be >= 1");
  std::vector<double> ts;
  for (int k = 0; k < cfg.steps; ++k) {
    ts.push_back(cfg.steps == 1
                     ? cfg.t0
                     : cfg.t0 + (cfg.t1 - cfg.t0) * k / (cfg.steps - 1));
  }
  return ts;
}

Table timewave_table(const RunConfig& cfg) {
  const std::vector<double> ts = time_grid(cfg);
  int safe = kMaxOrder;
  int needed = 0;
  for (double t : ts) {
    const ActionState state = state_of(cfg, t);
    safe = std::min(safe, overflow_safe_order(state, cfg.c));
    needed = std::max(needed, time_required_order(
                                  state, std::max(0.1 * cfg.tol, 1.0e-15),
                                  cfg.c));
  }
  const int n_max = cfg.n_max ? *cfg.n_max : std::min(safe, needed);

  Table table;
  table.header = {"t",         "re_sum",    "im_sum",
                  "re_oracle", "im_oracle", "abs_diff"};
  for (double t : ts) {
    const ActionState state = state_of(cfg, t);
    try {
      const Complex sum = time_sum(state, n_max, cfg.c);
      const Complex oracle = time_closed_form(state, cfg.c);
      table.rows.push_back({t, sum.real(), sum.imag(), oracle.real(),
                            oracle.imag(), std::abs(sum - oracle)});
    } catch (const OverflowError& e) {
      throw OverflowError(e.order(), e.limit(),
                          "at t = " + format_double(t) + ": " + e.what());
    }
  }
  return table;
}

nlohmann::ordered_json duality_report(const RunConfig& cfg) {
  const ActionState state = state_of(cfg);
  const ActionState swapped{state.hbar, state.S, 0.0, 0.0, {}};
  const double wc = quantum_ratio(state, Regime::kSemiclassical);
  const double wq = quantum_ratio(state, Regime::kStrongQuantum);
  const int nc = cfg.n_max ? *cfg.n_max : default_order(wc, cfg.tol);
  const int nq = cfg.n_max ? *cfg.n_max : default_order(wq, cfg.tol);

  const ExpansionReport classical = reconstruct(wc, nc);
  const ExpansionReport dual = dual_reconstruct(state, nq);
  const ExpansionReport dual_swapped = reconstruct(swapped.S / swapped.hbar, nq);
  const Complex phase = selfdual_phase(state);
  const Complex phase_swapped = selfdual_phase(swapped);
  const bool swap_check = phase == phase_swapped &&
                          dual.partial_sum == dual_swapped.partial_sum &&
                          dual.abs_error == dual_swapped.abs_error;

  nlohmann::ordered_json report;
  report["w_classical"] = wc;
  report["w_quantum"] = wq;
  report["regime"] = to_string(classify_regime(state, cfg.threshold));
  report["reconstruct_error"] = classical.abs_error;
  report["dual_reconstruct_error"] = dual.abs_error;
  report["selfdual_phase_re"] = phase.real();
  report["selfdual_phase_im"] = phase.imag();
  report["swap_check"] = swap_check;
  return report;
}

void emit_duality(const nlohmann::ordered_json& report, const RunConfig& cfg,
                  std::ostream& os) {
  if (cfg.format_given && cfg.format == Format::kCsv) {
    Table table;
    std::vector<Cell> row;
    for (const auto& [key, value] : report.items()) {
      table.header.push_back(key);
      if (value.is_boolean()) {
        row.emplace_back(std::string(value.get<bool>() ? "true" : "false"));
      } else if (value.is_string()) {
        row.emplace_back(value.get<std::string>());
      } else {
        row.emplace_back(value.get<double>());
      }
    }
    table.rows.push_back(std::move(row));
    table.write_csv(os);
    return;
  }
  os << report.dump(2) << '\n';
}

// Renders every table subcommand twice on a fixed configuration and compares
// the bytes.
PropertyResult cli_determinism() {
  RunConfig cfg;
  cfg.w = 5.0;
  cfg.n_max = 20;
  std::string first;
  std::string second;
  for (std::string* dst : {&first, &second}) {
    std::ostringstream os;
    expand_table(cfg).write_csv(os);
    sweep_table(cfg).write_csv(os);
    RunConfig tw;
    tw.t1 = 0.5;
    tw.steps = 6;
    timewave_table(tw).write_csv(os);
    RunConfig du;
    du.s = 10.0;
    os << duality_report(du).dump();
    *dst = os.str();
  }
  return {"cli.determinism", first == second ? 0.0 : 1.0, 0.0, first == second,
          false};
}

int verify(const RunConfig& cfg, std::ostream& os) {
  VerifyOptions options;
  options.tol = cfg.tol;
  options.seed = cfg.seed;
  std::vector<PropertyResult> results = run_properties(options);
  results.push_back(cli_determinism());
  int failed = 0;
  int passed = 0;
  for (const auto& r : results) {
    os << format_result(r) << '\n';
    if (r.informational) continue;
    (r.passed ? passed : failed)++;
  }
  os << "verify: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kSuccess : kVerifyFailed;
}

void add_state_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--s", cfg.s, "Action S")->capture_default_str();
  app->add_option("--hbar", cfg.hbar, "Quantum of action")
      ->capture_default_str();
}

void add_output_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--out", cfg.out, "Output file (default: stdout)");
  app->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::kCsv},
                                        {"json", Format::kJson}},
          CLI::ignore_case))
      ->option_text("csv|json")
      ->each([&cfg](const std::string&) { cfg.format_given = true; });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"actionwave: partial-wave expansions of exp(iS/hbar) and their "
               "S <-> hbar duality",
               "actionwave"};
  app.require_subcommand(1);

  auto* expand = app.add_subcommand("expand", "Partial-wave table of e^{iw}");
  expand->add_option("--w", cfg.w, "Bessel argument w = S/hbar");
  expand->add_option("--nmax", cfg.n_max, "Truncation order");
  expand->add_option("--tol", cfg.tol, "Tolerance for the default order")
      ->capture_default_str();
  expand->add_flag("--grid", cfg.grid,
                   "Emit the plane field on a (rho, phi) grid, rho <= w");
  expand->add_option("--steps", cfg.steps, "Grid points per axis");
  add_output_options(expand, cfg);

  auto* sweep = app.add_subcommand("sweep", "Error and bound versus order");
  sweep->add_option("--w", cfg.w, "Bessel argument");
  sweep->add_option("--nmax", cfg.n_max, "Largest order (default 30)");
  add_output_options(sweep, cfg);

  auto* timewave =
      app.add_subcommand("timewave", "Time-dependent sum against its closed form");
  add_state_options(timewave, cfg);
  timewave->add_option("--e", cfg.e, "Energy E")->capture_default_str();
  timewave->add_option("--t0", cfg.t0, "First time")->capture_default_str();
  timewave->add_option("--t1", cfg.t1, "Last time")->capture_default_str();
  timewave->add_option("--steps", cfg.steps, "Number of times")
      ->capture_default_str();
  timewave->add_option("--nmax", cfg.n_max, "Truncation order");
  timewave->add_option("--tol", cfg.tol, "Tolerance for the default order")
      ->capture_default_str();
  timewave->add_option("--c", cfg.c, "Angular scale C")->capture_default_str();
  add_output_options(timewave, cfg);

  auto* duality = app.add_subcommand("duality", "S <-> hbar duality report");
  add_state_options(duality, cfg);
  duality->add_option("--nmax", cfg.n_max, "Truncation order");
  duality->add_option("--tol", cfg.tol, "Tolerance for the default order")
      ->capture_default_str();
  duality->add_option("--threshold", cfg.threshold, "Regime threshold on S/hbar")
      ->capture_default_str();
  add_output_options(duality, cfg);

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("--tol", cfg.tol, "Tolerance")->capture_default_str();
  verify_cmd->add_option("--seed", cfg.seed, "Random seed")
      ->capture_default_str();
  verify_cmd->add_option("--out", cfg.out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--help") > 0) return kSuccess;

  try {
    // Render fully before writing so a failure leaves no partial output.
    std::ostringstream buffer;
    int code = kSuccess;
    if (sub == expand) {
      emit(cfg.grid ? plane_field_table(cfg) : expand_table(cfg), cfg, buffer);
    } else if (sub == sweep) {
      emit(sweep_table(cfg), cfg, buffer);
    } else if (sub == timewave) {
      emit(timewave_table(cfg), cfg, buffer);
    } else if (sub == duality) {
      emit_duality(duality_report(cfg), cfg, buffer);
    } else {
      code = verify(cfg, buffer);
    }
    if (cfg.out.empty()) {
      out << buffer.str();
      return code;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: --out: cannot write " << cfg.out << '\n';
      return kDomainError;
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const DomainError& e) {
    err << "error: " << flag_for(e.parameter()) << ": " << e.what() << '\n';
    return kDomainError;
  } catch (const OverflowError& e) {
    err << "error: --nmax: " << e.what() << '\n';
    return kOverflow;
  }
}

}  // namespace actionwave::cli
