#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ewens/concentration.hpp"
#include "ewens/core.hpp"
#include "ewens/harness.hpp"
#include "ewens/ldp.hpp"
#include "ewens/mgf.hpp"
#include "ewens/mittag.hpp"
#include "ewens/params.hpp"
#include "ewens/partition.hpp"

namespace ewens {

namespace {

using nlohmann::json;

// A value cell: either an echoed input (always printed shortest-round-trip)
// or a computed quantity (fixed decimals when --decimals is given).
struct Cell {
  std::string text;
  json value;
};

std::string fmt_raw(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_computed(double v, std::optional<int> decimals) {
  char buf[64];
  if (decimals)
    std::snprintf(buf, sizeof(buf), "%.*f", *decimals, v);
  else
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Cell echo(double v) { return {fmt_raw(v), v}; }
Cell echo(std::int64_t v) { return {std::to_string(v), v}; }
Cell echo(std::uint64_t v) { return {std::to_string(v), v}; }
Cell echo(const std::string& s) { return {s, s}; }
Cell echo_bool(bool v) { return {v ? "1" : "0", v}; }
Cell computed(double v, std::optional<int> decimals) {
  return {fmt_computed(v, decimals), v};
}
Cell computed_opt(std::optional<double> v, std::optional<int> decimals) {
  if (!v) return {"", nullptr};
  return computed(*v, decimals);
}

// Accumulates rows and renders them as CSV or a JSON array.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<Cell> cells) { rows_.push_back(std::move(cells)); }

  void render_csv(std::ostream& os) const {
    for (size_t i = 0; i < header_.size(); ++i)
      os << header_[i] << (i + 1 < header_.size() ? "," : "\n");
    for (const auto& row : rows_)
      for (size_t i = 0; i < row.size(); ++i)
        os << row[i].text << (i + 1 < row.size() ? "," : "\n");
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows_) {
      json obj;
      for (size_t i = 0; i < row.size(); ++i) obj[header_[i]] = row[i].value;
      arr.push_back(obj);
    }
    return arr;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
  std::optional<int> decimals;
};

void add_output_options(CLI::App* cmd, OutputOptions* out) {
  cmd->add_option("--format", out->format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out->out_path, "Write output to PATH instead of stdout");
  cmd->add_option("--decimals", out->decimals,
                  "Fixed decimal places for computed values (default: 17 "
                  "significant digits)");
}

void emit(const Table& table, const OutputOptions& opts,
          const json* meta = nullptr) {
  std::ostringstream body;
  if (opts.format == "json") {
    json doc;
    if (meta) {
      doc["meta"] = *meta;
      doc["rows"] = table.to_json();
    } else {
      doc = table.to_json();
    }
    body << doc.dump(2) << "\n";
  } else {
    table.render_csv(body);
  }
  if (!opts.out_path.empty()) {
    std::ofstream f(opts.out_path);
    if (!f) throw std::domain_error("cannot open output path: " + opts.out_path);
    f << body.str();
  } else {
    std::cout << body.str();
  }
}

std::uint64_t parse_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
  }
  return std::stoull(text, nullptr, 0);
}

int run_selftest();

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Ewens-Pitman block-count toolkit: exact distribution and "
               "sampling of K_n, moment-generating-function engines, "
               "Mittag-Leffler functions, rate functions and tail bounds"};
  app.require_subcommand(1);

  double alpha = 0.5, theta = 0.0, t = 1.0, x = 0.5, z = 1.0;
  double ml_beta = 1.0, ml_gamma = 1.0;
  std::int64_t n = 10, reps = 1;
  std::string seed_text = "0x45574E53";
  std::string method = "series";
  std::vector<double> xs;
  bool use_ewens = false, use_bernoulli = false, want_bounds = false;
  OutputOptions out;

  auto* sample = app.add_subcommand("sample", "Draw block counts K_n");
  sample->add_option("--alpha", alpha, "Discount parameter in [0,1)");
  sample->add_option("--theta", theta, "Strength parameter > -alpha");
  sample->add_option("--n", n, "Sample size n >= 1");
  sample->add_option("--reps", reps, "Number of replicates");
  sample->add_option("--seed", seed_text, "64-bit seed or 'random'");
  sample->add_flag("--bernoulli", use_bernoulli,
                   "Use the alpha=0 independent-Bernoulli representation "
                   "(requires theta > 0)");
  add_output_options(sample, &out);

  auto* mgf = app.add_subcommand("mgf", "Evaluate m_n(t) = E[exp(t K_n)]");
  mgf->add_option("--alpha", alpha, "Discount parameter in (0,1)");
  mgf->add_option("--theta", theta, "Strength parameter > -alpha");
  mgf->add_option("--n", n, "Sample size n >= 1");
  mgf->add_option("--t", t, "Argument of the MGF");
  mgf->add_option("--method", method,
                  "series | mlintegral | sharp | gfcoeff | enum")
      ->check(CLI::IsMember({"series", "mlintegral", "sharp", "gfcoeff", "enum"}));
  mgf->add_flag("--bounds", want_bounds,
                "Emit the lower/upper bracket instead of a point value");
  add_output_options(mgf, &out);

  auto* rate = app.add_subcommand("rate", "Legendre-Fenchel rate function");
  rate->add_option("--alpha", alpha, "Discount parameter in (0,1)");
  rate->add_option("--x", x, "Evaluation point");
  rate->add_option("--theta", theta, "Strength parameter (with --ewens)");
  rate->add_flag("--ewens", use_ewens,
                 "Evaluate the alpha=0 rate function x log(x/theta) - x + theta");
  add_output_options(rate, &out);

  auto* bound = app.add_subcommand(
      "bound", "Closed-form tail bound vs exact tail vs Chernoff bound");
  bound->add_option("--alpha", alpha, "Discount parameter in (0,1)");
  bound->add_option("--theta", theta, "Strength parameter > -alpha");
  bound->add_option("--n", n, "Sample size n >= 1");
  bound->add_option("--x", xs, "Evaluation points in (0,1)")
      ->delimiter(',')
      ->required();
  add_output_options(bound, &out);

  auto* verify = app.add_subcommand(
      "verify", "Monte Carlo verification report for the tail bound");
  verify->add_option("--alpha", alpha, "Discount parameter in (0,1)");
  verify->add_option("--theta", theta, "Strength parameter > -alpha");
  verify->add_option("--n", n, "Sample size n >= 1");
  verify->add_option("--x", xs, "Evaluation points in (0,1)")->delimiter(',');
  verify->add_option("--reps", reps, "Monte Carlo replicates")->default_val(100000);
  verify->add_option("--seed", seed_text, "64-bit seed or 'random'");
  add_output_options(verify, &out);

  auto* ml = app.add_subcommand("ml", "Mittag-Leffler function values");
  ml->add_option("--alpha", alpha, "First parameter");
  ml->add_option("--beta", ml_beta, "Second parameter (ml3 only)");
  ml->add_option("--gamma", ml_gamma, "Third parameter (ml3 only)");
  ml->add_option("--z", z, "Argument");
  ml->add_option("--method", method, "series | integral | ml3")
      ->check(CLI::IsMember({"series", "integral", "ml3"}));
  add_output_options(ml, &out);

  auto* selftest = app.add_subcommand(
      "selftest", "Run the built-in invariant checks and exit 0 on success");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sample->parsed()) {
      const std::uint64_t seed = parse_seed(seed_text);
      if (reps < 1) throw std::domain_error("sample: reps must be >= 1");
      Table table({"rep", "k_n"});
      for (std::int64_t rep = 0; rep < reps; ++rep) {
        const std::int64_t k =
            use_bernoulli
                ? ewens_bernoulli_sample(theta, n, seed, std::uint64_t(rep)).k_n
                : crp_sample(ModelParams(alpha, theta), n, seed,
                             std::uint64_t(rep)).k_n;
        table.add_row({echo(rep), echo(k)});
      }
      emit(table, out);
      return 0;
    }

    if (mgf->parsed()) {
      const ModelParams params(alpha, theta);
      if (want_bounds) {
        const MgfBounds b = mgf_bounds_general(params, n, t);
        Table table({"alpha", "theta", "n", "t", "lower", "upper"});
        table.add_row({echo(alpha), echo(theta), echo(n), echo(t),
                       computed(b.lower, out.decimals),
                       computed(b.upper, out.decimals)});
        emit(table, out);
        return 0;
      }
      MgfResult res{};
      if (t <= 0.0) {
        // No convergent series on this side; fall back to the exact
        // finite sum over the distribution of K_n.
        res = mgf_from_distribution(params, n, t);
      } else if (method == "series") {
        res = theta == 0.0 ? mgf_series_theta0(alpha, n, t)
                           : mgf_series_general(params, n, t);
      } else if (method == "mlintegral") {
        res = theta == 0.0 ? mgf_ml_form_theta0(alpha, n, t)
                           : mgf_integral_general(params, n, t);
      } else if (method == "sharp") {
        if (theta != 0.0)
          throw std::domain_error("mgf: sharp engine requires theta = 0");
        res = mgf_sharp_theta0(alpha, n, t);
      } else if (method == "gfcoeff") {
        if (theta != 0.0)
          throw std::domain_error("mgf: gfcoeff engine requires theta = 0");
        const auto coeffs = gf_taylor_coeff(alpha, t, int(n));
        res = MgfResult{coeffs.back(), std::log(coeffs.back()),
                        MgfMethod::GfCoeff, n, std::nullopt};
      } else {  // enum
        const double lv = exact_log_mgf_enumeration(params, n, t);
        res = MgfResult{std::exp(lv), lv, MgfMethod::Enumeration,
                        std::int64_t(enumerate_partitions(n).size()),
                        std::nullopt};
      }
      Table table({"alpha", "theta", "n", "t", "method", "value", "log_value",
                   "terms_used", "remainder"});
      table.add_row({echo(alpha), echo(theta), echo(n), echo(t),
                     echo(std::string(mgf_method_name(res.method))),
                     computed(res.value, out.decimals),
                     computed(res.log_value, out.decimals),
                     echo(res.terms_used),
                     computed_opt(res.remainder, out.decimals)});
      emit(table, out);
      return 0;
    }

    if (rate->parsed()) {
      Table table({"x", "t_x", "rate"});
      if (use_ewens) {
        const double r = rate_ewens(theta, x);
        const double t_x = x > 0.0 ? std::log(x / theta) : kNegInf;
        table.add_row({echo(x), computed(t_x, out.decimals),
                       computed(r, out.decimals)});
      } else {
        const RateResult r = rate_alpha(alpha, x);
        table.add_row({echo(x), computed(r.t_x, out.decimals),
                       computed(r.rate, out.decimals)});
      }
      emit(table, out);
      return 0;
    }

    if (bound->parsed()) {
      const ModelParams params(alpha, theta);
      Table table({"alpha", "theta", "n", "x", "rate_bound", "exact_tail",
                   "exact_chernoff"});
      std::optional<KnDistribution> dist;
      if (n <= 100000) dist = kn_distribution(params, n);
      for (const double xv : xs) {
        BoundReport row{xv, n, concentration_bound(params, n, xv),
                        std::nullopt, exact_chernoff(params, n, xv)};
        if (dist) row.exact_tail = exact_tail(*dist, xv);
        table.add_row({echo(alpha), echo(theta), echo(row.n), echo(row.x),
                       computed(row.rate_bound, out.decimals),
                       computed_opt(row.exact_tail, out.decimals),
                       computed_opt(row.exact_chernoff, out.decimals)});
      }
      emit(table, out);
      return 0;
    }

    if (verify->parsed()) {
      const ModelParams params(alpha, theta);
      const std::uint64_t seed = parse_seed(seed_text);
      if (xs.empty()) {
        Table table({"x"});
        emit(table, out);
        return 0;
      }
      const VerifyReport report = verify_bound(params, n, xs, reps, seed);
      Table table({"alpha", "theta", "n", "reps", "seed", "x", "p_hat",
                   "ci_lower", "ci_upper", "exact_tail", "rate_bound",
                   "exact_chernoff", "violation"});
      for (const auto& row : report.rows) {
        table.add_row({echo(alpha), echo(theta), echo(n), echo(reps),
                       echo(seed), echo(row.x),
                       computed(row.mc.p_hat, out.decimals),
                       computed(row.mc.ci_lower_95, out.decimals),
                       computed(row.mc.ci_upper_95, out.decimals),
                       computed_opt(row.exact_tail, out.decimals),
                       computed(row.rate_bound, out.decimals),
                       computed_opt(row.exact_chernoff, out.decimals),
                       echo_bool(row.violation)});
      }
      json meta{{"alpha", alpha},  {"theta", theta},
                {"n", n},          {"reps", reps},
                {"seed", seed},    {"wall_seconds", report.wall_seconds},
                {"violations", report.violation_count()}};
      emit(table, out, &meta);
      if (report.violation_count() > 0)
        std::cerr << "verify: " << report.violation_count()
                  << " row(s) contradict the bound\n";
      return 0;
    }

    if (ml->parsed()) {
      double value;
      if (method == "integral")
        value = ml_integral(alpha, z);
      else if (method == "ml3")
        value = ml3_series(alpha, ml_beta, ml_gamma, z);
      else
        value = ml_series(alpha, z);
      Table table({"alpha", "beta", "gamma", "z", "method", "value"});
      table.add_row({echo(alpha), echo(ml_beta), echo(ml_gamma), echo(z),
                     echo(method), computed(value, out.decimals)});
      emit(table, out);
      return 0;
    }

    if (selftest->parsed()) return run_selftest();
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

namespace {

// Fast subset of the library invariants; used by `selftest`.
int run_selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  // Partition probabilities sum to 1.
  {
    bool ok = true;
    for (const double a : {0.0, 0.25, 0.5, 0.75})
      for (const double th : {0.1, 0.5, 1.0}) {
        const ModelParams p(a, th);
        double total = 0.0;
        for (const auto& pc : enumerate_partitions(6))
          total += std::exp(eppf_log_prob(p, pc));
        ok = ok && std::abs(total - 1.0) < 1e-10;
      }
    check("partition probabilities sum to one", ok);
  }

  // Marginal law of K_n matches the enumeration.
  {
    const ModelParams p(0.5, 0.0);
    const auto dist = kn_distribution(p, 6);
    std::vector<double> ref(6, 0.0);
    for (const auto& pc : enumerate_partitions(6))
      ref[size_t(pc.block_count() - 1)] += std::exp(eppf_log_prob(p, pc));
    bool ok = true;
    for (int k = 0; k < 6; ++k) ok = ok && std::abs(ref[size_t(k)] - dist.probs[size_t(k)]) < 1e-12;
    check("block-count law matches enumeration", ok);
  }

  // Engines agree with the enumeration oracle.
  {
    const ModelParams p(0.5, 0.0);
    const double oracle = exact_mgf_enumeration(p, 6, 1.0);
    const double series = mgf_series_theta0(0.5, 6, 1.0).value;
    const double integral = mgf_ml_form_theta0(0.5, 6, 1.0).value;
    const double sharp = mgf_sharp_theta0(0.5, 6, 1.0).value;
    const double gf = gf_taylor_coeff(0.5, 1.0, 6).back();
    auto rel = [&](double v) { return std::abs(v - oracle) / oracle; };
    check("mgf engines agree with enumeration",
          rel(series) < 1e-10 && rel(integral) < 1e-7 && rel(sharp) < 1e-7 &&
              rel(gf) < 1e-9);
  }

  // Mean-one change-of-measure weight.
  {
    const ModelParams p(0.5, 0.75);
    const auto dist = kn_distribution(ModelParams(0.5, 0.0), 8);
    double total = 0.0;
    for (std::int64_t k = 1; k <= 8; ++k)
      total += dist.prob(k) * martingale_weight(p, 8, k);
    check("change-of-measure weight has mean one",
          std::abs(total - 1.0) < 1e-10);
  }

  // Mittag-Leffler engines.
  {
    const double series = ml_series(0.5, 1.0);
    const double integral = ml_integral(0.5, 1.0);
    const double erf_oracle = std::exp(1.0) * (1.0 + std::erf(1.0));
    check("mittag-leffler series vs integral vs erf identity",
          std::abs(series - erf_oracle) < 1e-10 &&
              std::abs(integral - series) / series < 1e-8);
  }

  // Rate-function duality.
  {
    const RateResult r = rate_alpha(0.5, 0.5);
    const double closed = -0.5 * std::log(1.5) + std::log(2.0 / 1.5);
    check("rate function matches the closed form at alpha = 1/2",
          std::abs(r.rate - closed) < 1e-9 &&
              std::abs(r.t_x - std::log(1.5)) < 1e-8);
  }

  // The exact tail never exceeds the closed-form bound.
  {
    bool ok = true;
    for (const double a : {0.3, 0.5, 0.7})
      for (const double th : {0.0, 1.0})
        for (const std::int64_t nn : {10, 50}) {
          const ModelParams p(a, th);
          const auto dist = kn_distribution(p, nn);
          for (const double xv : {0.2, 0.4, 0.6, 0.8})
            ok = ok && exact_tail(dist, xv) <=
                           concentration_bound(p, nn, xv) * (1.0 + 1e-12);
        }
    check("exact tail is dominated by the closed-form bound", ok);
  }

  // Sampler determinism and agreement with the exact law.
  {
    const ModelParams p(0.5, 0.0);
    const bool same = crp_sample(p, 100, 42).k_n == crp_sample(p, 100, 42).k_n;
    const auto est1 = mc_tail(p, 3, 2.0 / 3.0, 20000, 7, 1);
    const auto est8 = mc_tail(p, 3, 2.0 / 3.0, 20000, 7, 8);
    const double exact = exact_tail(p, 3, 2.0 / 3.0);
    check("sampler determinism and Monte Carlo agreement",
          same && est1.p_hat == est8.p_hat && est1.ci_lower_95 <= exact &&
              exact <= est1.ci_upper_95);
  }

  if (failures == 0) {
    std::cout << "selftest: all checks passed\n";
    return 0;
  }
  std::cout << "selftest: " << failures << " check(s) failed\n";
  return 3;
}

}  // namespace

}  // namespace ewens
