#include "kstarlab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kstarlab/averages.hpp"
#include "kstarlab/configspace.hpp"
#include "kstarlab/constants.hpp"
#include "kstarlab/distribution.hpp"
#include "kstarlab/ecbox.hpp"
#include "kstarlab/kfun.hpp"
#include "kstarlab/parallel.hpp"

namespace kstarlab::cli {

namespace {

using json = nlohmann::ordered_json;

// 15 significant digits for all human-readable numeric output
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json report;
  std::vector<std::string> table_lines;
  Csv csv;
};

struct GlobalOpts {
  std::string format = "table";
  std::string out_path;
  std::int64_t truncation_prime = constants::kDefaultTruncationPrime;
  std::int64_t chunk = averages::kDefaultChunk;
};

void write_csv(const Csv& csv, std::ostream& os) {
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    os << (i ? "," : "") << csv.header[i];
  }
  os << "\n";
  for (const auto& row : csv.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << "\n";
  }
}

void emit(const std::string& subcommand, const std::map<std::string, std::string>& parameters,
          double wall_seconds, const GlobalOpts& global, const Output& result,
          std::ostream& out) {
  if (global.format == "json") {
    json manifest;
    manifest["subcommand"] = subcommand;
    manifest["parameters"] = parameters;
    manifest["seed_free"] = true;
    manifest["versions"] = {{"tool", kToolVersion}, {"format", kFormatVersion}};
    manifest["wall_time_seconds"] = wall_seconds;
    json doc;
    doc["manifest"] = manifest;
    doc["report"] = result.report;
    out << doc.dump(2) << "\n";
  } else if (global.format == "csv") {
    write_csv(result.csv, out);
  } else {
    out << "# kstarlab " << subcommand;
    for (const auto& [k, v] : parameters) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& line : result.table_lines) out << line << "\n";
  }
}

std::string constant_row(const constants::EulerProductResult& r) {
  std::ostringstream os;
  os << r.factor_id.name() << "  value=" << fmt(r.value)
     << "  truncation_prime=" << r.truncation_prime << "  tail_bound=" << fmt(r.tail_bound);
  return os.str();
}

json constant_json(const constants::EulerProductResult& r) {
  return json{{"name", r.factor_id.name()},
              {"value", r.value},
              {"truncation_prime", r.truncation_prime},
              {"tail_bound", r.tail_bound}};
}

// ---------------------------------------------------------------------------
// subcommand handlers
// ---------------------------------------------------------------------------

Output handle_kstar(std::int64_t n, const GlobalOpts& global) {
  const arith::SpfTable table(std::max<std::int64_t>(n, 2));
  const kfun::RunConstants consts = kfun::run_constants(global.truncation_prime);
  const kfun::KValue v = kfun::k_exact(n, consts, table);
  const std::string method =
      n == 1 ? "dedicated Euler product for K(1)" : "decomposition K = C2 * F(n-1) * G(n)";

  Output o;
  o.report = {{"n", v.n},
              {"k", v.k},
              {"k_star", v.k_star},
              {"method", method},
              {"c2", consts.c2},
              {"c2_truncation_prime", consts.truncation_prime},
              {"c2_tail_bound", consts.c2_tail_bound}};
  o.table_lines = {
      "n       " + fmt(v.n),
      "K(n)    " + fmt(v.k),
      "K*(n)   " + fmt(v.k_star),
      "method  " + method,
      "# C2 = " + fmt(consts.c2) + " (truncation " + fmt(consts.truncation_prime) +
          ", |log tail| <= " + fmt(consts.c2_tail_bound) + ")",
  };
  o.csv.header = {"n", "k", "k_star", "c2", "c2_truncation_prime", "c2_tail_bound"};
  o.csv.rows = {{fmt(v.n), fmt(v.k), fmt(v.k_star), fmt(consts.c2), fmt(consts.truncation_prime),
                 fmt(consts.c2_tail_bound)}};
  return o;
}

Output handle_constants(const GlobalOpts& global) {
  std::vector<constants::EulerProductResult> rows;
  for (const auto id : {constants::ConstantId::kC2, constants::ConstantId::kJ,
                        constants::ConstantId::kPrimeMean, constants::ConstantId::kU0,
                        constants::ConstantId::kKAt1}) {
    rows.push_back(constants::named_constant(id, global.truncation_prime));
  }
  rows.push_back(constants::mu2_reference(global.truncation_prime));

  Output o;
  o.report = json::array();
  o.csv.header = {"name", "value", "truncation_prime", "tail_bound"};
  for (const auto& r : rows) {
    o.report.push_back(constant_json(r));
    o.table_lines.push_back(constant_row(r));
    o.csv.rows.push_back({r.factor_id.name(), fmt(r.value), fmt(r.truncation_prime), fmt(r.tail_bound)});
  }
  return o;
}

json report_json(const averages::PartialSumReport& r) {
  json decades = json::array();
  for (const auto& d : r.decades) decades.push_back({{"x", d.x}, {"mean", d.mean}});
  return json{{"mode", averages::mode_name(r.mode)},
              {"x", r.x},
              {"terms", r.terms},
              {"sum", r.sum},
              {"mean", r.mean},
              {"reference", r.reference},
              {"deviation", r.deviation},
              {"decades", decades},
              {"c2_tail_bound", r.c2_tail_bound},
              {"reference_note", r.reference_note},
              {"min_summand", r.min_summand},
              {"max_summand", r.max_summand},
              {"max_r_value", r.max_r_value}};
}

Output handle_avg(const std::string& mode_str, std::int64_t x, const GlobalOpts& global) {
  const averages::Mode mode = averages::mode_from_name(mode_str);
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  const kfun::RunConstants consts = kfun::run_constants(global.truncation_prime);
  const averages::PartialSumReport r =
      averages::partial_sums(mode, x, global.chunk, consts, table, parallel::default_workers());

  Output o;
  o.report = report_json(r);
  o.table_lines = {
      "mode        " + averages::mode_name(r.mode),
      "x           " + fmt(r.x),
      "terms       " + fmt(r.terms),
      "sum         " + fmt(r.sum),
      "mean        " + fmt(r.mean),
      "reference   " + fmt(r.reference) + "  (" + r.reference_note + ")",
      "deviation   " + fmt(r.deviation),
      "# systematic |log| error from truncated C2 <= " + fmt(r.c2_tail_bound),
  };
  for (const auto& d : r.decades) {
    o.table_lines.push_back("  decade x=" + fmt(d.x) + "  mean=" + fmt(d.mean));
  }
  o.csv.header = {"mode", "x", "terms", "sum", "mean", "reference", "deviation"};
  o.csv.rows = {{averages::mode_name(r.mode), fmt(r.x), fmt(r.terms), fmt(r.sum), fmt(r.mean),
                 fmt(r.reference), fmt(r.deviation)}};
  return o;
}

Output handle_moments(std::int64_t x, int k_max, const GlobalOpts& global) {
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  const kfun::RunConstants consts = kfun::run_constants(global.truncation_prime);
  const int workers = parallel::default_workers();

  Output o;
  o.report = json::array();
  o.csv.header = {"k", "empirical", "euler_product", "schur"};
  for (int k = 1; k <= k_max; ++k) {
    const double emp = distribution::empirical_moment(x, k, consts, table, global.chunk, workers);
    const auto mu = constants::moment_mu(k, global.truncation_prime);
    const auto mu_prime = constants::moment_mu_prime(k, global.truncation_prime);
    o.report.push_back({{"k", k},
                        {"empirical", emp},
                        {"euler_product", mu.value},
                        {"schur", mu_prime.value}});
    o.table_lines.push_back("k=" + fmt(std::int64_t{k}) + "  empirical=" + fmt(emp) +
                            "  euler_product=" + fmt(mu.value) + "  schur=" + fmt(mu_prime.value));
    o.csv.rows.push_back({fmt(std::int64_t{k}), fmt(emp), fmt(mu.value), fmt(mu_prime.value)});
  }
  return o;
}

Output handle_cdf(std::int64_t x, int bins, const GlobalOpts& global) {
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  const kfun::RunConstants consts = kfun::run_constants(global.truncation_prime);
  const distribution::EmpiricalCdf cdf =
      distribution::empirical_cdf(x, bins, consts, table, parallel::default_workers());

  Output o;
  json bins_json = json::array();
  o.csv.header = {"bin_lo", "bin_hi", "count", "cum_fraction"};
  std::int64_t cum = 0;
  for (std::size_t i = 0; i < cdf.counts.size(); ++i) {
    cum += cdf.counts[i];
    const double frac = static_cast<double>(cum) / static_cast<double>(cdf.total);
    bins_json.push_back({{"bin_lo", cdf.bin_edges[i]},
                         {"bin_hi", cdf.bin_edges[i + 1]},
                         {"count", cdf.counts[i]},
                         {"cum_fraction", frac}});
    o.csv.rows.push_back({fmt(cdf.bin_edges[i]), fmt(cdf.bin_edges[i + 1]), fmt(cdf.counts[i]), fmt(frac)});
  }
  o.report = {{"x", cdf.x}, {"total", cdf.total}, {"u0", cdf.u0}, {"bins", bins_json}};
  o.table_lines.push_back("x=" + fmt(cdf.x) + "  total=" + fmt(cdf.total) + "  u0=" + fmt(cdf.u0) +
                          "  mass_below_u0=" + fmt(distribution::mass_below_u0(cdf)));
  for (auto& row : o.csv.rows) {
    o.table_lines.push_back("(" + row[0] + ", " + row[1] + "]  count=" + row[2] +
                            "  cum=" + row[3]);
  }
  return o;
}

Output handle_config_identity(double z, int k, std::optional<int> e_max, bool odd) {
  const Rational value = odd ? configspace::identity_sum_restricted(z, k, configspace::TwoCell::kC,
                                                                    e_max)
                             : configspace::identity_sum(z, k, e_max);
  const std::string frac = to_fraction_string(value);
  const double dec = to_double(value);
  const bool exact_one = (value == 1);

  Output o;
  o.report = {{"z", z},
              {"k", k},
              {"e_max", e_max.has_value() ? json(*e_max) : json(nullptr)},
              {"odd", odd},
              {"value_fraction", frac},
              {"value_decimal", dec}};
  o.table_lines = {frac + " (= " + fmt(dec) + ")" + (exact_one ? "  -- 1 (exact)" : "")};
  o.csv.header = {"z", "k", "e_max", "odd", "value_fraction", "value_decimal"};
  o.csv.rows = {{fmt(z), fmt(std::int64_t{k}), e_max ? fmt(std::int64_t{*e_max}) : "",
                 odd ? "true" : "false", frac, fmt(dec)}};
  return o;
}

Output handle_ec_count(std::int64_t a, std::int64_t b, std::int64_t p) {
  const auto curve = ecbox::make_curve(a, b);
  const std::int64_t count = ecbox::point_count(curve, p);
  Output o;
  o.report = {{"a", a}, {"b", b}, {"p", p}, {"point_count", count}};
  o.table_lines = {"#E(F_p) = " + fmt(count) + " for y^2 = x^3 + " + fmt(a) + "x + " + fmt(b) +
                   " over F_" + fmt(p)};
  o.csv.header = {"a", "b", "p", "point_count"};
  o.csv.rows = {{fmt(a), fmt(b), fmt(p), fmt(count)}};
  return o;
}

Output handle_ec_me(std::int64_t a, std::int64_t b, std::int64_t n) {
  const auto curve = ecbox::make_curve(a, b);
  const arith::SpfTable table(std::max<std::int64_t>(2 * n + 16, 16));
  const std::int64_t count = ecbox::m_e(curve, n, table);
  Output o;
  o.report = {{"a", a}, {"b", b}, {"N", n}, {"m_e", count}};
  o.table_lines = {"M_E(" + fmt(n) + ") = " + fmt(count)};
  o.csv.header = {"a", "b", "N", "m_e"};
  o.csv.rows = {{fmt(a), fmt(b), fmt(n), fmt(count)}};
  return o;
}

Output handle_ec_box(std::int64_t n, std::int64_t box_a, std::int64_t box_b,
                     const GlobalOpts& global) {
  const arith::SpfTable table(std::max<std::int64_t>(2 * n + 16, 16));
  const kfun::RunConstants consts = kfun::run_constants(global.truncation_prime);
  const ecbox::BoxReport r = ecbox::box_average(n, box_a, box_b, consts, table);
  Output o;
  o.report = {{"N", r.n},           {"A", r.box_a},        {"B", r.box_b},
              {"curve_count", r.curve_count}, {"avg_me", r.avg_me}, {"prediction", r.prediction},
              {"ratio", r.ratio}};
  o.table_lines = {
      "N            " + fmt(r.n),
      "box          |a| <= " + fmt(r.box_a) + ", |b| <= " + fmt(r.box_b),
      "curve_count  " + fmt(r.curve_count),
      "avg M_E(N)   " + fmt(r.avg_me),
      "prediction   " + fmt(r.prediction) + "  (K*(N)/log N, diagnostic)",
      "ratio        " + fmt(r.ratio),
  };
  o.csv.header = {"N", "A", "B", "curve_count", "avg_me", "prediction", "ratio"};
  o.csv.rows = {{fmt(r.n), fmt(r.box_a), fmt(r.box_b), fmt(r.curve_count), fmt(r.avg_me),
                 fmt(r.prediction), fmt(r.ratio)}};
  return o;
}

Output handle_ec_sum(std::int64_t a, std::int64_t b, std::int64_t x) {
  const auto curve = ecbox::make_curve(a, b);
  const ecbox::SumMe r = ecbox::sum_me(curve, x);
  Output o;
  o.report = {{"a", a}, {"b", b}, {"x", x}, {"sum", r.sum}, {"pi_x", r.pi_x}, {"odd_sum", r.odd_sum}};
  o.table_lines = {"sum_{N<=x} M_E(N) = " + fmt(r.sum), "pi(x)             = " + fmt(r.pi_x),
                   "odd-N part        = " + fmt(r.odd_sum)};
  o.csv.header = {"a", "b", "x", "sum", "pi_x", "odd_sum"};
  o.csv.rows = {{fmt(a), fmt(b), fmt(x), fmt(r.sum), fmt(r.pi_x), fmt(r.odd_sum)}};
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("kstarlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "exact and statistical evaluation of the elliptic-curve point-count weight K*\n"
      "KSTARLAB_THREADS overrides the worker count (results are identical either way)"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", global.out_path, "write the report to this path instead of stdout");
  app.add_option("--truncation-prime", global.truncation_prime,
                 "Euler products run over primes <= this bound")
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{100'000'000}))
      ->capture_default_str();
  app.add_option("--chunk", global.chunk, "chunk size of the deterministic parallel reduction")
      ->check(CLI::Range(averages::kMinChunk, std::int64_t{1} << 30))
      ->capture_default_str();

  // kstar
  auto* cmd_kstar = app.add_subcommand("kstar", "K(n) and K*(n) at a single n");
  std::int64_t kstar_n = 2;
  cmd_kstar->add_option("--n", kstar_n, "argument n >= 1")->required();

  // constants
  auto* cmd_constants =
      app.add_subcommand("constants", "certified Euler-product constants (C2, J, ...)");

  // avg
  auto* cmd_avg = app.add_subcommand("avg", "partial sums / means of the K family up to x");
  std::string avg_mode = "all";
  std::int64_t avg_x = 1000;
  cmd_avg->add_option("--mode", avg_mode, "all|odd|prime-kstar|prime-k|f-shifted|kcirc")
      ->required()
      ->check(CLI::IsMember({"all", "odd", "prime-kstar", "prime-k", "f-shifted", "kcirc"}));
  cmd_avg->add_option("--x", avg_x, "upper summation bound")->required();

  // moments
  auto* cmd_moments = app.add_subcommand("moments", "empirical vs Euler-product moments of K*");
  std::int64_t moments_x = 100000;
  int moments_kmax = 4;
  cmd_moments->add_option("--x", moments_x, "sample bound")->required();
  cmd_moments->add_option("--k-max", moments_kmax, "largest moment exponent")
      ->check(CLI::Range(1, distribution::kMaxMomentK))
      ->capture_default_str();

  // cdf
  auto* cmd_cdf = app.add_subcommand("cdf", "empirical distribution function of K*");
  std::int64_t cdf_x = 100000;
  int cdf_bins = 200;
  cmd_cdf->add_option("--x", cdf_x, "sample bound")->required();
  cmd_cdf->add_option("--bins", cdf_bins, "histogram bins")->capture_default_str();

  // config-identity
  auto* cmd_ci = app.add_subcommand("config-identity",
                                    "exact configuration-space sum over primes <= z");
  double ci_z = 5;
  int ci_k = 1;
  int ci_emax = -1;
  bool ci_odd = false;
  cmd_ci->add_option("--z", ci_z, "prime cutoff (z <= 13)")->required();
  cmd_ci->add_option("--k", ci_k, "moment exponent")->capture_default_str();
  cmd_ci->add_option("--e-max", ci_emax, "truncate exponent sums at e_max (oracle mode)")
      ->check(CLI::Range(1, configspace::kMaxExponentBound));
  cmd_ci->add_flag("--odd", ci_odd, "restrict to configurations with 2 in C (odd N)");

  // ec + subsubcommands
  auto* cmd_ec = app.add_subcommand("ec", "elliptic-curve ground truth");
  cmd_ec->require_subcommand(1);
  std::int64_t ec_a = 0, ec_b = 1, ec_p = 5, ec_n = 6, ec_x = 10000, ec_ba = 50, ec_bb = 50;
  auto* ec_count = cmd_ec->add_subcommand("count", "#E(F_p) by brute force");
  ec_count->add_option("--a", ec_a)->required();
  ec_count->add_option("--b", ec_b)->required();
  ec_count->add_option("--p", ec_p)->required();
  auto* ec_me = cmd_ec->add_subcommand("me", "M_E(N): window primes with #E(F_p) = N");
  ec_me->add_option("--a", ec_a)->required();
  ec_me->add_option("--b", ec_b)->required();
  ec_me->add_option("--N", ec_n)->required();
  auto* ec_box = cmd_ec->add_subcommand("box", "average of M_E(N) over a curve box");
  ec_box->add_option("--N", ec_n)->required();
  ec_box->add_option("--A", ec_ba)->required();
  ec_box->add_option("--B", ec_bb)->required();
  auto* ec_sum = cmd_ec->add_subcommand("sum", "sum of M_E(N) for N <= x vs pi(x)");
  ec_sum->add_option("--a", ec_a)->required();
  ec_sum->add_option("--b", ec_b)->required();
  ec_sum->add_option("--x", ec_x)->required();

  // global flags remain valid after the subcommand name
  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << app.help();
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Output result;
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    parameters["format"] = global.format;
    parameters["truncation_prime"] = fmt(global.truncation_prime);

    if (cmd_kstar->parsed()) {
      subcommand = "kstar";
      parameters["n"] = fmt(kstar_n);
      result = handle_kstar(kstar_n, global);
    } else if (cmd_constants->parsed()) {
      subcommand = "constants";
      result = handle_constants(global);
    } else if (cmd_avg->parsed()) {
      subcommand = "avg";
      parameters["mode"] = avg_mode;
      parameters["x"] = fmt(avg_x);
      parameters["chunk"] = fmt(global.chunk);
      result = handle_avg(avg_mode, avg_x, global);
    } else if (cmd_moments->parsed()) {
      subcommand = "moments";
      parameters["x"] = fmt(moments_x);
      parameters["k_max"] = fmt(std::int64_t{moments_kmax});
      parameters["chunk"] = fmt(global.chunk);
      result = handle_moments(moments_x, moments_kmax, global);
    } else if (cmd_cdf->parsed()) {
      subcommand = "cdf";
      parameters["x"] = fmt(cdf_x);
      parameters["bins"] = fmt(std::int64_t{cdf_bins});
      result = handle_cdf(cdf_x, cdf_bins, global);
    } else if (cmd_ci->parsed()) {
      subcommand = "config-identity";
      parameters["z"] = fmt(ci_z);
      parameters["k"] = fmt(std::int64_t{ci_k});
      if (ci_emax >= 0) parameters["e_max"] = fmt(std::int64_t{ci_emax});
      parameters["odd"] = ci_odd ? "true" : "false";
      result = handle_config_identity(
          ci_z, ci_k, ci_emax >= 0 ? std::optional<int>(ci_emax) : std::nullopt, ci_odd);
    } else if (cmd_ec->parsed()) {
      if (ec_count->parsed()) {
        subcommand = "ec count";
        parameters["a"] = fmt(ec_a);
        parameters["b"] = fmt(ec_b);
        parameters["p"] = fmt(ec_p);
        result = handle_ec_count(ec_a, ec_b, ec_p);
      } else if (ec_me->parsed()) {
        subcommand = "ec me";
        parameters["a"] = fmt(ec_a);
        parameters["b"] = fmt(ec_b);
        parameters["N"] = fmt(ec_n);
        result = handle_ec_me(ec_a, ec_b, ec_n);
      } else if (ec_box->parsed()) {
        subcommand = "ec box";
        parameters["N"] = fmt(ec_n);
        parameters["A"] = fmt(ec_ba);
        parameters["B"] = fmt(ec_bb);
        result = handle_ec_box(ec_n, ec_ba, ec_bb, global);
      } else {
        subcommand = "ec sum";
        parameters["a"] = fmt(ec_a);
        parameters["b"] = fmt(ec_b);
        parameters["x"] = fmt(ec_x);
        result = handle_ec_sum(ec_a, ec_b, ec_x);
      }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!global.out_path.empty()) {
      std::ofstream file(global.out_path);
      if (!file) throw std::runtime_error("cannot open --out path: " + global.out_path);
      emit(subcommand, parameters, wall, global, result, file);
    } else {
      emit(subcommand, parameters, wall, global, result, out);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kstarlab::cli
