#include "cli.hpp"

#include "rmq/bounds.hpp"
#include "rmq/diffusion.hpp"
#include "rmq/dispatch.hpp"
#include "rmq/error.hpp"
#include "rmq/monte_carlo.hpp"
#include "rmq/normal_quantizer.hpp"
#include "rmq/pricing.hpp"
#include "rmq/tree.hpp"
#include "rmq/tree_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rmq::cli {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

struct ModelArgs {
  std::string name = "black-scholes";
  double r = 0.15;
  double sigma = 0.2;
  double theta = 0.5;
  double delta = 0.5;
  double x0 = 100.0;
  double maturity = 1.0;
  std::size_t steps = 120;

  void add_to(CLI::App& app) {
    app.add_option("--model", name, "brownian | black-scholes | pseudo-cev")->capture_default_str();
    app.add_option("--r", r, "interest rate")->capture_default_str();
    app.add_option("--sigma", sigma, "Black-Scholes volatility")->capture_default_str();
    app.add_option("--theta", theta, "pseudo-CEV scale")->capture_default_str();
    app.add_option("--delta", delta, "pseudo-CEV exponent")->capture_default_str();
    app.add_option("--x0", x0, "initial value")->capture_default_str();
    app.add_option("--T", maturity, "maturity")->capture_default_str();
    app.add_option("--n", steps, "number of time steps")->capture_default_str();
  }

  ModelSpec spec() const {
    ModelSpec s{name, {}};
    if (name == "black-scholes") {
      s.params = {{"r", r}, {"sigma", sigma}};
    } else if (name == "pseudo-cev") {
      s.params = {{"r", r}, {"theta", theta}, {"delta", delta}};
    }
    return s;
  }

  DiffusionModel model() const { return models::from_spec(spec()); }
  double dt() const { return maturity / static_cast<double>(steps); }
  double rate() const { return name == "brownian" ? 0.0 : r; }
};

std::vector<double> a_vector(const ModelArgs& m, AReading reading) {
  std::vector<double> a(m.steps + 1);
  if (m.name == "brownian") {
    for (std::size_t l = 0; l <= m.steps; ++l) a[l] = brownian_a(l, m.dt());
    return a;
  }
  const BoundParams params = bound_params(m.model(), m.x0, m.dt());
  for (std::size_t l = 0; l <= m.steps; ++l) a[l] = a_coeff(l, m.maturity, params, reading);
  return a;
}

AReading parse_reading(const std::string& s) {
  if (s == "statement") return AReading::Statement;
  if (s == "proof") return AReading::Proof;
  throw std::invalid_argument("--a-reading must be statement or proof");
}

std::vector<std::size_t> parse_budget(const std::string& spec, const ModelArgs& m,
                                      AReading reading) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("budget '" + spec + "' must be equal:N, optimal:N or sizes:1,a,b,...");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "equal") return dispatch_equal(std::stoul(rest), m.steps);
  if (kind == "optimal") return dispatch_optimal(a_vector(m, reading), std::stoul(rest));
  if (kind == "sizes") {
    std::vector<std::size_t> sizes;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(std::stoul(item));
    if (sizes.size() != m.steps + 1) {
      throw std::invalid_argument("sizes: expected n+1 = " + std::to_string(m.steps + 1) + " entries");
    }
    return sizes;
  }
  throw std::invalid_argument("unknown budget kind '" + kind + "'");
}

struct BuildArgs {
  std::string budget = "equal:48000";
  std::string reading = "statement";
  int iters = 5;
  unsigned threads = 1;
  bool drop_transitions = false;

  void add_to(CLI::App& app) {
    app.add_option("--budget", budget, "equal:N | optimal:N | sizes:1,N1,...,Nn")->capture_default_str();
    app.add_option("--a-reading", reading, "statement | proof (optimal budgets)")->capture_default_str();
    app.add_option("--iters", iters, "Newton iterations per level")->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->capture_default_str();
    app.add_flag("--drop-transitions", drop_transitions, "do not keep transition matrices");
  }

  QuantizationTree build(const ModelArgs& m) const {
    const auto sizes = parse_budget(budget, m, parse_reading(reading));
    TreeOptions opts;
    opts.newton_iterations = iters;
    opts.keep_transitions = !drop_transitions;
    opts.engine.threads = threads;
    return build_tree(m.model(), m.x0, m.maturity, m.steps, sizes, opts);
  }
};

// Expands "a..b" (step 50), "a:b:s" or a single value.
std::vector<std::size_t> parse_range(const std::string& spec) {
  std::size_t lo = 0, hi = 0, step = 50;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    lo = std::stoul(spec.substr(0, dots));
    hi = std::stoul(spec.substr(dots + 2));
  } else if (std::count(spec.begin(), spec.end(), ':') == 2) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    lo = std::stoul(spec.substr(0, c1));
    hi = std::stoul(spec.substr(c1 + 1, c2 - c1 - 1));
    step = std::stoul(spec.substr(c2 + 1));
  } else {
    lo = hi = std::stoul(spec);
  }
  if (step == 0 || hi < lo) throw std::invalid_argument("bad range '" + spec + "'");
  std::vector<std::size_t> out;
  for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

struct TableRow {
  double param;
  double strike;
  double model_param;
};

struct TableSpec {
  std::string column;
  std::string model;
  bool closed_form;
  std::vector<TableRow> rows;
};

TableSpec table_spec(const std::string& name) {
  if (name == "table1") {
    TableSpec t{"theta", "pseudo-cev", false, {}};
    for (double th : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 2.0, 3.0, 4.0}) t.rows.push_back({th, 100.0, th});
    return t;
  }
  if (name == "table2") {
    TableSpec t{"K", "pseudo-cev", false, {}};
    for (double k = 100.0; k <= 130.0; k += 5.0) t.rows.push_back({k, k, 4.0});
    return t;
  }
  if (name == "table3") {
    TableSpec t{"sigma", "black-scholes", true, {}};
    for (double s : {0.05, 0.06, 0.07, 0.08, 0.09, 0.10, 0.20, 0.30, 0.40}) t.rows.push_back({s, 100.0, s});
    return t;
  }
  if (name == "table4") {
    TableSpec t{"K", "black-scholes", true, {}};
    for (double k = 100.0; k <= 130.0; k += 5.0) t.rows.push_back({k, k, 0.40});
    return t;
  }
  throw std::invalid_argument("unknown table '" + name + "' (table1..table4)");
}

void print_tree_summary(std::ostream& out, const QuantizationTree& tree) {
  std::size_t points = 0;
  for (const Level& l : tree.levels) points += l.grid.size();
  out << "n,total_points,terminal_size,terminal_distortion,unconverged_levels\n"
      << tree.steps << ',' << points << ',' << tree.terminal().grid.size() << ','
      << num(tree.terminal().stats.distortion) << ',' << unconverged_levels(tree).size() << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recursive marginal quantization of Euler schemes", "rmq"};
  app.set_config("--config", "", "TOML/INI file; command-line flags take precedence");
  app.require_subcommand(1);

  // build
  ModelArgs build_model;
  BuildArgs build_args;
  std::string build_out;
  std::string build_csv;
  auto* build = app.add_subcommand("build", "build a quantization tree");
  build_model.add_to(*build);
  build_args.add_to(*build);
  build->add_option("--out", build_out, "tree JSON file")->required();
  build->add_option("--csv", build_csv, "also write level,index,x,weight CSV");

  // price
  ModelArgs price_model;
  BuildArgs price_build;
  std::string price_tree;
  std::string payoff_name = "put";
  double strike = 100.0;
  std::optional<double> price_rate;
  std::optional<double> bound_lip;
  auto* price = app.add_subcommand("price", "price a European payoff on a tree");
  price_model.add_to(*price);
  price_build.add_to(*price);
  price->add_option("--tree", price_tree, "tree JSON file (otherwise built from the model flags)");
  price->add_option("--payoff", payoff_name, "put | call")->capture_default_str();
  price->add_option("--strike", strike, "strike")->capture_default_str();
  price->add_option("--rate", price_rate, "discount rate (default: the model's r)");
  price->add_option("--bound-lip", bound_lip, "payoff Lipschitz constant for the error bound");

  // mc-price
  ModelArgs mc_model;
  std::string mc_payoff = "put";
  double mc_strike = 100.0;
  std::uint64_t paths = 1000000;
  std::uint64_t seed = 42;
  unsigned mc_threads = 1;
  double z = 1.96;
  auto* mc = app.add_subcommand("mc-price", "Euler Monte Carlo price");
  mc_model.add_to(*mc);
  mc->add_option("--payoff", mc_payoff, "put | call")->capture_default_str();
  mc->add_option("--strike", mc_strike, "strike")->capture_default_str();
  mc->add_option("--paths", paths, "number of paths")->capture_default_str();
  mc->add_option("--seed", seed, "random seed")->capture_default_str();
  mc->add_option("--threads", mc_threads, "worker threads")->capture_default_str();
  mc->add_option("--z", z, "CI half-width in standard errors")->capture_default_str();

  // normal-grid
  std::size_t grid_size = 10;
  auto* normal = app.add_subcommand("normal-grid", "optimal quantizer of N(0,1)");
  normal->add_option("N", grid_size, "grid size")->required()->check(CLI::PositiveNumber);

  // bounds
  ModelArgs bounds_model;
  std::string bounds_budget = "equal:48000";
  std::string bounds_reading = "statement";
  std::optional<std::size_t> bounds_k;
  double p = 3.0;
  double k_universal = 1.0;
  auto* bounds = app.add_subcommand("bounds", "error-bound constants and the bound at level k");
  bounds_model.add_to(*bounds);
  bounds->add_option("--budget", bounds_budget, "equal:N | optimal:N | sizes:...")->capture_default_str();
  bounds->add_option("--a-reading", bounds_reading, "statement | proof")->capture_default_str();
  bounds->add_option("--k", bounds_k, "level (default n)");
  bounds->add_option("--p", p, "moment order in (2,3]")->capture_default_str();
  bounds->add_option("--K-universal", k_universal, "Pierce constant")->capture_default_str();

  // dispatch
  ModelArgs dispatch_model;
  bool brownian = false;
  std::string dispatch_budgets = "250..5000";
  std::string rule = "optimal";
  std::string rounding = "nearest";
  std::string dispatch_reading = "statement";
  auto* dispatch = app.add_subcommand("dispatch", "grid-size schedules as CSV");
  dispatch_model.add_to(*dispatch);
  dispatch->add_flag("--brownian", brownian, "standard Brownian motion on [0,1]");
  dispatch->add_option("--N", dispatch_budgets, "budget, a..b (step 50) or a:b:step")->capture_default_str();
  dispatch->add_option("--rule", rule, "optimal | equal")->capture_default_str();
  dispatch->add_option("--rounding", rounding, "nearest | floor")->capture_default_str();
  dispatch->add_option("--a-reading", dispatch_reading, "statement | proof")->capture_default_str();

  // compare-brownian
  std::size_t cmp_steps = 50;
  std::string cmp_budgets = "250:5000:50";
  int cmp_iters = 5;
  auto* compare = app.add_subcommand("compare-brownian",
                                     "recursive vs regular quantization errors of W_1");
  compare->add_option("--n", cmp_steps, "number of time steps")->capture_default_str();
  compare->add_option("--budgets", cmp_budgets, "a:b:step or a..b")->capture_default_str();
  compare->add_option("--iters", cmp_iters, "Newton iterations per level")->capture_default_str();

  // table
  std::string table_name;
  std::size_t table_points = 400;
  std::size_t table_steps = 120;
  std::uint64_t table_paths = 0;
  std::uint64_t table_seed = 42;
  unsigned table_threads = 1;
  auto* table = app.add_subcommand("table", "reproduce a pricing table as CSV");
  table->add_option("--name", table_name, "table1 | table2 | table3 | table4")->required();
  table->add_option("--points", table_points, "grid size per level")->capture_default_str();
  table->add_option("--n", table_steps, "number of time steps")->capture_default_str();
  table->add_option("--mc-paths", table_paths, "add Monte Carlo columns with this many paths");
  table->add_option("--seed", table_seed, "Monte Carlo seed")->capture_default_str();
  table->add_option("--threads", table_threads, "worker threads")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build) {
      const QuantizationTree tree = build_args.build(build_model);
      write_tree_file(build_out, tree);
      if (!build_csv.empty()) {
        std::ofstream csv(build_csv);
        if (!csv) throw Error("cannot open '" + build_csv + "' for writing");
        write_tree_csv(csv, tree);
      }
      print_tree_summary(out, tree);
    } else if (*price) {
      const QuantizationTree tree =
          price_tree.empty() ? price_build.build(price_model) : read_tree_file(price_tree);
      double r = 0.0;
      if (price_rate) {
        r = *price_rate;
      } else if (const auto it = tree.model.params.find("r"); it != tree.model.params.end()) {
        r = it->second;
      }
      const Payoff payoff = Payoff::from_name(payoff_name, strike);
      out << "price" << (bound_lip ? ",error_bound" : "") << '\n' << num(price_european(tree, payoff, r));
      if (bound_lip) out << ',' << num(lipschitz_error_bound(tree, *bound_lip, r));
      out << '\n';
    } else if (*mc) {
      McOptions opts;
      opts.threads = mc_threads;
      opts.z = z;
      const McResult res = mc_price(mc_model.model(), mc_model.x0, Payoff::from_name(mc_payoff, mc_strike),
                                    mc_model.rate(), mc_model.maturity, mc_model.steps, paths, seed, opts);
      out << "price,std_error,ci_low,ci_high,paths,seed\n"
          << num(res.price) << ',' << num(res.std_error) << ',' << num(res.ci_low) << ','
          << num(res.ci_high) << ',' << res.paths << ',' << res.seed << '\n';
    } else if (*normal) {
      const StdNormalQuantizer& q = cached_std_normal_quantizer(grid_size);
      out << "index,x,weight\n";
      for (std::size_t i = 0; i < q.points.size(); ++i) {
        out << i << ',' << num(q.points[i]) << ',' << num(q.weights[i]) << '\n';
      }
    } else if (*bounds) {
      const AReading reading = parse_reading(bounds_reading);
      const auto sizes = parse_budget(bounds_budget, bounds_model, reading);
      BoundParams params = bound_params(bounds_model.model(), bounds_model.x0, bounds_model.dt(), p);
      params.K_universal = k_universal;
      const std::size_t k = bounds_k.value_or(bounds_model.steps);
      std::vector<double> t_grid(bounds_model.steps + 1);
      for (std::size_t l = 0; l < t_grid.size(); ++l) {
        t_grid[l] = bounds_model.maturity * static_cast<double>(l) / static_cast<double>(bounds_model.steps);
      }
      out << "name,value\n"
          << "p," << num(params.p) << '\n'
          << "L," << num(params.L) << '\n'
          << "lip_b," << num(params.lip_b) << '\n'
          << "lip_sigma," << num(params.lip_sigma) << '\n'
          << "dt," << num(params.dt) << '\n'
          << "kappa_p," << num(kappa_p(params)) << '\n'
          << "K_p," << num(big_k_p(params)) << '\n'
          << "C_b_sigma," << num(c_b_sigma(params)) << '\n'
          << "uniform_a_bound," << num(uniform_a_bound(bounds_model.maturity, params)) << '\n'
          << "k," << k << '\n'
          << "bound," << num(theorem_bound(k, sizes, t_grid, params, reading)) << '\n';
    } else if (*dispatch) {
      if (brownian) {
        dispatch_model.name = "brownian";
        dispatch_model.x0 = 0.0;
        dispatch_model.maturity = 1.0;
      }
      if (rounding != "nearest" && rounding != "floor") {
        throw std::invalid_argument("--rounding must be nearest or floor");
      }
      const Rounding mode = rounding == "floor" ? Rounding::Floor : Rounding::Nearest;
      std::vector<double> a;
      if (rule == "optimal") {
        a = a_vector(dispatch_model, parse_reading(dispatch_reading));
      } else if (rule != "equal") {
        throw std::invalid_argument("--rule must be optimal or equal");
      }
      out << "N,level,size\n";
      for (std::size_t budget : parse_range(dispatch_budgets)) {
        const auto sizes = rule == "equal" ? dispatch_equal(budget, dispatch_model.steps)
                                           : dispatch_optimal(a, budget, 1, mode);
        for (std::size_t l = 0; l < sizes.size(); ++l) {
          out << budget << ',' << l << ',' << sizes[l] << '\n';
        }
      }
    } else if (*compare) {
      const DiffusionModel bm = models::brownian();
      const double dt = 1.0 / static_cast<double>(cmp_steps);
      std::vector<double> a(cmp_steps + 1);
      for (std::size_t l = 0; l <= cmp_steps; ++l) a[l] = brownian_a(l, dt);
      TreeOptions opts;
      opts.newton_iterations = cmp_iters;
      opts.keep_transitions = false;
      out << "N,err_equal,err_optimal,err_regular,size_equal,size_optimal,err_regular_optimal\n";
      for (std::size_t budget : parse_range(cmp_budgets)) {
        const auto eq = dispatch_equal(budget, cmp_steps);
        const auto opt = dispatch_optimal(a, budget);
        const auto t_eq = build_tree(bm, 0.0, 1.0, cmp_steps, eq, opts);
        const auto t_opt = build_tree(bm, 0.0, 1.0, cmp_steps, opt, opts);
        const std::size_t m_eq = eq.back();
        const std::size_t m_opt = opt.back();
        out << budget << ',' << num(std::sqrt(t_eq.terminal().stats.distortion)) << ','
            << num(std::sqrt(t_opt.terminal().stats.distortion)) << ','
            << num(std::sqrt(cached_std_normal_quantizer(m_eq).distortion)) << ',' << m_eq << ','
            << m_opt << ',' << num(std::sqrt(cached_std_normal_quantizer(m_opt).distortion)) << '\n';
      }
    } else if (*table) {
      const TableSpec spec = table_spec(table_name);
      out << spec.column << ",rmq" << (spec.closed_form ? ",true,abs_error" : "")
          << (table_paths > 0 ? ",mc,ci_lo,ci_hi" : "") << '\n';
      std::optional<QuantizationTree> tree;
      double tree_param = std::nan("");
      for (const TableRow& row : spec.rows) {
        ModelArgs m;
        m.name = spec.model;
        m.sigma = row.model_param;
        m.theta = row.model_param;
        m.steps = table_steps;
        if (!tree || tree_param != row.model_param) {
          std::vector<std::size_t> sizes(table_steps + 1, table_points);
          sizes[0] = 1;
          TreeOptions opts;
          opts.keep_transitions = false;
          opts.engine.threads = table_threads;
          tree = build_tree(m.model(), m.x0, m.maturity, m.steps, sizes, opts);
          tree_param = row.model_param;
        }
        const Payoff put = Payoff::put(row.strike);
        const double rmq_price = price_european(*tree, put, m.r);
        out << num(row.param) << ',' << num(rmq_price);
        if (spec.closed_form) {
          const double exact = bs_put_closed_form(m.x0, row.strike, m.r, m.sigma, m.maturity);
          out << ',' << num(exact) << ',' << num(std::abs(rmq_price - exact));
        }
        if (table_paths > 0) {
          McOptions opts;
          opts.threads = table_threads;
          const McResult res =
              mc_price(m.model(), m.x0, put, m.r, m.maturity, m.steps, table_paths, table_seed, opts);
          out << ',' << num(res.price) << ',' << num(res.ci_low) << ',' << num(res.ci_high);
        }
        out << '\n';
      }
    }
  } catch (const ConvergenceError& e) {
    err << "rmq: error: " << e.what();
    if (e.level() >= 0) err << " (level " << e.level() << ", residual " << num(e.residual()) << ")";
    err << '\n';
    return 2;
  } catch (const SchemaError& e) {
    err << "rmq: error: invalid tree document: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "rmq: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rmq::cli
