#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsecw/fixtures.hpp"
#include "sparsecw/harness.hpp"
#include "sparsecw/instance.hpp"
#include "sparsecw/rng.hpp"
#include "sparsecw/serialize.hpp"
#include "sparsecw/solvers.hpp"

namespace {

using namespace sparsecw;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << text;
}

DenseVector parse_vector(const std::string& text) {
  DenseVector v;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(token, &used));
      if (token.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + token + "' as a number");
    }
  }
  return v;
}

std::pair<double, double> parse_range(const std::string& text) {
  const DenseVector v = parse_vector(text);
  if (v.size() != 2 || !(v[0] <= v[1])) throw UsageError("range must be lo,hi with lo <= hi: " + text);
  return {v[0], v[1]};
}

struct Common {
  std::string problem;
  std::size_t s = 0;  // 0: take s from the problem file
  std::string format = "json";
  std::string out;
};

struct Loaded {
  ProblemInstance instance;
  std::unique_ptr<ObjectiveModel> model;
  std::size_t s;
};

Loaded load(const Common& c) {
  Loaded l{ProblemInstance::load(c.problem), nullptr, 0};
  if (c.s != 0) {
    l.instance.s = c.s;
    l.instance.validate();
  }
  l.s = l.instance.s;
  l.model = l.instance.make_model();
  return l;
}

void add_common(CLI::App* sub, Common& c, bool formats = true) {
  sub->add_option("problem", c.problem, "problem file (JSON)")->required();
  sub->add_option("--s", c.s, "sparsity level (overrides the problem file)");
  if (formats) sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "output file (default stdout)");
}

struct SolverFlags {
  std::string algo = "gss";
  std::optional<double> l;
  std::size_t max_iter = 10000;
  bool support_preserving = false;
};

void add_solver_flags(CLI::App* sub, SolverFlags& f) {
  sub->add_option("--algo", f.algo, "algorithm")->check(CLI::IsMember({"iht", "gss", "pss", "mp", "omp"}));
  sub->add_option("--L", f.l, "IHT step constant (step 1/L)");
  sub->add_option("--max-iter", f.max_iter, "iteration cap");
  sub->add_flag("--support-preserving", f.support_preserving,
                "greedy swaps keep the support size at s");
}

SolverConfig make_config(const SolverFlags& f, const ObjectiveModel& model) {
  SolverConfig cfg;
  cfg.algorithm = parse_algorithm(f.algo);
  cfg.l = f.l;
  cfg.max_iter = f.max_iter;
  cfg.swap_scope = f.support_preserving ? SwapScope::support_preserving : SwapScope::all_coordinates;
  if (cfg.algorithm == Algorithm::iht && !cfg.l) {
    const auto lf = model.lipschitz_constants().global;
    if (!lf) throw UsageError("IHT on this model needs --L");
    cfg.l = 1.1 * *lf;
  }
  return cfg;
}

std::optional<BFCatalog> catalog_if_small(const ObjectiveModel& model, std::size_t s) {
  if (model.kind() == ModelKind::quartic || binomial(model.dim(), s) > 100000) return std::nullopt;
  try {
    return enumerate_bf(model, s);
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

std::string certificate_csv(const OptimalityCertificate& c) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto opt = [](const std::optional<bool>& b) { return b ? std::string(*b ? "true" : "false") : std::string(); };
  std::ostringstream os;
  os << "field,value\n"
     << "is_feasible," << (c.is_feasible ? "true" : "false") << '\n'
     << "is_bf," << (c.is_bf ? "true" : "false") << '\n'
     << "value," << num(c.value) << '\n'
     << "stationarity_level," << num(c.stationarity_level) << '\n'
     << "queried_l," << (c.queried_l ? num(*c.queried_l) : "") << '\n'
     << "l_stationary," << opt(c.l_stationary) << '\n'
     << "is_cw_minimum," << opt(c.is_cw_minimum) << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparsity-constrained minimization: solvers, optimality certificates, experiments"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  // generate
  std::string gen_kind = "ls";
  std::uint64_t seed = 0;
  std::size_t gen_m = 20, gen_n = 30, gen_s = 3;
  bool gen_normalize = false, gen_planted = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "write a random problem file");
  gen->add_option("--kind", gen_kind, "ls or quartic")->check(CLI::IsMember({"ls", "quartic"}));
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_option("--m", gen_m, "measurements");
  gen->add_option("--n", gen_n, "dimension");
  gen->add_option("--s", gen_s, "sparsity level");
  gen->add_flag("--normalize", gen_normalize, "unit-norm columns (ls)");
  gen->add_flag("--planted", gen_planted, "b = A x_true for a random s-sparse x_true (ls)");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // solve
  Common solve_c;
  SolverFlags solve_f;
  std::string solve_x0;
  auto* solve_cmd = app.add_subcommand("solve", "run one solver");
  add_common(solve_cmd, solve_c);
  add_solver_flags(solve_cmd, solve_f);
  solve_cmd->add_option("--x0", solve_x0, "start point, comma separated (default: random from --seed, or 0)");
  auto* solve_seed = solve_cmd->add_option("--seed", seed, "draw a random s-sparse start");

  // certify
  Common cert_c;
  std::string cert_x;
  std::optional<double> cert_l;
  auto* cert = app.add_subcommand("certify", "check BF, L-stationarity and CW-minimality of a point");
  add_common(cert, cert_c);
  cert->add_option("--x", cert_x, "point, comma separated")->required();
  cert->add_option("--L", cert_l, "query L-stationarity at this L");

  // enumerate-bf
  Common enum_c;
  std::size_t enum_guard = 100000;
  auto* enumerate = app.add_subcommand("enumerate-bf", "list every BF vector (least squares / quadratic)");
  add_common(enumerate, enum_c);
  enumerate->add_option("--max-supports", enum_guard, "refuse when C(n, s) exceeds this");

  // multistart
  Common ms_c;
  SolverFlags ms_f;
  std::size_t starts = 100;
  auto* ms = app.add_subcommand("multistart", "run a solver from many random starts and classify the limits");
  add_common(ms, ms_c);
  add_solver_flags(ms, ms_f);
  ms->add_option("--starts", starts, "number of starts");
  ms->add_option("--seed", seed, "start seed");

  // basin
  Common basin_c;
  SolverFlags basin_f;
  std::string x_range = "-1,1", y_range = "-1,1";
  std::size_t nx = 10, ny = 10;
  auto* basin = app.add_subcommand("basin", "classify the limit reached from every point of a 2-D grid");
  add_common(basin, basin_c, false);
  add_solver_flags(basin, basin_f);
  basin->add_option("--x-range", x_range, "lo,hi");
  basin->add_option("--y-range", y_range, "lo,hi");
  basin->add_option("--nx", nx, "grid columns")->check(CLI::PositiveNumber);
  basin->add_option("--ny", ny, "grid rows")->check(CLI::PositiveNumber);

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "run the embedded reference fixtures");
  std::string fix_out;
  fixtures->add_option("--out", fix_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      ProblemInstance p = gen_kind == "ls" ? generate_gaussian_ls(seed, gen_m, gen_n, gen_s, gen_normalize, gen_planted)
                                           : generate_quartic(seed, gen_m, gen_n, gen_s);
      emit(p.dump(), gen_out);
    } else if (*solve_cmd) {
      Loaded l = load(solve_c);
      SolverConfig cfg = make_config(solve_f, *l.model);
      SparseVector x0 = SparseVector::zeros(l.model->dim());
      if (!solve_x0.empty()) {
        x0 = SparseVector(parse_vector(solve_x0));
      } else if (solve_seed->count() > 0) {
        CounterRng rng(seed, 0);
        x0 = random_sparse_vector(rng, l.model->dim(), l.s);
      }
      const SolverTrace t = solve(*l.model, x0, l.s, cfg);
      emit(solve_c.format == "csv" ? t.to_csv() : t.to_json(), solve_c.out);
    } else if (*cert) {
      Loaded l = load(cert_c);
      CertifyOptions opt;
      opt.l = cert_l;
      const OptimalityCertificate c = certify(*l.model, SparseVector(parse_vector(cert_x)), l.s, opt);
      emit(cert_c.format == "csv" ? certificate_csv(c) : certificate_json(c).dump(2) + "\n", cert_c.out);
    } else if (*enumerate) {
      Loaded l = load(enum_c);
      const BFCatalog cat = enumerate_bf(*l.model, l.s, enum_guard);
      emit(enum_c.format == "csv" ? cat.to_csv() : cat.to_json(), enum_c.out);
    } else if (*ms) {
      Loaded l = load(ms_c);
      const SolverConfig cfg = make_config(ms_f, *l.model);
      const auto catalog = catalog_if_small(*l.model, l.s);
      MultistartOptions o;
      o.n_starts = starts;
      o.seed = seed;
      o.catalog = catalog ? &*catalog : nullptr;
      o.reference = l.instance.x_true;
      o.sign_symmetric = l.instance.kind == ModelKind::quartic;
      const ExperimentReport rep = run_multistart(*l.model, l.s, cfg, o);
      emit(ms_c.format == "csv" ? rep.to_csv() : rep.to_json(), ms_c.out);
    } else if (*basin) {
      Loaded l = load(basin_c);
      const SolverConfig cfg = make_config(basin_f, *l.model);
      const BFCatalog catalog = enumerate_bf(*l.model, l.s);
      GridSpec g;
      std::tie(g.x_min, g.x_max) = parse_range(x_range);
      std::tie(g.y_min, g.y_max) = parse_range(y_range);
      g.nx = nx;
      g.ny = ny;
      emit(basin_grid(*l.model, l.s, cfg, catalog, g).to_csv(), basin_c.out);
    } else if (*fixtures) {
      const FixtureReport rep = reproduce_fixtures();
      emit(rep.text(), fix_out);
      return rep.all_passed() ? kOk : kFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
