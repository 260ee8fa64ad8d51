#include "sparsecw/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sparsecw/serialize.hpp"

namespace sparsecw {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::iht: return "iht";
    case Algorithm::greedy: return "gss";
    case Algorithm::partial: return "pss";
    case Algorithm::mp: return "mp";
    case Algorithm::omp: return "omp";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view tag) {
  if (tag == "iht") return Algorithm::iht;
  if (tag == "gss" || tag == "greedy") return Algorithm::greedy;
  if (tag == "pss" || tag == "partial") return Algorithm::partial;
  if (tag == "mp") return Algorithm::mp;
  if (tag == "omp") return Algorithm::omp;
  throw std::invalid_argument("unknown algorithm '" + std::string(tag) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::stationary_stop: return "stationary_stop";
    case Termination::no_improving_move: return "no_improving_move";
    case Termination::max_iter: return "max_iter";
    case Termination::step_tol: return "step_tol";
    case Termination::budget_reached: return "budget_reached";
  }
  return "unknown";
}

std::string_view to_string(SwapScope scope) {
  return scope == SwapScope::all_coordinates ? "all_coordinates" : "support_preserving";
}

std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::threshold: return "threshold";
    case MoveKind::coordinate: return "coordinate";
    case MoveKind::swap: return "swap";
    case MoveKind::keep_support: return "keep_support";
    case MoveKind::replace_smallest: return "replace_smallest";
    case MoveKind::pursuit: return "pursuit";
  }
  return "unknown";
}

namespace {

void require_start(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                   const char* where) {
  if (x0.size() != model.dim()) {
    throw DimensionError(std::string(where) + ": start has dimension " + std::to_string(x0.size()) +
                         ", model has " + std::to_string(model.dim()));
  }
  SparsityBudget budget(s, model.dim());
  if (x0.nnz() > budget.s()) {
    throw std::invalid_argument(std::string(where) + ": start has " + std::to_string(x0.nnz()) +
                                " nonzeros, budget is " + std::to_string(s));
  }
}

// Appends an iterate; without record_trace only the first and the latest are kept.
void push_iterate(SolverTrace& trace, SparseVector x, double f, const SolverConfig& config) {
  if (config.record_trace || trace.iterates.size() < 2) {
    trace.iterates.push_back(std::move(x));
  } else {
    trace.iterates.back() = std::move(x);
  }
  trace.values.push_back(f);
}

// The relative slack is waived while x is not yet basic feasible at the
// certificate tolerance, so any strict decrease is accepted until it is.
double acceptance_bar(const ObjectiveModel& model, const SparseVector& x, double f,
                      const SolverConfig& config) {
  const DenseVector g = model.grad(x.entries());
  double on = 0.0, off = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double& m = x[i] != 0.0 ? on : off;
    m = std::max(m, std::abs(g[i]));
  }
  if (on > config.certificate_bf_rel_tol * std::max(1.0, off)) return f;
  return f - config.decrease_tol * (1.0 + std::abs(f));
}

void attach_certificate(const ObjectiveModel& model, SolverTrace& trace, std::size_t s,
                        std::optional<double> l, const SolverConfig& config) {
  if (!config.certify) return;
  CertifyOptions opt;
  opt.l = l;
  opt.bf_rel_tol = config.certificate_bf_rel_tol;
  trace.certificate = certify(model, trace.final_point(), s, opt);
}

std::optional<double> local_lipschitz(const ObjectiveModel& model) {
  return model.lipschitz_constants().local;
}

// Under-budget step shared by the greedy and partial methods.
std::optional<std::pair<SparseVector, Move>> best_coordinate_move(const ObjectiveModel& model,
                                                                  const SparseVector& x,
                                                                  double bar) {
  const auto moves = model.minimize_1d_all(x.entries());
  std::size_t best = 0;
  for (std::size_t i = 1; i < moves.size(); ++i)
    if (moves[i].value < moves[best].value) best = i;
  if (!(moves[best].value < bar)) return std::nullopt;
  DenseVector next = x.entries();
  next[best] += moves[best].t;
  return std::pair{SparseVector::snapped(std::move(next)),
                   Move{MoveKind::coordinate, std::nullopt, best, moves[best].t}};
}

}  // namespace

SparseVector iht_step(const ObjectiveModel& model, std::span<const double> x, std::size_t s,
                      double l) {
  const DenseVector g = model.grad(x);
  DenseVector z(x.begin(), x.end());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] -= g[k] / l;
  SparseVector y = project_cs(z, SparsityBudget(s, model.dim()));
  return SparseVector::snapped(y.entries());
}

SolverTrace iht(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                const SolverConfig& config) {
  if (!config.l || !(*config.l > 0.0)) throw std::invalid_argument("iht: a positive L is required");
  require_start(model, x0, s, "iht");
  const double l = *config.l;

  SolverTrace trace;
  trace.algorithm = Algorithm::iht;
  if (const auto lf = model.lipschitz_constants().global; lf && l <= *lf) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "L=%.6g does not exceed L(f)=%.6g; descent is not guaranteed", l, *lf);
    trace.warnings.emplace_back(buf);
  } else if (!lf) {
    trace.warnings.emplace_back("model has no global Lipschitz constant; descent is not guaranteed");
  }

  SparseVector x = x0;
  push_iterate(trace, x, model.eval(x.entries()), config);
  for (std::size_t k = 0; k < config.max_iter; ++k) {
    SparseVector y = iht_step(model, x.entries(), s, l);
    DenseVector diff = y.entries();
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= x[i];
    const double step = norm_inf(diff);
    trace.moves.push_back({MoveKind::threshold, std::nullopt, std::nullopt, 0.0});
    push_iterate(trace, y, model.eval(y.entries()), config);
    x = std::move(y);
    trace.iterations = k + 1;
    if (step <= config.step_tol) {
      trace.termination = Termination::step_tol;
      attach_certificate(model, trace, s, l, config);
      return trace;
    }
  }
  trace.termination = Termination::max_iter;
  attach_certificate(model, trace, s, l, config);
  return trace;
}

SolverTrace greedy_sparse_simplex(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                                  const SolverConfig& config) {
  require_start(model, x0, s, "greedy_sparse_simplex");
  SolverTrace trace;
  trace.algorithm = Algorithm::greedy;
  SparseVector x = x0;
  double f = model.eval(x.entries());
  push_iterate(trace, x, f, config);
  trace.termination = Termination::max_iter;

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const double bar = acceptance_bar(model, x, f, config);
    std::optional<std::pair<SparseVector, Move>> step;
    if (x.nnz() < s) {
      step = best_coordinate_move(model, x, bar);
    } else {
      // Scan every (i, j); strict comparisons keep the lowest i, then lowest j.
      std::optional<std::size_t> bi, bj;
      LineMin best{0.0, std::numeric_limits<double>::infinity()};
      DenseVector y = x.entries();
      for (std::size_t i : x.support()) {
        const double saved = y[i];
        y[i] = 0.0;
        const auto moves = model.minimize_1d_all(y);
        for (std::size_t j = 0; j < moves.size(); ++j) {
          if (config.swap_scope == SwapScope::support_preserving && j != i && x.in_support(j)) continue;
          if (moves[j].value < best.value) {
            best = moves[j];
            bi = i;
            bj = j;
          }
        }
        y[i] = saved;
      }
      if (bi && best.value < bar) {
        DenseVector next = x.entries();
        next[*bi] = 0.0;
        next[*bj] += best.t;
        step = std::pair{SparseVector::snapped(std::move(next)), Move{MoveKind::swap, bi, bj, best.t}};
      }
    }
    if (!step) {
      trace.termination = Termination::no_improving_move;
      break;
    }
    x = std::move(step->first);
    f = model.eval(x.entries());
    trace.moves.push_back(step->second);
    push_iterate(trace, x, f, config);
    trace.iterations = k + 1;
  }
  attach_certificate(model, trace, s, local_lipschitz(model), config);
  return trace;
}

SolverTrace partial_sparse_simplex(const ObjectiveModel& model, const SparseVector& x0,
                                   std::size_t s, const SolverConfig& config) {
  require_start(model, x0, s, "partial_sparse_simplex");
  SolverTrace trace;
  trace.algorithm = Algorithm::partial;
  SparseVector x = x0;
  double f = model.eval(x.entries());
  push_iterate(trace, x, f, config);
  trace.termination = Termination::max_iter;

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const double bar = acceptance_bar(model, x, f, config);
    std::optional<std::pair<SparseVector, Move>> step;
    if (x.nnz() < s) {
      step = best_coordinate_move(model, x, bar);
    } else {
      const auto moves = model.minimize_1d_all(x.entries());
      const auto& sup = x.support();
      // Option 1: the in-support coordinate whose re-optimization lowers f most.
      std::size_t keep = sup.front();
      for (std::size_t i : sup)
        if (moves[i].value < moves[keep].value) keep = i;
      // Option 2: drop the smallest magnitude, insert the steepest off-support coordinate.
      const DenseVector g = model.grad(x.entries());
      std::size_t smallest = sup.front();
      for (std::size_t i : sup)
        if (std::abs(x[i]) < std::abs(x[smallest])) smallest = i;
      std::optional<std::size_t> steepest;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.in_support(i)) continue;
        if (!steepest || std::abs(g[i]) > std::abs(g[*steepest])) steepest = i;
      }
      const LineMin opt1 = moves[keep];
      const LineMin opt2 = model.minimize_swap(x.entries(), smallest, *steepest);
      DenseVector next = x.entries();
      Move move;
      double predicted = 0.0;
      if (opt1.value < opt2.value) {
        next[keep] += opt1.t;
        move = {MoveKind::keep_support, std::nullopt, keep, opt1.t};
        predicted = opt1.value;
      } else {
        next[smallest] = 0.0;
        next[*steepest] += opt2.t;
        move = {MoveKind::replace_smallest, smallest, *steepest, opt2.t};
        predicted = opt2.value;
      }
      if (predicted < bar) step = std::pair{SparseVector::snapped(std::move(next)), move};
    }
    if (!step) {
      trace.termination = Termination::no_improving_move;
      break;
    }
    x = std::move(step->first);
    f = model.eval(x.entries());
    trace.moves.push_back(step->second);
    push_iterate(trace, x, f, config);
    trace.iterations = k + 1;
  }
  attach_certificate(model, trace, s, local_lipschitz(model), config);
  return trace;
}

namespace {

// Index maximizing |a_iᵀr| / ‖a_i‖ over the allowed columns; lowest index on ties.
std::optional<std::size_t> most_correlated(const LeastSquaresModel& model, const DenseVector& corr,
                                           const std::vector<bool>& excluded) {
  const auto& sq = model.column_sq_norms();
  std::optional<std::size_t> best;
  double best_score = -1.0;
  for (std::size_t i = 0; i < corr.size(); ++i) {
    if (!excluded.empty() && excluded[i]) continue;
    const double score = std::abs(corr[i]) / std::sqrt(sq[i]);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

bool correlation_vanishes(const LeastSquaresModel& model, double corr, std::size_t i) {
  const double scale = std::sqrt(model.column_sq_norms()[i]) * norm2(model.rhs());
  return std::abs(corr) <= 1e-14 * scale;
}

}  // namespace

SolverTrace matching_pursuit(const LeastSquaresModel& model, std::size_t s, const SolverConfig& config) {
  SparsityBudget budget(s, model.dim());
  SolverTrace trace;
  trace.algorithm = Algorithm::mp;
  const auto& a = model.matrix();
  const auto& sq = model.column_sq_norms();
  DenseVector x(model.dim(), 0.0);
  DenseVector r = model.rhs();  // r = b − Ax
  push_iterate(trace, SparseVector(x), squared_norm(r), config);
  trace.termination = Termination::max_iter;

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    if (SparseVector(x).nnz() >= budget.s()) {
      trace.termination = Termination::budget_reached;
      break;
    }
    const DenseVector corr = mat_t_vec(a, r);
    const std::size_t m = *most_correlated(model, corr, {});
    if (correlation_vanishes(model, corr[m], m)) {
      trace.termination = Termination::stationary_stop;
      break;
    }
    const double step = corr[m] / sq[m];
    x[m] += step;
    for (std::size_t row = 0; row < r.size(); ++row) r[row] -= step * a(row, m);
    if ((k + 1) % 50 == 0) {
      DenseVector fresh = model.residual(x);
      for (double& v : fresh) v = -v;
      double drift = 0.0;
      for (std::size_t row = 0; row < r.size(); ++row) drift = std::max(drift, std::abs(fresh[row] - r[row]));
      if (drift > 1e-10 * (1.0 + norm_inf(model.rhs()))) {
        trace.warnings.push_back("residual drift " + std::to_string(drift) + " at iteration " +
                                 std::to_string(k + 1));
      }
      r = std::move(fresh);
    }
    SparseVector sx = SparseVector::snapped(x);
    x = sx.entries();
    trace.moves.push_back({MoveKind::pursuit, std::nullopt, m, step});
    push_iterate(trace, std::move(sx), squared_norm(r), config);
    trace.iterations = k + 1;
  }
  attach_certificate(model, trace, s, local_lipschitz(model), config);
  return trace;
}

SolverTrace orthogonal_matching_pursuit(const LeastSquaresModel& model, std::size_t s,
                                        const SolverConfig& config) {
  SparsityBudget budget(s, model.dim());
  SolverTrace trace;
  trace.algorithm = Algorithm::omp;
  const auto& a = model.matrix();
  const DenseVector atb = mat_t_vec(a, model.rhs());
  DenseVector x(model.dim(), 0.0);
  DenseVector r = model.rhs();
  IndexList support;
  std::vector<bool> chosen(model.dim(), false);
  push_iterate(trace, SparseVector(x), squared_norm(r), config);
  trace.termination = Termination::max_iter;

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    if (support.size() >= budget.s()) {
      trace.termination = Termination::budget_reached;
      break;
    }
    const DenseVector corr = mat_t_vec(a, r);
    const std::size_t m = *most_correlated(model, corr, chosen);
    if (correlation_vanishes(model, corr[m], m)) {
      trace.termination = Termination::stationary_stop;
      break;
    }
    chosen[m] = true;
    support.insert(std::upper_bound(support.begin(), support.end(), m), m);
    DenseVector rhs(support.size());
    for (std::size_t q = 0; q < support.size(); ++q) rhs[q] = atb[support[q]];
    DenseVector xs;
    try {
      xs = solve_linear(model.gram().principal(support), std::move(rhs));
    } catch (const NumericalError&) {
      throw NumericalError("orthogonal_matching_pursuit: singular least-squares refit on the selected support");
    }
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t q = 0; q < support.size(); ++q) x[support[q]] = xs[q];
    r = model.residual(x);
    for (double& v : r) v = -v;
    trace.moves.push_back({MoveKind::pursuit, std::nullopt, m, x[m]});
    push_iterate(trace, SparseVector::snapped(x), squared_norm(r), config);
    trace.iterations = k + 1;
  }
  attach_certificate(model, trace, s, local_lipschitz(model), config);
  return trace;
}

SolverTrace solve(const ObjectiveModel& model, const SparseVector& x0, std::size_t s,
                  const SolverConfig& config) {
  switch (config.algorithm) {
    case Algorithm::iht: return iht(model, x0, s, config);
    case Algorithm::greedy: return greedy_sparse_simplex(model, x0, s, config);
    case Algorithm::partial: return partial_sparse_simplex(model, x0, s, config);
    case Algorithm::mp:
    case Algorithm::omp: {
      const auto* ls = dynamic_cast<const LeastSquaresModel*>(&model);
      if (!ls) throw std::invalid_argument("MP/OMP require a least-squares model");
      return config.algorithm == Algorithm::mp ? matching_pursuit(*ls, s, config)
                                               : orthogonal_matching_pursuit(*ls, s, config);
    }
  }
  throw std::logic_error("solve: unhandled algorithm");
}

bool surrogate_argmin_check(const ObjectiveModel& model, const SparseVector& x, std::size_t s,
                            double l) {
  if (model.dim() > 12) throw std::length_error("surrogate_argmin_check: dimension above 12");
  if (!(l > 0.0)) throw std::invalid_argument("surrogate_argmin_check: L must be positive");
  const DenseVector g = model.grad(x.entries());
  DenseVector z = x.entries();
  for (std::size_t k = 0; k < z.size(); ++k) z[k] -= g[k] / l;

  const SparseVector step = iht_step(model, x.entries(), s, l);
  if (step.nnz() > s) return false;
  const double at_step = model.surrogate_value(step.entries(), x.entries(), l);
  double best = std::numeric_limits<double>::infinity();
  for (const IndexList& sup : combinations(model.dim(), s)) {
    DenseVector w(model.dim(), 0.0);
    for (std::size_t i : sup) w[i] = z[i];
    best = std::min(best, model.surrogate_value(w, x.entries(), l));
  }
  return at_step <= best + 1e-12 * (1.0 + std::abs(best));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string describe(const Move& m) {
  auto idx = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  switch (m.kind) {
    case MoveKind::threshold: return "threshold";
    case MoveKind::coordinate: return "coordinate(" + idx(m.inserted) + ")";
    case MoveKind::swap: return "swap(" + idx(m.removed) + "->" + idx(m.inserted) + ")";
    case MoveKind::keep_support: return "keep(" + idx(m.inserted) + ")";
    case MoveKind::replace_smallest: return "replace(" + idx(m.removed) + "->" + idx(m.inserted) + ")";
    case MoveKind::pursuit: return "pursuit(" + idx(m.inserted) + ")";
  }
  return "?";
}

}  // namespace

nlohmann::ordered_json trace_json(const SolverTrace& t) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["algorithm"] = to_string(t.algorithm);
  j["termination"] = to_string(t.termination);
  j["iterations"] = t.iterations;
  j["warnings"] = t.warnings;
  j["values"] = t.values;
  auto its = nlohmann::ordered_json::array();
  auto sups = nlohmann::ordered_json::array();
  for (const auto& x : t.iterates) {
    its.push_back(x.entries());
    sups.push_back(x.support());
  }
  j["iterates"] = std::move(its);
  j["supports"] = std::move(sups);
  auto moves = nlohmann::ordered_json::array();
  for (const auto& m : t.moves) {
    nlohmann::ordered_json jm;
    jm["kind"] = to_string(m.kind);
    jm["removed"] = m.removed ? nlohmann::ordered_json(*m.removed) : nlohmann::ordered_json(nullptr);
    jm["inserted"] = m.inserted ? nlohmann::ordered_json(*m.inserted) : nlohmann::ordered_json(nullptr);
    jm["t"] = m.t;
    moves.push_back(std::move(jm));
  }
  j["moves"] = std::move(moves);
  j["final_point"] = t.final_point().entries();
  j["final_value"] = t.final_value();
  j["certificate"] = t.certificate ? certificate_json(*t.certificate) : nlohmann::ordered_json(nullptr);
  return j;
}

std::string SolverTrace::to_json() const { return trace_json(*this).dump(2) + "\n"; }

std::string SolverTrace::to_csv() const {
  std::ostringstream os;
  os << "k,f,support,move\n";
  auto row = [&](std::size_t k, const SparseVector& x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", values[k]);
    os << k << ',' << buf << ',';
    for (std::size_t q = 0; q < x.support().size(); ++q) os << (q ? " " : "") << x.support()[q];
    os << ',' << (k == 0 ? std::string("start") : describe(moves[k - 1])) << '\n';
  };
  if (iterates.size() == values.size()) {
    for (std::size_t k = 0; k < iterates.size(); ++k) row(k, iterates[k]);
  } else {
    row(0, iterates.front());
    if (values.size() > 1) row(values.size() - 1, iterates.back());
  }
  return os.str();
}

}  // namespace sparsecw
