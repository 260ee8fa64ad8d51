#include "sparsecw/harness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sparsecw/rng.hpp"
#include "sparsecw/serialize.hpp"

#ifndef SPARSECW_VERSION
#define SPARSECW_VERSION "0.0.0"
#endif

namespace sparsecw {

using json = nlohmann::ordered_json;

std::string_view tool_version() { return SPARSECW_VERSION; }

std::string_view to_string(CertificateTier tier) {
  switch (tier) {
    case CertificateTier::none: return "none";
    case CertificateTier::bf: return "bf";
    case CertificateTier::l_stationary: return "l_stationary";
    case CertificateTier::l2_stationary: return "l2_stationary";
    case CertificateTier::cw_minimum: return "cw_minimum";
  }
  return "?";
}

CertificateTier promised_tier(const ObjectiveModel& model, const SolverConfig& config) {
  const auto lc = model.lipschitz_constants();
  switch (config.algorithm) {
    case Algorithm::greedy: return CertificateTier::cw_minimum;
    case Algorithm::partial: return lc.local ? CertificateTier::l2_stationary : CertificateTier::bf;
    case Algorithm::iht:
      return (config.l && lc.global && *config.l > *lc.global) ? CertificateTier::l_stationary
                                                                : CertificateTier::none;
    case Algorithm::mp:
    case Algorithm::omp: return CertificateTier::none;
  }
  return CertificateTier::none;
}

bool meets_tier(const OptimalityCertificate& cert, CertificateTier tier, const ObjectiveModel& model) {
  switch (tier) {
    case CertificateTier::none: return true;
    case CertificateTier::bf: return cert.is_bf;
    case CertificateTier::l_stationary: return cert.l_stationary.value_or(false);
    case CertificateTier::l2_stationary: {
      const auto l2 = model.lipschitz_constants().local;
      return cert.is_bf && l2 && cert.stationarity_level <= *l2 * (1.0 + cert.level_rel_tol);
    }
    case CertificateTier::cw_minimum: return cert.is_cw_minimum.value_or(false);
  }
  return false;
}

std::size_t ExperimentReport::histogram_total() const {
  std::size_t total = unmatched + failed;
  for (std::size_t c : histogram) total += c;
  return total;
}

std::vector<std::size_t> ExperimentReport::hit_entries() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < histogram.size(); ++k)
    if (histogram[k] > 0) out.push_back(k);
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const IndexList& idx) {
  std::string out;
  for (std::size_t q = 0; q < idx.size(); ++q) out += (q ? " " : "") + std::to_string(idx[q]);
  return out;
}

std::string class_label(const RunRecord& r) {
  if (r.failed()) return "failed";
  return r.catalog_index ? std::to_string(*r.catalog_index) : std::string("unmatched");
}

json config_json(const SolverConfig& c) {
  json j;
  j["algorithm"] = to_string(c.algorithm);
  j["L"] = c.l ? json(*c.l) : json(nullptr);
  j["max_iter"] = c.max_iter;
  j["step_tol"] = c.step_tol;
  j["decrease_tol"] = c.decrease_tol;
  j["swap_scope"] = to_string(c.swap_scope);
  j["certificate_bf_rel_tol"] = c.certificate_bf_rel_tol;
  return j;
}

bool near_reference(const DenseVector& x, const MultistartOptions& o) {
  const DenseVector& ref = *o.reference;
  const double tol = o.reference_rel_tol * std::max(1.0, norm2(ref));
  if (distance(x, ref) <= tol) return true;
  if (!o.sign_symmetric) return false;
  DenseVector neg = ref;
  for (double& v : neg) v = -v;
  return distance(x, neg) <= tol;
}

RunRecord run_one(const ObjectiveModel& model, std::size_t s, const SolverConfig& config,
                  const MultistartOptions& o, CertificateTier tier, std::size_t r) {
  RunRecord rec;
  rec.run = r;
  CounterRng rng(o.seed, r);
  rec.start = random_sparse_vector(rng, model.dim(), s);
  try {
    SolverConfig cfg = config;
    cfg.record_trace = false;
    cfg.certify = true;
    SolverTrace t = solve(model, rec.start, s, cfg);
    rec.limit = t.final_point();
    rec.iterations = t.iterations;
    rec.final_value = t.final_value();
    rec.termination = t.termination;
    rec.certificate = t.certificate;
    rec.tier_ok = rec.certificate && meets_tier(*rec.certificate, tier, model);
    if (o.catalog) rec.catalog_index = o.catalog->match(rec.limit->entries(), o.match_rel_tol);
    if (o.reference) rec.reference_hit = near_reference(rec.limit->entries(), o);
  } catch (const std::exception& e) {
    rec.error = e.what();
    if (rec.error.empty()) rec.error = "unknown error";
  }
  return rec;
}

}  // namespace

ExperimentReport run_multistart(const ObjectiveModel& model, std::size_t s, const SolverConfig& config,
                                const MultistartOptions& o) {
  SparsityBudget budget(s, model.dim());
  if (o.reference && o.reference->size() != model.dim()) {
    throw DimensionError("run_multistart: reference point has the wrong dimension");
  }
  const CertificateTier tier = promised_tier(model, config);

  ExperimentReport rep;
  rep.runs.resize(o.n_starts);
  const bool par = o.policy == ExecutionPolicy::parallel;
  const auto count = static_cast<long long>(o.n_starts);
#pragma omp parallel for schedule(dynamic) if (par)
  for (long long r = 0; r < count; ++r) {
    rep.runs[static_cast<std::size_t>(r)] =
        run_one(model, budget.s(), config, o, tier, static_cast<std::size_t>(r));
  }

  if (o.catalog) rep.histogram.assign(o.catalog->entries.size(), 0);
  for (const RunRecord& r : rep.runs) {
    if (r.failed()) {
      ++rep.failed;
      continue;
    }
    if (r.catalog_index) {
      ++rep.histogram[*r.catalog_index];
    } else {
      ++rep.unmatched;
    }
    if (r.reference_hit) ++rep.reference_hits;
    if (!r.tier_ok) ++rep.tier_violations;
  }

  json c;
  c["tool"] = "sparsecw";
  c["version"] = tool_version();
  c["model"] = to_string(model.kind());
  c["n"] = model.dim();
  c["s"] = s;
  c["n_starts"] = o.n_starts;
  c["seed"] = o.seed;
  c["solver"] = config_json(config);
  c["promised_tier"] = to_string(tier);
  c["catalog_entries"] = o.catalog ? json(o.catalog->entries.size()) : json(nullptr);
  c["match_rel_tol"] = o.match_rel_tol;
  c["reference"] = o.reference ? json(*o.reference) : json(nullptr);
  c["reference_rel_tol"] = o.reference_rel_tol;
  c["sign_symmetric"] = o.sign_symmetric;
  rep.config = std::move(c);
  return rep;
}

std::string ExperimentReport::to_json() const {
  json j;
  j["format_version"] = 1;
  j["config"] = config;
  j["histogram"] = histogram;
  j["unmatched"] = unmatched;
  j["failed"] = failed;
  j["reference_hits"] = reference_hits;
  j["tier_violations"] = tier_violations;
  auto arr = json::array();
  for (const RunRecord& r : runs) {
    json jr;
    jr["run"] = r.run;
    jr["start"] = r.start.entries();
    jr["limit"] = r.limit ? json(r.limit->entries()) : json(nullptr);
    jr["class"] = class_label(r);
    jr["iterations"] = r.iterations;
    jr["final_value"] = r.failed() ? json(nullptr) : json(r.final_value);
    jr["termination"] = r.failed() ? json(nullptr) : json(to_string(r.termination));
    jr["tier_ok"] = r.tier_ok;
    jr["reference_hit"] = r.reference_hit;
    jr["certificate"] = r.certificate ? certificate_json(*r.certificate) : json(nullptr);
    jr["error"] = r.error.empty() ? json(nullptr) : json(r.error);
    arr.push_back(std::move(jr));
  }
  j["runs"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "run,start_support,limit_support,class,iterations,final_value,termination,tier_ok,"
        "reference_hit,error\n";
  for (const RunRecord& r : runs) {
    os << r.run << ',' << join(r.start.support()) << ',' << (r.limit ? join(r.limit->support()) : "")
       << ',' << class_label(r) << ',' << r.iterations << ',' << (r.failed() ? "" : fmt(r.final_value))
       << ',' << (r.failed() ? "" : std::string(to_string(r.termination))) << ','
       << (r.tier_ok ? 1 : 0) << ',' << (r.reference_hit ? 1 : 0) << ',';
    if (!r.error.empty()) {
      std::string e = r.error;
      for (char& ch : e)
        if (ch == ',' || ch == '\n') ch = ';';
      os << e;
    }
    os << '\n';
  }
  return os.str();
}

BasinGrid basin_grid(const ObjectiveModel& model, std::size_t s, const SolverConfig& config,
                     const BFCatalog& catalog, const GridSpec& grid, ExecutionPolicy policy) {
  if (model.dim() != 2) throw DimensionError("basin_grid: the model must be two-dimensional");
  if (grid.nx == 0 || grid.ny == 0) throw std::invalid_argument("basin_grid: empty grid");
  if (config.algorithm == Algorithm::mp || config.algorithm == Algorithm::omp) {
    throw std::invalid_argument("basin_grid: MP/OMP do not take a start point");
  }
  if (config.algorithm == Algorithm::iht && !(config.l.value_or(0.0) > 0.0)) {
    throw std::invalid_argument("basin_grid: IHT needs a positive L");
  }
  const SparsityBudget budget(s, 2);
  auto coord = [](double lo, double hi, std::size_t k, std::size_t count) {
    return count == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  };

  BasinGrid out;
  out.spec = grid;
  out.cells.resize(grid.nx * grid.ny);
  SolverConfig cfg = config;
  cfg.record_trace = false;
  cfg.certify = false;
  const bool par = policy == ExecutionPolicy::parallel;
  const auto count = static_cast<long long>(out.cells.size());
#pragma omp parallel for schedule(dynamic) if (par)
  for (long long c = 0; c < count; ++c) {
    const auto idx = static_cast<std::size_t>(c);
    GridCell& cell = out.cells[idx];
    cell.x = coord(grid.x_min, grid.x_max, idx % grid.nx, grid.nx);
    cell.y = coord(grid.y_min, grid.y_max, idx / grid.nx, grid.ny);
    const DenseVector p{cell.x, cell.y};
    try {
      const SparseVector x0 = cfg.algorithm == Algorithm::iht
                                  ? iht_step(model, p, budget.s(), cfg.l.value_or(0.0))
                                  : SparseVector::snapped(project_cs(p, budget).entries());
      const SolverTrace t = solve(model, x0, budget.s(), cfg);
      cell.catalog_index = catalog.match(t.final_point().entries());
    } catch (const std::exception&) {
      cell.failed = true;
    }
  }
  return out;
}

std::string BasinGrid::to_csv() const {
  std::ostringstream os;
  os << "x,y,class\n";
  for (const GridCell& c : cells) {
    os << fmt(c.x) << ',' << fmt(c.y) << ',';
    if (c.failed) {
      os << "failed";
    } else if (c.catalog_index) {
      os << *c.catalog_index;
    } else {
      os << "unmatched";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace sparsecw
