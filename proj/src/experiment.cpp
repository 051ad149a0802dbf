#include "secular/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "secular/eigen.hpp"
#include "secular/errors.hpp"
#include "secular/frobenius.hpp"

namespace secular {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double poly_residual(const MatrixPolynomial& p, cplx lambda, const ComplexVector& v) {
  const double denom = p.norm_sum(std::abs(lambda)) * norm2(v);
  const double r = norm2(matvec(eval(p, lambda), v));
  return denom > 0.0 ? r / denom : r;
}

ComplexVector block_of(const ComplexVector& x, std::size_t i, std::size_t m) {
  return ComplexVector(x.begin() + static_cast<std::ptrdiff_t>(i * m),
                       x.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
}

std::size_t degree_of(const MatrixPolynomial& p) {
  const int d = p.degree();
  if (d < 1) throw InvalidArgument("polynomial must have degree at least 1");
  return static_cast<std::size_t>(d);
}

const std::vector<std::string> kStrategies = {"frobenius", "secular_fourier", "secular_tropical"};

}  // namespace

NodePlan plan_from_choice(const MatrixPolynomial& p, const BlockChoice& choice, NormKind norm) {
  switch (choice.kind) {
    case BlockChoice::Kind::Linear: {
      NodePlan plan;
      plan.strategy = NodeStrategy::Manual;
      plan.betas = choice.betas;
      return plan;
    }
    case BlockChoice::Kind::Fourier:
      return plan_fourier(choice.count, choice.alpha);
    case BlockChoice::Kind::Tropical:
      return plan_tropical(tropical_roots(p, norm), degree_of(p), choice.phase, choice.phase_seed);
    case BlockChoice::Kind::Poly:
      break;
  }
  throw InvalidArgument("polynomial blocks do not define a node plan");
}

SecularForm build_from_choice(const MatrixPolynomial& p, const BlockChoice& choice,
                              std::optional<cplx> shift, NormKind norm) {
  if (choice.kind == BlockChoice::Kind::Poly) {
    if (shift) return build_ellification(p, BlockSpec{choice.polys, *shift});
    return build_ellification(p, choice.polys);
  }
  NodePlan plan = plan_from_choice(p, choice, norm);
  return build_linear(p, plan.betas, shift);
}

std::vector<EigenRow> solve_frobenius(const MatrixPolynomial& p) {
  const std::size_t n = degree_of(p), m = p.size();
  const EigenReport rep = eig_pencil(frobenius_pencil(p));
  std::vector<EigenRow> rows;
  rows.reserve(rep.size());
  for (std::size_t k = 0; k < rep.size(); ++k) {
    // Right: last block. Left: every block is a multiple of the first one.
    ComplexVector v = block_of(rep.right[k], n - 1, m);
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double nb = norm2(block_of(rep.left[k], i, m));
      if (nb > best_norm) {
        best_norm = nb;
        best = i;
      }
    }
    ComplexVector w = block_of(rep.left[k], best, m);
    EigenRow row;
    row.lambda = rep.eigenvalues[k];
    row.cond_pencil = rep.cond[k];
    if (norm2(v) > 0.0 && norm2(w) > 0.0) {
      normalize(v);
      normalize(w);
      row.cond_poly = cond_poly(p, row.lambda, v, w);
      row.residual = poly_residual(p, row.lambda, v);
    } else {
      row.cond_poly = kNaN;
      row.residual = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<EigenRow> solve_secular(const MatrixPolynomial& p, const SecularForm& s) {
  const EigenReport rep = eig_pencil(secular_pencil(s));
  std::vector<EigenRow> rows;
  rows.reserve(rep.size());
  for (std::size_t k = 0; k < rep.size(); ++k) {
    EigenRow row;
    row.lambda = rep.eigenvalues[k];
    row.cond_pencil = rep.cond[k];
    try {
      MappedVector v = map_right_vector(p, s, row.lambda, rep.right[k]);
      MappedVector w = map_left_vector(p, s, row.lambda, rep.left[k]);
      row.residual = v.residual;
      row.cond_poly = cond_poly(p, row.lambda, v.vector, w.vector);
    } catch (const Error&) {
      row.residual = kNaN;
      row.cond_poly = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

MatrixPolynomial generate_unbalanced_scalar(std::size_t n, double sigma, Pcg64& rng) {
  if (n == 0) throw InvalidArgument("degree must be positive");
  std::vector<ComplexMatrix> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(ComplexMatrix(1, 1, {std::exp(sigma * rng.normal())}));
  c.push_back(ComplexMatrix::identity(1));
  return MatrixPolynomial(1, std::move(c));
}

MatrixPolynomial generate_unbalanced_matrix(std::size_t n, std::size_t m, double sigma, Pcg64& rng) {
  if (n == 0 || m == 0) throw InvalidArgument("degree and size must be positive");
  std::vector<ComplexMatrix> c;
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::exp(sigma * rng.normal());
    ComplexMatrix a(m, m);
    for (cplx& z : a.entries()) z = scale * rng.normal();
    c.push_back(std::move(a));
  }
  c.push_back(ComplexMatrix::identity(m));
  return MatrixPolynomial(m, std::move(c));
}

// ---------------------------------------------------------------------------

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (doc.contains("generator")) cfg.generator = doc["generator"].get<std::string>();
    if (doc.contains("n")) cfg.n = doc["n"].get<std::size_t>();
    if (doc.contains("m")) cfg.m = doc["m"].get<std::size_t>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("count")) cfg.count = doc["count"].get<std::size_t>();
    if (doc.contains("sigma")) cfg.sigma = doc["sigma"].get<double>();
    if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
    if (doc.contains("strategies")) cfg.strategies = doc["strategies"].get<std::vector<std::string>>();
    if (doc.contains("input")) {
      if (doc["input"].is_string())
        cfg.inputs = {doc["input"].get<std::string>()};
      else
        cfg.inputs = doc["input"].get<std::vector<std::string>>();
    }
    if (doc.contains("norm")) cfg.norm = parse_norm_kind(doc["norm"].get<std::string>());
    if (doc.contains("phase")) {
      const auto ph = doc["phase"].get<std::string>();
      if (ph == "random")
        cfg.phase = PhaseMode::Random;
      else if (ph != "deterministic")
        throw Error(ErrorCode::Parse, "phase must be deterministic or random");
    }
    if (doc.contains("fourier_alpha")) {
      const json& a = doc["fourier_alpha"];
      if (a.is_string())
        cfg.fourier_alpha = parse_complex(a.get<std::string>());
      else if (a.is_number())
        cfg.fourier_alpha = a.get<double>();
      else
        cfg.fourier_alpha = {a.at(0).get<double>(), a.at(1).get<double>()};
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid experiment config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (cfg.generator != "unbalanced-scalar" && cfg.generator != "unbalanced-matrix" &&
      cfg.generator != "file")
    throw Error(ErrorCode::Parse, "unknown generator '" + cfg.generator + "'");
  if (cfg.generator == "file" && cfg.inputs.empty())
    throw Error(ErrorCode::Parse, "generator 'file' needs \"input\"");
  if (cfg.generator != "file" && (cfg.n == 0 || cfg.m == 0 || cfg.count == 0))
    throw Error(ErrorCode::Parse, "n, m and count must be positive");
  if (cfg.strategies.empty()) throw Error(ErrorCode::Parse, "no strategies selected");
  for (const auto& s : cfg.strategies)
    if (std::find(kStrategies.begin(), kStrategies.end(), s) == kStrategies.end())
      throw Error(ErrorCode::Parse, "unknown strategy '" + s + "'");
  return cfg;
}

double StrategyOutcome::max_cond() const {
  if (rows.empty()) return kNaN;
  double best = 0.0;
  for (const auto& r : rows) best = std::max(best, r.cond_pencil);
  return best;
}

double StrategyOutcome::median_cond() const {
  if (rows.empty()) return kNaN;
  std::vector<double> c;
  for (const auto& r : rows) c.push_back(r.cond_pencil);
  std::sort(c.begin(), c.end());
  const std::size_t h = c.size() / 2;
  return c.size() % 2 ? c[h] : 0.5 * (c[h - 1] + c[h]);
}

const StrategyOutcome* ProblemOutcome::find(const std::string& strategy) const {
  for (const auto& s : strategies)
    if (s.strategy == strategy) return &s;
  return nullptr;
}

std::vector<StrategyOutcome> run_strategies(const MatrixPolynomial& p, const ExperimentConfig& cfg) {
  std::vector<StrategyOutcome> out;
  for (const auto& name : cfg.strategies) {
    StrategyOutcome o;
    o.strategy = name;
    try {
      if (name == "frobenius") {
        o.rows = solve_frobenius(p);
      } else {
        const std::size_t n = degree_of(p);
        NodePlan plan = name == "secular_fourier"
                            ? plan_fourier(n, cfg.fourier_alpha)
                            : plan_tropical(tropical_roots(p, cfg.norm), n, cfg.phase, cfg.seed);
        o.rows = solve_secular(p, build_linear(p, plan.betas));
      }
    } catch (const Error& e) {
      o.rows.clear();
      o.error = e.what();
      o.error_code = to_string(e.code());
    } catch (const std::exception& e) {
      o.rows.clear();
      o.error = e.what();
      o.error_code = "Internal";
    }
    out.push_back(std::move(o));
  }
  return out;
}

CsvTable comparison_table(const std::vector<StrategyOutcome>& outcomes) {
  CsvTable table({"lambda_re", "lambda_im", "cond_frobenius", "cond_secular_fourier",
                  "cond_secular_tropical"});
  const StrategyOutcome* ref = nullptr;
  for (const auto& o : outcomes)
    if (o.strategy == "frobenius" && !o.error && !o.rows.empty()) ref = &o;
  if (!ref)
    for (const auto& o : outcomes)
      if (!o.error && !o.rows.empty()) {
        ref = &o;
        break;
      }
  if (!ref) return table;

  const std::size_t count = ref->rows.size();
  std::vector<std::vector<double>> cols(kStrategies.size(), std::vector<double>(count, kNaN));
  for (const auto& o : outcomes) {
    const auto pos = std::find(kStrategies.begin(), kStrategies.end(), o.strategy);
    if (pos == kStrategies.end() || o.error) continue;
    auto& col = cols[static_cast<std::size_t>(pos - kStrategies.begin())];
    std::vector<bool> used(o.rows.size(), false);
    for (std::size_t r = 0; r < count; ++r) {
      std::size_t best = o.rows.size();
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < o.rows.size(); ++k) {
        if (used[k]) continue;
        const double d = std::abs(o.rows[k].lambda - ref->rows[r].lambda);
        if (best == o.rows.size() || d < best_d) {
          best = k;
          best_d = d;
        }
      }
      if (best == o.rows.size()) break;
      used[best] = true;
      col[r] = o.rows[best].cond_pencil;
    }
  }
  for (std::size_t r = 0; r < count; ++r)
    table.add_row(std::vector<double>{ref->rows[r].lambda.real(), ref->rows[r].lambda.imag(),
                                      cols[0][r], cols[1][r], cols[2][r]});
  return table;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + cfg.output + "': " + ec.message());

  struct Job {
    std::string name;
    std::uint64_t seed;
    MatrixPolynomial p;
  };
  std::vector<Job> jobs;
  if (cfg.generator == "file") {
    for (const auto& path : cfg.inputs) {
      ProblemFile pf = load_problem(path);
      jobs.push_back({pf.name.empty() ? path : pf.name, cfg.seed, std::move(pf.polynomial)});
    }
  } else {
    for (std::size_t k = 0; k < cfg.count; ++k) {
      const std::uint64_t seed = cfg.seed + k;
      Pcg64 rng(seed);
      MatrixPolynomial p = cfg.generator == "unbalanced-scalar"
                               ? generate_unbalanced_scalar(cfg.n, cfg.sigma, rng)
                               : generate_unbalanced_matrix(cfg.n, cfg.m, cfg.sigma, rng);
      jobs.push_back({cfg.generator + "-" + std::to_string(seed), seed, std::move(p)});
    }
  }

  ExperimentSummary summary;
  json problems = json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    ProblemOutcome po;
    po.index = k;
    po.seed = jobs[k].seed;
    po.name = jobs[k].name;
    po.m = jobs[k].p.size();
    po.n = static_cast<std::size_t>(std::max(jobs[k].p.degree(), 0));
    ExperimentConfig local = cfg;
    local.seed = jobs[k].seed;
    po.strategies = run_strategies(jobs[k].p, local);

    char name[32];
    std::snprintf(name, sizeof name, "problem_%03zu.csv", k);
    po.csv_file = name;
    write_text_file((std::filesystem::path(cfg.output) / name).string(),
                    comparison_table(po.strategies).str());

    json pj;
    pj["index"] = po.index;
    pj["seed"] = po.seed;
    pj["name"] = po.name;
    pj["n"] = po.n;
    pj["m"] = po.m;
    pj["csv"] = po.csv_file;
    json sj = json::object();
    for (const auto& s : po.strategies) {
      json e;
      e["eigenvalues"] = s.rows.size();
      e["max_cond"] = s.max_cond();
      e["median_cond"] = s.median_cond();
      e["error"] = s.error ? json(*s.error) : json(nullptr);
      if (s.error) e["error_code"] = s.error_code;
      sj[s.strategy] = std::move(e);
    }
    pj["strategies"] = std::move(sj);
    problems.push_back(std::move(pj));
    summary.problems.push_back(std::move(po));
  }

  json doc;
  doc["generator"] = cfg.generator;
  doc["n"] = cfg.n;
  doc["m"] = cfg.m;
  doc["sigma"] = cfg.sigma;
  doc["seed"] = cfg.seed;
  doc["norm"] = to_string(cfg.norm);
  doc["problems"] = std::move(problems);
  json agg = json::object();
  for (const auto& name : cfg.strategies) {
    std::size_t ok = 0, failed = 0;
    std::vector<double> maxima;
    for (const auto& po : summary.problems) {
      const StrategyOutcome* s = po.find(name);
      if (!s) continue;
      if (s->error) {
        ++failed;
      } else {
        ++ok;
        maxima.push_back(s->max_cond());
      }
    }
    std::sort(maxima.begin(), maxima.end());
    json a;
    a["succeeded"] = ok;
    a["failed"] = failed;
    a["max_cond"] = maxima.empty() ? json(nullptr) : json(maxima.back());
    a["median_max_cond"] = maxima.empty() ? json(nullptr) : json(maxima[maxima.size() / 2]);
    agg[name] = std::move(a);
  }
  doc["aggregate"] = std::move(agg);
  summary.json = doc.dump(2) + "\n";
  write_text_file((std::filesystem::path(cfg.output) / "summary.json").string(), summary.json);
  return summary;
}

}  // namespace secular
