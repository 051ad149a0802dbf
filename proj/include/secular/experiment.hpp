#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secular/io.hpp"
#include "secular/polycore.hpp"
#include "secular/rng.hpp"
#include "secular/secular_form.hpp"
#include "secular/tropical.hpp"

namespace secular {

/// One eigenvalue of P with the conditioning seen through a linearization.
struct EigenRow {
  cplx lambda;
  double cond_pencil = 0.0;
  double cond_poly = 0.0;
  /// ||P(lambda) v|| / (sum_i ||P_i|| |lambda|^i ||v||) for the recovered v.
  double residual = 0.0;
};

/// Node plan for a block choice of kind linear, fourier or tropical.
NodePlan plan_from_choice(const MatrixPolynomial& p, const BlockChoice& choice, NormKind norm);

/// build_linear for linear/fourier/tropical choices, build_ellification for poly.
SecularForm build_from_choice(const MatrixPolynomial& p, const BlockChoice& choice,
                              std::optional<cplx> shift, NormKind norm);

/// Eigenvalues of P through the block column companion pencil.
std::vector<EigenRow> solve_frobenius(const MatrixPolynomial& p);
/// Eigenvalues of P through the pencil of a linear secular form.
std::vector<EigenRow> solve_secular(const MatrixPolynomial& p, const SecularForm& s);

/// p_i = exp(sigma g_i) for i < n, p_n = 1.
MatrixPolynomial generate_unbalanced_scalar(std::size_t n, double sigma, Pcg64& rng);
/// P_i = exp(sigma g_i) G_i with G_i an m x m standard normal matrix, P_n = I.
MatrixPolynomial generate_unbalanced_matrix(std::size_t n, std::size_t m, double sigma, Pcg64& rng);

struct ExperimentConfig {
  std::string generator = "unbalanced-scalar";  // unbalanced-matrix | file
  std::size_t n = 10;
  std::size_t m = 1;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  double sigma = 12.0;
  std::vector<std::string> strategies = {"frobenius", "secular_fourier", "secular_tropical"};
  std::string output = "experiment_out";
  std::vector<std::string> inputs;  // generator = file
  NormKind norm = NormKind::Infinity;
  cplx fourier_alpha = 1.0;
  PhaseMode phase = PhaseMode::Deterministic;
};

/// Throws Error(Parse) on malformed documents.
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct StrategyOutcome {
  std::string strategy;
  std::vector<EigenRow> rows;
  std::optional<std::string> error;
  std::string error_code;

  double max_cond() const;
  double median_cond() const;
};

struct ProblemOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<StrategyOutcome> strategies;
  std::string csv_file;

  const StrategyOutcome* find(const std::string& strategy) const;
};

/// Runs every selected strategy on one polynomial; failures are recorded.
std::vector<StrategyOutcome> run_strategies(const MatrixPolynomial& p, const ExperimentConfig& cfg);

/// Per-eigenvalue table with the columns
/// lambda_re,lambda_im,cond_frobenius,cond_secular_fourier,cond_secular_tropical.
/// Rows follow the reference strategy (frobenius when it succeeded) in
/// nonincreasing modulus; the others are matched greedily to the nearest
/// unused eigenvalue. Missing values are written as nan.
CsvTable comparison_table(const std::vector<StrategyOutcome>& outcomes);

struct ExperimentSummary {
  std::vector<ProblemOutcome> problems;
  std::string json;
};

/// Generates or loads the problems, writes problem_NNN.csv files and
/// summary.json into cfg.output (created when missing) and returns the summary.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

}  // namespace secular
