#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secular/polycore.hpp"
#include "secular/secular_form.hpp"
#include "secular/tropical.hpp"

namespace secular {

/// {"m": m, "degree": n, "coefficients": [P_0, ..., P_n], "name": optional}.
/// Each matrix is an m x m array of [re, im] pairs (plain numbers are accepted
/// as real entries).
struct ProblemFile {
  std::string name;
  MatrixPolynomial polynomial;
};

/// Throws Error(Parse) on malformed documents.
ProblemFile parse_problem(const std::string& json_text);
/// Throws Error(Io) when the file cannot be read.
ProblemFile load_problem(const std::string& path);
std::string problem_to_json(const ProblemFile& problem);

/// Extra output-only members written next to a secular form.
struct FormJsonExtras {
  std::optional<double> residual;
  std::optional<StrongnessReport> strongness;
  std::optional<MatrixPolynomial> assembled;
  std::string assembled_kind;  // "dense" or "sparse"
};

std::string form_to_json(const SecularForm& form, const FormJsonExtras& extras = {});
/// Reads the members written by form_to_json; extra members are ignored.
SecularForm form_from_json(const std::string& json_text);

std::string strongness_to_json(const StrongnessReport& report);
std::string tropical_to_json(const TropicalRoots& roots,
                             const std::optional<std::pair<double, double>>& annulus);

/// "1.5", "-2e-3", "1+2i", "3-0.5i", "2i", "-i".
cplx parse_complex(const std::string& text);

/// Parsed --blocks argument.
struct BlockChoice {
  enum class Kind { Linear, Fourier, Tropical, Poly };
  Kind kind = Kind::Linear;
  std::vector<cplx> betas;                  // linear
  std::size_t count = 0;                    // fourier
  cplx alpha = 1.0;                         // fourier
  PhaseMode phase = PhaseMode::Deterministic;  // tropical
  std::uint64_t phase_seed = 0;             // tropical
  std::vector<ScalarPolynomial> polys;      // poly
};

/// "linear:b1,b2,...", "fourier:n[:alpha]", "tropical[:random[:seed]]",
/// "poly:c;c;..." where each c lists coefficients from the highest degree down.
BlockChoice parse_block_spec(const std::string& text);

/// "%.17g", which reads back to the same double; "inf", "-inf", "nan" otherwise.
std::string format_double(double x);

/// RFC 4180 table: header row, comma separators, CRLF line ends, quoted fields
/// when needed.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace secular
