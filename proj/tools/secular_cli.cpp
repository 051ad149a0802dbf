// Command-line front end over the C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "secular/secular.h"

namespace {

using nlohmann::json;

struct Failure {
  sec_status status;
};

void check(sec_status st) {
  if (st != SEC_OK) throw Failure{st};
}

struct PolyDeleter {
  void operator()(sec_poly* p) const { sec_poly_free(p); }
};
struct FormDeleter {
  void operator()(sec_form* f) const { sec_form_free(f); }
};
struct EigDeleter {
  void operator()(sec_eig* e) const { sec_eig_free(e); }
};
using PolyPtr = std::unique_ptr<sec_poly, PolyDeleter>;
using FormPtr = std::unique_ptr<sec_form, FormDeleter>;
using EigPtr = std::unique_ptr<sec_eig, EigDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  sec_string_free(s);
  return out;
}

PolyPtr load_poly(const std::string& path) {
  sec_poly* p = nullptr;
  check(sec_poly_load(path.c_str(), &p));
  spdlog::info("loaded {}: m = {}, degree = {}", path, sec_poly_size(p), sec_poly_degree(p));
  return PolyPtr(p);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "%s\n",
                 json({{"error", "IoError"}, {"message", "cannot open '" + path + "' for reading"}})
                     .dump()
                     .c_str());
    std::exit(4);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    std::fprintf(stderr, "%s\n",
                 json({{"error", "IoError"}, {"message", "cannot write '" + path + "'"}}).dump().c_str());
    std::exit(4);
  }
}

const char* norm_arg(const std::string& norm) { return norm.empty() ? nullptr : norm.c_str(); }

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("secular");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SECULAR_LOG")) {
    const std::string level = env;
    if (level == "error")
      spdlog::set_level(spdlog::level::err);
    else if (level == "info")
      spdlog::set_level(spdlog::level::info);
    else if (level == "debug")
      spdlog::set_level(spdlog::level::debug);
  }
}

int cmd_lify(const std::string& input, const std::string& blocks, const std::string& shift,
             const std::string& norm, const std::string& output, bool sparse, bool dense) {
  PolyPtr p = load_poly(input);
  double s[2] = {0.0, 0.0};
  const double* sp = nullptr;
  if (!shift.empty()) {
    check(sec_parse_complex(shift.c_str(), s));
    sp = s;
  }
  sec_form* raw = nullptr;
  check(sec_form_build(p.get(), blocks.c_str(), sp, norm_arg(norm), &raw));
  FormPtr f(raw);
  spdlog::info("built secular form with {} blocks", sec_form_block_count(f.get()));

  int flags = 0;
  if (sparse) flags |= SEC_FORM_JSON_SPARSE;
  if (dense) flags |= SEC_FORM_JSON_DENSE;
  char* text = nullptr;
  check(sec_form_to_json(f.get(), p.get(), flags, &text));
  write_file(output, take(text));

  double residual = 0.0;
  check(sec_form_residual(p.get(), f.get(), &residual));
  char* strong = nullptr;
  check(sec_form_strongness_json(f.get(), &strong));
  json report;
  report["output"] = output;
  report["reconstruction_residual"] = residual;
  report["strongness"] = json::parse(take(strong));
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& input, const std::string& form) {
  PolyPtr p = load_poly(input);
  sec_form* raw = nullptr;
  check(sec_form_from_json(read_file(form).c_str(), &raw));
  FormPtr f(raw);
  double residual = 0.0;
  check(sec_form_residual(p.get(), f.get(), &residual));
  std::cout << json({{"reconstruction_residual", residual}}).dump(2) << "\n";
  return 0;
}

int cmd_eig(const std::string& input, const std::string& method, const std::string& norm,
            const std::string& output) {
  PolyPtr p = load_poly(input);
  sec_eig* raw = nullptr;
  check(sec_eig_solve(p.get(), method.c_str(), norm_arg(norm), &raw));
  EigPtr e(raw);
  spdlog::info("{} eigenvalues via {}", sec_eig_count(e.get()), method);
  char* csv = nullptr;
  check(sec_eig_csv(e.get(), &csv));
  if (output.empty() || output == "-")
    std::cout << take(csv);
  else
    write_file(output, take(csv));
  return 0;
}

int cmd_tropical(const std::string& input, const std::string& norm) {
  PolyPtr p = load_poly(input);
  char* text = nullptr;
  check(sec_tropical_json(p.get(), norm_arg(norm), &text));
  std::cout << take(text);
  return 0;
}

int cmd_experiment(const std::string& config) {
  char* summary = nullptr;
  check(sec_experiment_run(read_file(config).c_str(), &summary));
  json doc = json::parse(take(summary));
  json brief;
  brief["problems"] = doc["problems"].size();
  brief["aggregate"] = doc["aggregate"];
  std::cout << brief.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Secular linearizations of matrix polynomials"};
  app.require_subcommand(1);

  std::string input, blocks, shift, norm, output, method, form, config;
  bool sparse = false, dense = false;

  auto* lify = app.add_subcommand("lify", "Build a secular l-ification and write it as JSON");
  lify->add_option("--input", input, "Problem file (JSON)")->required();
  lify->add_option("--blocks", blocks, "linear:b1,..  fourier:n[:alpha]  tropical  poly:c;c;..")->required();
  lify->add_option("--shift", shift, "Shift s (complex, e.g. 1 or 0.5-2i)");
  lify->add_option("--norm", norm, "Norm for tropical roots")->check(CLI::IsMember({"inf", "fro", "two"}));
  lify->add_option("--output", output, "Output JSON file")->required();
  lify->add_flag("--sparse", sparse, "Include the sparse form H(x) = L A(x)");
  lify->add_flag("--dense", dense, "Include the dense form A(x)");

  auto* verify = app.add_subcommand("verify", "Reconstruction residual of a stored secular form");
  verify->add_option("--input", input, "Problem file (JSON)")->required();
  verify->add_option("--form", form, "Secular form written by lify")->required();

  auto* eig = app.add_subcommand("eig", "Eigenvalues with condition numbers as CSV");
  eig->add_option("--input", input, "Problem file (JSON)")->required();
  eig->add_option("--method", method, "frobenius or secular:SPEC")->default_val("frobenius");
  eig->add_option("--norm", norm, "Norm for tropical roots")->check(CLI::IsMember({"inf", "fro", "two"}));
  eig->add_option("--output", output, "Output CSV file (default: standard output)");

  auto* trop = app.add_subcommand("tropical", "Tropical roots and Pellet annulus as JSON");
  trop->add_option("--input", input, "Problem file (JSON)")->required();
  trop->add_option("--norm", norm, "Coefficient norm")->check(CLI::IsMember({"inf", "fro", "two"}));

  auto* exp = app.add_subcommand("experiment", "Conditioning comparison over generated problems");
  exp->add_option("--config", config, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "%s\n", json({{"error", "UsageError"}, {"message", e.what()}}).dump().c_str());
    return 2;
  }

  try {
    if (*lify) return cmd_lify(input, blocks, shift, norm, output, sparse, dense);
    if (*verify) return cmd_verify(input, form);
    if (*eig) return cmd_eig(input, method, norm, output);
    if (*trop) return cmd_tropical(input, norm);
    if (*exp) return cmd_experiment(config);
  } catch (const Failure& f) {
    std::fprintf(stderr, "%s\n", sec_last_error_json());
    spdlog::debug("status {}", sec_status_name(f.status));
    return sec_status_exit_code(f.status);
  }
  return 0;
}
