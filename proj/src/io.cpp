#include "secular/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "secular/errors.hpp"

namespace secular {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  parse_error(where + ": expected a number or an [re, im] pair");
}

json matrix_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(complex_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from(const json& j, std::size_t m, const std::string& where) {
  if (!j.is_array() || j.size() != m) parse_error(where + ": expected " + std::to_string(m) + " rows");
  std::vector<cplx> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != m)
      parse_error(where + ": row " + std::to_string(i) + " must have " + std::to_string(m) + " entries");
    for (std::size_t k = 0; k < m; ++k) {
      cplx z = complex_from(row[k], where);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        parse_error(where + ": entries must be finite");
      entries.push_back(z);
    }
  }
  return ComplexMatrix(m, m, std::move(entries));
}

json poly_json(const MatrixPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(matrix_json(c));
  return out;
}

json scalar_json(const ScalarPolynomial& p) {
  json out = json::array();
  for (cplx z : p.coeffs()) out.push_back(complex_json(z));
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

std::size_t size_from(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0)
    parse_error(std::string("missing or invalid \"") + key + "\"");
  return doc[key].get<std::size_t>();
}

json strongness_value(const StrongnessReport& r) {
  json j;
  j["equal_degrees"] = r.equal_degrees;
  j["nonzero_constants"] = r.nonzero_constants;
  j["reversed_coprime"] = r.reversed_coprime;
  j["strong"] = r.strong;
  j["reversed_margin"] = std::isfinite(r.reversed_margin) ? json(r.reversed_margin) : json(nullptr);
  j["note"] = r.note;
  return j;
}

double strict_double(const std::string& s) {
  if (s.empty()) throw InvalidArgument("empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid number '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("invalid number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------

ProblemFile parse_problem(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) parse_error("problem file must be a JSON object");
  const std::size_t m = size_from(doc, "m");
  const std::size_t degree = size_from(doc, "degree");
  if (m == 0) parse_error("\"m\" must be positive");
  if (!doc.contains("coefficients") || !doc["coefficients"].is_array())
    parse_error("missing \"coefficients\" array");
  const json& coeffs = doc["coefficients"];
  if (coeffs.size() != degree + 1)
    parse_error("expected " + std::to_string(degree + 1) + " coefficient matrices, found " +
                std::to_string(coeffs.size()));
  std::vector<ComplexMatrix> c;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    c.push_back(matrix_from(coeffs[i], m, "coefficient " + std::to_string(i)));
  ProblemFile out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_error("\"name\" must be a string");
    out.name = doc["name"].get<std::string>();
  }
  out.polynomial = MatrixPolynomial(m, std::move(c));
  return out;
}

ProblemFile load_problem(const std::string& path) { return parse_problem(read_text_file(path)); }

std::string problem_to_json(const ProblemFile& problem) {
  json doc;
  if (!problem.name.empty()) doc["name"] = problem.name;
  doc["m"] = problem.polynomial.size();
  doc["degree"] = problem.polynomial.coeff_count() == 0 ? 0 : problem.polynomial.coeff_count() - 1;
  doc["coefficients"] = poly_json(problem.polynomial);
  return doc.dump(2) + "\n";
}

std::string form_to_json(const SecularForm& form, const FormJsonExtras& extras) {
  json doc;
  doc["m"] = form.size();
  doc["shift"] = complex_json(form.shift());
  json blocks = json::array();
  for (const auto& b : form.spec().blocks) blocks.push_back(scalar_json(b));
  doc["blocks"] = std::move(blocks);
  doc["leading"] = matrix_json(form.leading());
  json weights = json::array();
  for (const auto& w : form.weights()) weights.push_back(poly_json(w));
  doc["weights"] = std::move(weights);
  if (extras.residual) doc["reconstruction_residual"] = *extras.residual;
  if (extras.strongness) doc["strongness"] = strongness_value(*extras.strongness);
  if (extras.assembled) {
    json a;
    a["kind"] = extras.assembled_kind;
    a["size"] = extras.assembled->size();
    a["coefficients"] = poly_json(*extras.assembled);
    doc["assembled"] = std::move(a);
  }
  return doc.dump(2) + "\n";
}

SecularForm form_from_json(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) parse_error("secular form must be a JSON object");
  const std::size_t m = size_from(doc, "m");
  if (m == 0) parse_error("\"m\" must be positive");
  if (!doc.contains("shift")) parse_error("missing \"shift\"");
  if (!doc.contains("blocks") || !doc["blocks"].is_array()) parse_error("missing \"blocks\" array");
  if (!doc.contains("weights") || !doc["weights"].is_array()) parse_error("missing \"weights\" array");
  if (!doc.contains("leading")) parse_error("missing \"leading\"");
  BlockSpec spec;
  spec.shift = complex_from(doc["shift"], "shift");
  for (const json& b : doc["blocks"]) {
    if (!b.is_array()) parse_error("block must be a coefficient array");
    std::vector<cplx> c;
    for (const json& z : b) c.push_back(complex_from(z, "block coefficient"));
    spec.blocks.emplace_back(std::move(c));
  }
  std::vector<MatrixPolynomial> weights;
  for (const json& w : doc["weights"]) {
    if (!w.is_array()) parse_error("weight must be an array of matrices");
    std::vector<ComplexMatrix> c;
    for (const json& a : w) c.push_back(matrix_from(a, m, "weight coefficient"));
    weights.emplace_back(m, std::move(c));
  }
  ComplexMatrix leading = matrix_from(doc["leading"], m, "leading");
  return SecularForm(std::move(spec), std::move(leading), std::move(weights));
}

std::string strongness_to_json(const StrongnessReport& report) {
  return strongness_value(report).dump(2) + "\n";
}

std::string tropical_to_json(const TropicalRoots& roots,
                             const std::optional<std::pair<double, double>>& annulus) {
  json doc;
  doc["norm"] = to_string(roots.norm);
  json list = json::array();
  for (const auto& r : roots.roots) list.push_back({{"magnitude", r.magnitude}, {"multiplicity", r.multiplicity}});
  doc["roots"] = std::move(list);
  doc["total_multiplicity"] = roots.total_multiplicity();
  if (annulus)
    doc["pellet"] = {{"lower", annulus->first}, {"upper", annulus->second}};
  else
    doc["pellet"] = nullptr;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {strict_double(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return strict_double(t);
  };
  if (split_at == std::string::npos) return {0.0, imag_part(s)};
  return {strict_double(s.substr(0, split_at)), imag_part(s.substr(split_at))};
}

BlockChoice parse_block_spec(const std::string& text) {
  BlockChoice c;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "linear") {
    c.kind = BlockChoice::Kind::Linear;
    if (rest.empty()) throw InvalidArgument("linear block spec needs nodes");
    for (const auto& t : split(rest, ',')) c.betas.push_back(parse_complex(t));
  } else if (kind == "fourier") {
    c.kind = BlockChoice::Kind::Fourier;
    auto parts = split(rest, ':');
    if (rest.empty() || parts.size() > 2) throw InvalidArgument("expected fourier:n[:alpha]");
    const double n = strict_double(parts[0]);
    if (n < 1 || n != std::floor(n)) throw InvalidArgument("fourier node count must be a positive integer");
    c.count = static_cast<std::size_t>(n);
    if (parts.size() == 2) c.alpha = parse_complex(parts[1]);
  } else if (kind == "tropical") {
    c.kind = BlockChoice::Kind::Tropical;
    if (!rest.empty()) {
      auto parts = split(rest, ':');
      if (parts[0] != "random" || parts.size() > 2)
        throw InvalidArgument("expected tropical or tropical:random[:seed]");
      c.phase = PhaseMode::Random;
      if (parts.size() == 2) c.phase_seed = static_cast<std::uint64_t>(strict_double(parts[1]));
    }
  } else if (kind == "poly") {
    c.kind = BlockChoice::Kind::Poly;
    if (rest.empty()) throw InvalidArgument("poly block spec needs coefficient lists");
    for (const auto& list : split(rest, ';')) {
      std::vector<cplx> high_to_low;
      for (const auto& t : split(list, ',')) high_to_low.push_back(parse_complex(t));
      c.polys.emplace_back(std::vector<cplx>(high_to_low.rbegin(), high_to_low.rend()));
    }
  } else {
    throw InvalidArgument("unknown block spec '" + kind + "' (expected linear, fourier, tropical or poly)");
  }
  return c;
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size())
    throw InvalidArgument("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                          std::to_string(header_.size()));
  rows_.push_back(std::move(row));
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> fields;
  fields.reserve(row.size());
  for (double x : row) fields.push_back(format_double(x));
  add_row(std::move(fields));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out.push_back(',');
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error while reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "error while writing '" + path + "'");
}

}  // namespace secular
