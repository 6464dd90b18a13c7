#include "dualmat/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace dualmat {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "field '" + field + "': " + what);
}

Index read_dim(const Json& j, const char* key) {
  if (!j.contains(key)) bad(key, "missing");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(key, "must be a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

CMatrix read_part(const Json& j, const char* key, Index rows, Index cols) {
  if (!j.contains(key)) bad(key, "missing");
  const Json& part = j.at(key);
  if (!part.is_array() || static_cast<Index>(part.size()) != rows) {
    bad(key, "must be an array of " + std::to_string(rows) + " rows");
  }
  CMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const std::string row_field = std::string(key) + "[" + std::to_string(i) + "]";
    const Json& row = part[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      bad(row_field, "must be an array of " + std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      const std::string field = row_field + "[" + std::to_string(k) + "]";
      const Json& z = row[static_cast<std::size_t>(k)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        bad(field, "must be a [re, im] pair of numbers");
      }
      const Complex v(z[0].get<double>(), z[1].get<double>());
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad(field, "must be finite");
      out(i, k) = v;
    }
  }
  return out;
}

Json complex_json(Complex z) { return Json::array({stable_number(z.real()), stable_number(z.imag())}); }

Json part_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json residuals_json(const std::map<std::string, EquationResidual>& residuals) {
  Json out = Json::object();
  for (const auto& [name, r] : residuals) {
    out[name] = {{"std", stable_number(r.std_dev)},
                 {"dual", stable_number(r.dual_dev)},
                 {"ok", r.ratio <= 1.0}};
  }
  return out;
}

bool flat(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
}

void write_value(std::ostream& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_array()) {
    if (j.empty() || flat(j)) {
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << j[i].dump();
      out << ']';
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_value(out, j[i], depth + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << ']';
    return;
  }
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      write_value(out, value, depth + 1);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << close << '}';
    return;
  }
  out << j.dump();
}

}  // namespace

void write_json(std::ostream& out, const Json& j) {
  write_value(out, j, 0);
  out << '\n';
}

double stable_number(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < 5e-13) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

DualMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) bad("<root>", "must be an object");
  const Index rows = read_dim(j, "rows");
  const Index cols = read_dim(j, "cols");
  CMatrix s = read_part(j, "standard", rows, cols);
  CMatrix d = read_part(j, "dual", rows, cols);
  return {std::move(s), std::move(d)};
}

DualMatrix read_matrix(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad("<root>", std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

DualMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  return read_matrix(in);
}

Json to_json(const DualMatrix& a) {
  Json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  j["standard"] = part_json(a.std_part());
  j["dual"] = part_json(a.dual_part());
  return j;
}

Json to_json(const DualReal& x) {
  return {{"std", stable_number(x.std_part)}, {"dual", stable_number(x.dual_part)}};
}

Json to_json(const DualSvd& svd) {
  Json sigma = Json::array();
  for (const DualReal& s : svd.sigma) sigma.push_back(to_json(s));
  Json j;
  j["appreciable_rank"] = svd.appreciable_rank;
  j["nonzero_count"] = svd.nonzero_count;
  j["sigma"] = std::move(sigma);
  j["U"] = to_json(svd.u);
  j["V"] = to_json(svd.v);
  return j;
}

Json to_json(const HsDecomposition& h) {
  auto values = [](const std::vector<DualReal>& v) {
    Json out = Json::array();
    for (const DualReal& s : v) out.push_back(to_json(s));
    return out;
  };
  Json j;
  j["order"] = h.order();
  j["rank"] = h.rank();
  j["U"] = to_json(h.u);
  j["sigma1"] = values(h.sigma1);
  j["sigma2"] = values(h.sigma2);
  j["K"] = to_json(h.k);
  j["L"] = to_json(h.l);
  j["M"] = to_json(h.m);
  j["N"] = to_json(h.n);
  return j;
}

Json to_json(const InverseReport& report) {
  Json j;
  j["exists"] = report.exists;
  j["value"] = report.exists && report.value ? to_json(*report.value) : Json(nullptr);
  j["residuals"] = residuals_json(report.residuals);
  return j;
}

Json to_json(const EquivalenceReport& report) {
  Json conds = Json::array();
  for (const ConditionResult& c : report.conditions) {
    Json item;
    item["condition"] = c.label;
    item["applicable"] = c.applicable;
    item["holds"] = c.applicable ? Json(c.check.holds) : Json(nullptr);
    item["ratio"] = c.applicable ? Json(stable_number(c.check.ratio)) : Json(nullptr);
    conds.push_back(std::move(item));
  }
  Json j;
  j["theorem"] = to_string(report.theorem);
  j["verdict"] = to_string(report.verdict);
  j["conditions"] = std::move(conds);
  if (!report.details.empty()) j["details"] = report.details;
  return j;
}

Json to_json(const SuiteReport& report) {
  const SuiteConfig& cfg = report.config;
  Json sizes = Json::array();
  for (Index n : cfg.sizes) sizes.push_back(n);
  Json kinds = Json::array();
  for (GeneratorKind k : cfg.kinds) kinds.push_back(to_string(k));

  Json tallies = Json::object();
  for (const auto& [label, t] : report.tallies) {
    tallies[label] = {{"true", t.true_count}, {"false", t.false_count}, {"inapplicable", t.inapplicable}};
  }
  Json flagged = Json::array();
  for (const TrialOutcome& t : report.flagged) {
    Json item;
    item["trial"] = t.index;
    item["seed"] = t.seed;
    item["kind"] = to_string(t.kind);
    item["size"] = t.size;
    item["verdict"] = t.error ? "error" : std::string(to_string(t.verdict));
    item["details"] = t.details;
    flagged.push_back(std::move(item));
  }

  Json j;
  j["theorem"] = to_string(cfg.theorem);
  j["trials"] = cfg.trials;
  j["sizes"] = std::move(sizes);
  j["seed"] = cfg.seed;
  j["kinds"] = std::move(kinds);
  j["consistent"] = report.consistent;
  j["indeterminate"] = report.indeterminate;
  j["violations"] = report.violations;
  j["errors"] = report.errors;
  j["passed"] = report.passed();
  j["conditions"] = std::move(tallies);
  j["flagged"] = std::move(flagged);
  return j;
}

}  // namespace dualmat
