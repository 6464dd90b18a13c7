#include "cli.hpp"

#include <cstdio>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "dualmat/io.hpp"

namespace dualmat::cli {

namespace {

struct Options {
  std::string input;
  bool check = false;
  std::string property;
  std::string theorem;
  int trials = 200;
  std::vector<Index> sizes{4};
  std::uint64_t seed = 0;
  int threads = 1;
  double tol = ToleranceConfig{}.eq_rel_tol;
  double rank_tol = ToleranceConfig{}.rank_rel_tol;
  std::string output = "json";
};

struct Result {
  Json body;
  int code = kOk;
};

Json residual_json(const DualMatrix& x, const DualMatrix& y, const ToleranceConfig& tol) {
  const Deviation d = deviation(x, y);
  return {{"std", stable_number(d.std_dev)},
          {"dual", stable_number(d.dual_dev)},
          {"ok", d.ratio(tol) <= 1.0}};
}

Result do_svd(const Options& o, const ToleranceConfig& tol) {
  const DualMatrix a = read_matrix_file(o.input);
  const DualSvd svd = dual_svd(a, tol);
  Json j = to_json(svd);
  if (o.check) {
    j["check"] = {
        {"A=U*S*V^*", residual_json(svd.reconstruct(), a, tol)},
        {"U^*U=I", residual_json(svd.u.adjoint() * svd.u, DualMatrix::identity(a.rows()), tol)},
        {"V^*V=I", residual_json(svd.v.adjoint() * svd.v, DualMatrix::identity(a.cols()), tol)},
    };
  }
  return {std::move(j)};
}

Result do_hs(const Options& o, const ToleranceConfig& tol) {
  const DualMatrix a = read_matrix_file(o.input);
  const HsDecomposition h = hs_decompose(a, tol);
  Json j = to_json(h);
  if (o.check) {
    const Index r = h.rank();
    const Index n = h.order();
    j["check"] = {
        {"A=U*[S1K S1L; S2M S2N]*U^*", residual_json(hs_reconstruct(h), a, tol)},
        {"KK^*+LL^*=I", residual_json(h.k * h.k.adjoint() + h.l * h.l.adjoint(),
                                      DualMatrix::identity(r), tol)},
        {"KM^*+LN^*=0", residual_json(h.k * h.m.adjoint() + h.l * h.n.adjoint(),
                                      DualMatrix::zero(r, n - r), tol)},
    };
  }
  return {std::move(j)};
}

Result report_result(const InverseReport& report) {
  return {to_json(report), report.exists ? kOk : kDoesNotExist};
}

Result do_inv(const Options& o, const ToleranceConfig& tol) {
  const DualMatrix a = read_matrix_file(o.input);
  require_square(a, "inv");
  try {
    return {to_json(inverse(a, tol))};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_standard_part) throw;
    return {Json{{"exists", false}, {"value", nullptr}, {"reason", e.what()}}, kDoesNotExist};
  }
}

Result do_check(const Options& o, const ToleranceConfig& tol) {
  const DualMatrix a = read_matrix_file(o.input);
  std::vector<PropertyId> props(kAllProperties.begin(), kAllProperties.end());
  if (!o.property.empty()) {
    const auto p = property_from_string(o.property);
    if (!p) throw Error(ErrorCode::invalid_argument, "unknown property '" + o.property + "'");
    props = {*p};
  }
  const MatrixAnalysis m = analyze(a, tol);
  Json properties = Json::object();
  for (PropertyId p : props) {
    const Check d = definitional_check(m, p, tol);
    const Check s = structural_check(m.hs, p, tol);
    properties[std::string(to_string(p))] = {
        {"definition", d.holds}, {"blocks", s.holds}, {"agree", d.holds == s.holds}};
  }
  Json j;
  j["order"] = a.rows();
  j["appreciable_rank"] = m.hs.rank();
  j["essential_group_inverse_exists"] = m.essential_group.exists;
  j["properties"] = std::move(properties);
  return {std::move(j)};
}

Result do_verify(const Options& o, const ToleranceConfig& tol) {
  const auto theorem = theorem_from_string(o.theorem);
  if (!theorem) throw Error(ErrorCode::invalid_argument, "unknown theorem '" + o.theorem + "'");
  SuiteConfig cfg;
  cfg.theorem = *theorem;
  cfg.trials = o.trials;
  cfg.sizes = o.sizes;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.tol = tol;
  const SuiteReport report = run_suite(cfg);
  return {to_json(report), report.passed() ? kOk : kDoesNotExist};
}

// Human-readable rendering of the JSON payload.

std::string complex_text(const Json& z) {
  char buf[64];
  const double re = z[0].get<double>();
  const double im = z[1].get<double>();
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
  return buf;
}

bool is_matrix(const Json& j) {
  return j.is_object() && j.contains("standard") && j.contains("dual") && j.contains("rows");
}

void print_part(const Json& part, const std::string& indent, std::ostream& out) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 0;
  for (const Json& row : part) {
    auto& line = cells.emplace_back();
    for (const Json& z : row) {
      line.push_back(complex_text(z));
      width = std::max(width, line.back().size());
    }
  }
  for (const auto& line : cells) {
    out << indent;
    for (const auto& c : line) out << "  " << std::string(width - c.size(), ' ') << c;
    out << '\n';
  }
}

void print_pretty(const Json& j, const std::string& indent, std::ostream& out) {
  if (is_matrix(j)) {
    out << indent << j["rows"].dump() << " x " << j["cols"].dump() << '\n';
    out << indent << "standard:\n";
    print_part(j["standard"], indent, out);
    out << indent << "dual:\n";
    print_part(j["dual"], indent, out);
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const bool scalar = !value.is_structured() ||
                          (value.is_array() && std::none_of(value.begin(), value.end(),
                                                            [](const Json& v) { return v.is_structured(); }));
      if (scalar) {
        out << indent << key << ": " << value.dump() << '\n';
      } else {
        out << indent << key << ":\n";
        print_pretty(value, indent + "  ", out);
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const Json& item : j) {
      if (item.is_structured()) {
        out << indent << "-\n";
        print_pretty(item, indent + "  ", out);
      } else {
        out << indent << "- " << item.dump() << '\n';
      }
    }
    return;
  }
  out << indent << j.dump() << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch:
    case ErrorCode::not_square:
    case ErrorCode::invalid_argument:
      return kUsage;
    default:
      return kNumerical;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dual complex matrix decompositions, generalized inverses and theorem checks",
               "dualmat"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--tol", o.tol, "Relative and absolute equality tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--rank-tol", o.rank_tol, "Relative rank threshold for singular values")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--output", o.output, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "pretty"}));

  using Handler = std::function<Result(const Options&, const ToleranceConfig&)>;
  Handler handler;
  auto matrix_verb = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "Matrix JSON file")->required()->check(CLI::ExistingFile);
    sub->callback([&handler, h] { handler = h; });
    return sub;
  };

  auto simple = [](DualMatrix (*fn)(const DualMatrix&, const ToleranceConfig&)) {
    return [fn](const Options& opt, const ToleranceConfig& tol) {
      return Result{to_json(fn(read_matrix_file(opt.input), tol))};
    };
  };
  auto reported = [](InverseReport (*fn)(const DualMatrix&, const ToleranceConfig&)) {
    return [fn](const Options& opt, const ToleranceConfig& tol) {
      return report_result(fn(read_matrix_file(opt.input), tol));
    };
  };

  matrix_verb("svd", "Dual singular value decomposition", do_svd)
      ->add_flag("--check", o.check, "Append reconstruction and unitarity residuals");
  matrix_verb("hs", "HS block decomposition (square input)", do_hs)
      ->add_flag("--check", o.check, "Append reconstruction and block identity residuals");
  matrix_verb("ndmpi", "New dual Moore-Penrose inverse", simple(&ndmpi_svd));
  matrix_verb("mpdgi", "A_s^+ - A_s^+ A_d A_s^+ eps", simple(&mpdgi));
  matrix_verb("dmpgi", "Dual Moore-Penrose inverse, if it exists", reported(&dmpgi));
  matrix_verb("dggi", "Dual group inverse, if it exists (square input)", reported(&dggi));
  matrix_verb("inv", "Dual inverse (square input, invertible standard part)", do_inv);
  matrix_verb("group-ess", "Group inverse of the essential part (square input)",
              [](const Options& opt, const ToleranceConfig& tol) {
                return report_result(
                    group_inverse_essential(hs_decompose(read_matrix_file(opt.input), tol), tol));
              });
  matrix_verb("check", "Evaluate the six characterization properties", do_check)
      ->add_option("--property", o.property, "Evaluate only this property");

  CLI::App* verify = app.add_subcommand("verify", "Fuzz one theorem with seeded random matrices");
  verify->add_option("theorem", o.theorem,
                     "characterization | herm-suff | normal-suff | normal-equiv | ndep-equiv | ep-normal")
      ->required();
  verify->add_option("--trials", o.trials, "Number of trials")->capture_default_str()->check(CLI::NonNegativeNumber);
  verify->add_option("--size", o.sizes, "Matrix order; repeat to cycle through several")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  verify->add_option("--threads", o.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  verify->callback([&] { handler = do_verify; });

  std::vector<const char*> argv{"dualmat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return kOk;
    return kUsage;
  }

  ToleranceConfig tol;
  tol.eq_abs_tol = o.tol;
  tol.eq_rel_tol = o.tol;
  tol.rank_rel_tol = o.rank_tol;

  Result result;
  try {
    result = handler(o, tol);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (o.output == "pretty") {
    print_pretty(result.body, "", out);
  } else {
    write_json(out, result.body);
  }
  return result.code;
}

}  // namespace dualmat::cli
