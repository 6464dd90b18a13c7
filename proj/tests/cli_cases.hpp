#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

#ifndef DUALMAT_FIXTURE_DIR
#error "DUALMAT_FIXTURE_DIR must be defined"
#endif
#ifndef DUALMAT_GOLDEN_DIR
#error "DUALMAT_GOLDEN_DIR must be defined"
#endif

namespace dualmat::test {

struct CliCase {
  std::string golden;             // file name under the golden directory
  std::vector<std::string> args;  // "@name" expands to the fixture path
  int exit_code;
};

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"diag_family", "nilpotent", "complex3"};
  return names;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(DUALMAT_FIXTURE_DIR) + "/" + name + ".json";
}

// Expected exit codes follow from the fixtures:
//   diag_family = diag(1,0) + diag(0,1) eps has A_n != 0 and a singular A_s;
//   nilpotent   = [[0,1],[0,0]] has no group inverse and A_n = 0;
//   complex3    has an invertible standard part.
inline std::vector<CliCase> cli_cases() {
  struct VerbCodes {
    std::vector<std::string> verb;
    int diag_family, nilpotent, complex3;
  };
  const std::vector<VerbCodes> verbs{
      {{"svd", "--check"}, 0, 0, 0}, {{"hs", "--check"}, 0, 0, 0}, {{"ndmpi"}, 0, 0, 0},
      {{"mpdgi"}, 0, 0, 0},          {{"dmpgi"}, 1, 0, 0},         {{"dggi"}, 1, 1, 0},
      {{"inv"}, 1, 1, 0},            {{"group-ess"}, 0, 1, 0},     {{"check"}, 0, 0, 0},
  };
  std::vector<CliCase> cases;
  for (const auto& v : verbs) {
    const int codes[] = {v.diag_family, v.nilpotent, v.complex3};
    for (std::size_t f = 0; f < 3; ++f) {
      CliCase c{v.verb[0] + "_" + fixture_names()[f] + ".json", v.verb, codes[f]};
      c.args.push_back("@" + fixture_names()[f]);
      cases.push_back(std::move(c));
    }
  }
  cases.push_back({"verify_characterization.json",
                   {"verify", "characterization", "--trials", "24", "--size", "3", "--seed", "7"},
                   0});
  cases.push_back({"verify_ndep-equiv.json",
                   {"verify", "ndep-equiv", "--trials", "24", "--size", "4", "--seed", "7"},
                   0});
  cases.push_back({"verify_normal-suff.json",
                   {"verify", "normal-suff", "--trials", "24", "--size", "2", "--size", "4",
                    "--seed", "11", "--threads", "3"},
                   0});
  cases.push_back({"pretty_ndmpi_complex3.txt", {"--output", "pretty", "ndmpi", "@complex3"}, 0});
  cases.push_back({"pretty_check_nilpotent.txt", {"--output", "pretty", "check", "@nilpotent"}, 0});
  cases.push_back({"pretty_dmpgi_diag_family.txt",
                   {"--output", "pretty", "dmpgi", "@diag_family"},
                   1});
  return cases;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

inline CliRun run_cli(std::vector<std::string> args) {
  for (auto& a : args) {
    if (!a.empty() && a[0] == '@') a = fixture_path(a.substr(1));
  }
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::string golden_path(const CliCase& c) {
  return std::string(DUALMAT_GOLDEN_DIR) + "/" + c.golden;
}

inline bool update_goldens() {
  const char* v = std::getenv("DUALMAT_UPDATE_GOLDEN");
  return v != nullptr && std::string(v) == "1";
}

/// Runs the case twice; empty result means the output is byte-identical to the
/// golden file on both runs and the exit code matches.
inline std::string check_cli_case(const CliCase& c) {
  const CliRun first = run_cli(c.args);
  const CliRun second = run_cli(c.args);
  if (first.code != c.exit_code) {
    return "exit code " + std::to_string(first.code) + ", expected " +
           std::to_string(c.exit_code) + " (" + first.err + ")";
  }
  if (first.out != second.out || first.code != second.code) return "output differs between runs";
  if (update_goldens()) {
    std::ofstream(golden_path(c), std::ios::binary) << first.out;
    return {};
  }
  std::ifstream in(golden_path(c), std::ios::binary);
  if (!in) return "missing golden " + golden_path(c);
  std::ostringstream expected;
  expected << in.rdbuf();
  if (expected.str() != first.out) return "output differs from " + golden_path(c);
  return {};
}

}  // namespace dualmat::test
