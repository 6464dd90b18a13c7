#include <gtest/gtest.h>

#include <sstream>

#include "dualmat/io.hpp"
#include "test_util.hpp"

using namespace dualmat;
using dualmat::test::dmat;
using dualmat::test::near;

namespace {

std::string parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_matrix(in);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

std::string dump(const Json& j) {
  std::ostringstream out;
  write_json(out, j);
  return out.str();
}

}  // namespace

TEST(Io, ParsesMatrix) {
  std::istringstream in(R"({"rows": 1, "cols": 2,
    "standard": [[[1, 0], [0, -2]]], "dual": [[[0.5, 0], [0, 0]]]})");
  const DualMatrix a = read_matrix(in);
  EXPECT_TRUE(near(a, dmat({{1, Complex(0, -2)}}, {{0.5, 0}}), 0.0));
}

TEST(Io, ErrorsNameTheField) {
  EXPECT_NE(parse_error("[1, 2]").find("'<root>'"), std::string::npos);
  EXPECT_NE(parse_error(R"({"cols": 1})").find("'rows'"), std::string::npos);
  EXPECT_NE(parse_error(R"({"rows": -1, "cols": 1})").find("'rows'"), std::string::npos);
  const std::string bad_entry = parse_error(
      R"({"rows": 1, "cols": 2, "standard": [[[1, 0], [0]]], "dual": [[[0, 0], [0, 0]]]})");
  EXPECT_NE(bad_entry.find("'standard[0][1]'"), std::string::npos) << bad_entry;
  const std::string short_row = parse_error(
      R"({"rows": 1, "cols": 2, "standard": [[[1, 0], [0, 0]]], "dual": [[[0, 0]]]})");
  EXPECT_NE(short_row.find("'dual[0]'"), std::string::npos) << short_row;
  EXPECT_NE(parse_error(R"({"rows": 1, "cols": 1, "standard": [[[1, 0]]]})").find("'dual'"),
            std::string::npos);
  EXPECT_NE(parse_error("{not json").find("JSON"), std::string::npos);
}

TEST(Io, RoundTrip) {
  const DualMatrix a = dmat({{1, Complex(0.25, -3)}, {0, 2}}, {{Complex(0, 1), 0}, {-1, 0.125}});
  std::istringstream in(dump(to_json(a)));
  EXPECT_TRUE(near(read_matrix(in), a, 0.0));
}

TEST(Io, StableNumber) {
  EXPECT_EQ(stable_number(1e-14), 0.0);
  EXPECT_EQ(stable_number(-1e-14), 0.0);
  EXPECT_FALSE(std::signbit(stable_number(-0.0)));
  EXPECT_EQ(stable_number(0.1 + 0.2), 0.3);
  EXPECT_EQ(stable_number(1.0 - 1e-15), 1.0);
  EXPECT_EQ(stable_number(2.5), 2.5);
  EXPECT_EQ(stable_number(1e-6), 1e-6);
}

TEST(Io, WriteJsonLayout) {
  Json j;
  j["a"] = Json::array({1, 2});
  j["b"] = {{"c", true}};
  j["d"] = Json::array();
  j["e"] = Json::array({Json::array({1, 2}), Json::array({3, 4})});
  EXPECT_EQ(dump(j),
            "{\n  \"a\": [1, 2],\n  \"b\": {\n    \"c\": true\n  },\n  \"d\": [],\n"
            "  \"e\": [\n    [1, 2],\n    [3, 4]\n  ]\n}\n");
}

TEST(Io, InverseReportJson) {
  const InverseReport r = dmpgi(dmat({{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}));
  const Json j = to_json(r);
  EXPECT_FALSE(j["exists"].get<bool>());
  EXPECT_TRUE(j["value"].is_null());
  EXPECT_FALSE(j["residuals"]["AXA=A"]["ok"].get<bool>());
  EXPECT_EQ(j["residuals"]["AXA=A"]["dual"].get<double>(), 1.0);
}
