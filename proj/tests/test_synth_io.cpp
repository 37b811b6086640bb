#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "tensorank/rank_analysis.hpp"
#include "tensorank/synth_io.hpp"

using namespace tensorank;

namespace {

std::string temp_path(const std::string& name) {
  return "/tmp/tensorank_test_" + name;
}

double eval_text(const std::string& text, const std::vector<double>& vars = {}) {
  return parse_expression(text)->eval(vars);
}

}  // namespace

TEST_CASE("random_cp is deterministic and rank-bounded") {
  const DenseTensor a = random_cp(4, 2, 3, 42);
  const DenseTensor b = random_cp(4, 2, 3, 42);
  for (std::int64_t i = 0; i < a.size(); ++i) CHECK(a.data[i] == b.data[i]);
  const auto prof = rank_profile(a);
  for (int m = 1; m <= 2; ++m) CHECK(prof.max_rank(m) <= 3);

  const DenseTensor one = random_cp(5, 3, 1, 7);
  const auto p1 = rank_profile(one);
  for (int m = 1; m <= 2; ++m) CHECK(p1.max_rank(m) == 1);
}

TEST_CASE("expression evaluation and precedence") {
  CHECK(eval_text("1+2*3") == doctest::Approx(7.0));
  CHECK(eval_text("2-3-4") == doctest::Approx(-5.0));
  CHECK(eval_text("12/3/2") == doctest::Approx(2.0));
  CHECK(eval_text("2^3^2") == doctest::Approx(512.0));   // right-associative
  CHECK(eval_text("-2^2") == doctest::Approx(-4.0));     // ^ binds above unary minus
  CHECK(eval_text("2^-1") == doctest::Approx(0.5));
  CHECK(eval_text("(1+2)*3") == doctest::Approx(9.0));
  CHECK(eval_text("--3") == doctest::Approx(3.0));
  CHECK(eval_text("sin(0)") == doctest::Approx(0.0).scale(1.0));
  CHECK(eval_text("cos(0)+exp(0)") == doctest::Approx(2.0));
  CHECK(eval_text("sqrt(abs(-9))") == doctest::Approx(3.0));
  CHECK(eval_text("x2 - x1", {1.0, 4.5}) == doctest::Approx(3.5));
  CHECK(eval_text(" 1.5e2 ") == doctest::Approx(150.0));
}

TEST_CASE("parse errors carry positions") {
  auto expect_error_at = [](const std::string& text, std::size_t pos) {
    try {
      parse_expression(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.position() == pos);
    }
  };
  expect_error_at("1+", 2);
  expect_error_at("(1+2", 4);
  expect_error_at("1+2)", 3);
  expect_error_at("foo(1)", 0);
  expect_error_at("sin 1", 4);
  CHECK_THROWS_AS(parse_expression("x0"), ParseError);
}

TEST_CASE("unparse round trip reparses to an identical tree") {
  const std::vector<std::string> corpus = {
      "1", "x1", "-x1", "1+2", "1-2", "2*3", "6/2", "2^3", "2^-3",
      "x1+x2", "x1*x2", "x1-x2*x3", "(x1+x2)*x3", "x1/x2/x3",
      "sin(x1)", "cos(x1+x2)", "exp(-x1)", "sqrt(x1)", "abs(x1-x2)",
      "sin(x1)*cos(x2)+exp(x3)", "x1^2+x2^2", "1.5*x1-2.25",
      "-(x1+x2)", "x1^x2^x3", "2*x1+3*x2-4*x3", "sin(cos(x1))",
      "x1*x2*x3*x4", "abs(-x1)", "(x1-x2)/(x1+x2+3)", "sqrt(x1^2+1)"};
  for (const auto& text : corpus) {
    const auto a = parse_expression(text);
    const auto b = parse_expression(unparse(*a));
    CHECK_MESSAGE(a->equals(*b), "round trip failed for: " << text);
  }
}

TEST_CASE("sample_grid hits the documented corners") {
  const auto e = parse_expression("x1*x2");
  const DenseTensor t = sample_grid(*e, 2, 2, {{0.0, 1.0}});
  REQUIRE(t.dims == std::vector<std::int64_t>({2, 2}));
  CHECK(t.at({0, 0}) == 0.0);
  CHECK(t.at({0, 1}) == 0.0);
  CHECK(t.at({1, 0}) == 0.0);
  CHECK(t.at({1, 1}) == 1.0);
}

TEST_CASE("separable products sample to rank-1 tensors") {
  for (const std::string text :
       {"x1*x2*x3", "sin(x1)*cos(x2)*exp(x3)", "(2*x1)*(x2+1)*(x3^2+0.5)"}) {
    const auto e = parse_expression(text);
    const DenseTensor t = sample_grid(*e, 3, 5, {{0.1, 1.0}});
    const auto prof = rank_profile(t);
    CHECK(prof.max_rank(1) == 1);
  }
}

TEST_CASE("sine addition splits into exactly two products") {
  const auto e = parse_expression("sin(x1+x2)");
  const DenseTensor t = sample_grid(*e, 2, 8, {{0.0, 1.0}});
  CHECK(matricization_rank(t, ModeBipartition(1, 2)) == 2);
}

TEST_CASE("sum of variables has every bipartition at rank 2") {
  const auto e = parse_expression("x1+x2+x3+x4");
  const DenseTensor t = sample_grid(*e, 4, 4, {{0.0, 1.0}});
  const auto prof = rank_profile(t);
  for (int m = 1; m <= 2; ++m) {
    CHECK(prof.max_rank(m) == 2);
    CHECK(prof.min_rank(m) == 2);
  }
}

TEST_CASE("sample_grid rejects bad inputs") {
  const auto e = parse_expression("x1/x2");
  CHECK_THROWS_AS(sample_grid(*e, 2, 4, {{0.0, 1.0}}), DomainError);  // div by 0 at node 0
  CHECK_THROWS_AS(sample_grid(*parse_expression("x3"), 2, 4, {{0.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(sample_grid(*e, 2, 1, {{0.0, 1.0}}), DomainError);
}

TEST_CASE("tensor file round trip is bit-faithful") {
  const std::string path = temp_path("roundtrip.tns");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DenseTensor t = random_cp(4, 2, 3, seed);
    write_tensor(path, t);
    const DenseTensor back = read_tensor(path);
    REQUIRE(back.dims == t.dims);
    for (std::int64_t i = 0; i < t.size(); ++i) CHECK(back.data[i] == t.data[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("tensor file rejects malformed content") {
  const std::string path = temp_path("bad.tns");
  auto write_text = [&](const std::string& s) {
    std::ofstream f(path);
    f << s;
  };
  write_text("tns v1 2 2 2\n1 2 3\n");  // three values, four declared
  CHECK_THROWS_AS(read_tensor(path), IoError);
  write_text("tns v1 2 2 2\n1 2 3 4 5\n");  // one too many
  CHECK_THROWS_AS(read_tensor(path), IoError);
  write_text("tns v2 2 2 2\n1 2 3 4\n");
  CHECK_THROWS_AS(read_tensor(path), IoError);
  write_text("bogus\n");
  CHECK_THROWS_AS(read_tensor(path), IoError);
  CHECK_THROWS_AS(read_tensor(temp_path("missing.tns")), IoError);
  std::remove(path.c_str());
}

TEST_CASE("report json carries a schema version and stable fields") {
  const std::string path = temp_path("report.json");
  const DenseTensor t = random_cp(4, 2, 2, 11);
  write_report_json(path, to_json(rank_profile(t)));
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j["schema_version"] == kReportSchemaVersion);
  REQUIRE(j.contains("by_m"));
  CHECK(j["by_m"].size() == 2);
  CHECK(j["by_m"][0]["max_rank"] == 2);
  std::remove(path.c_str());
}
