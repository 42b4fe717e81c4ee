#include <doctest.h>

#include <fstream>
#include <sstream>

#include "instances.hpp"
#include "trihoch/cli.hpp"

using namespace trihoch;
using namespace trihoch::cli;

namespace {

using Q = Rationals;

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TRIHOCH_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string parse_error(const std::string& text, bool triangular = false) {
  try {
    if (triangular)
      parse_triangular_file(Q{}, text);
    else
      parse_quiver_file(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

JobResult job(const std::string& text, std::vector<Report> reports, Index L = 4, bool tsv = false) {
  JobSpec j;
  j.text = text;
  j.kind = detect_kind(text);
  j.reports = std::move(reports);
  j.max_degree = L;
  j.tsv = tsv;
  return run_job(j);
}

}  // namespace

TEST_CASE("quiver files") {
  auto q = parse_quiver_file("vertex a\nvertex b\narrow x : a -> b");
  CHECK(q.vertices.size() == 2);
  CHECK(q.arrows.size() == 1);

  auto w = parse_quiver_file(read_data("quiver_5_1.txt"));
  CHECK(w.vertices == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(w.arrows.size() == 5);
  CHECK(enumerate_paths(w).size() == 13);

  CHECK(parse_error("arrow x : a -> b") == "unknown vertex a at line 1");
  CHECK(parse_error("vertex a\n# comment\nvertex a") == "duplicate vertex a at line 3");
  CHECK(parse_error("vertex a\nvertex b\narrow x : a -> b\narrow x : b -> a") == "duplicate arrow x at line 4");
  CHECK(parse_error("vertex a\narrow x a -> a").find("line 2") != std::string::npos);
  CHECK(parse_error("vertex a\nedge a").find("unknown keyword") != std::string::npos);
  // colons need no surrounding spaces
  CHECK(parse_quiver_file("vertex a\nvertex b\narrow x: a -> b").arrows.size() == 1);
}

TEST_CASE("triangular files") {
  Q f;
  auto t = parse_triangular_file(f, read_data("k2x2.txt"));
  CHECK(t.n() == 2);
  CHECK(t.total_dim() == 3);

  const std::string no_unit =
      "algebra A1 dim 1\nunit A1 : 1\nmul A1 : 0 0 0 1\nalgebra A2 dim 1\nmul A2 : 0 0 0 1\n";
  CHECK(parse_error(no_unit, true) == "missing unit for A2");
  CHECK(parse_error("algebra A1 dim 1\nunit A1 : 1 0\n", true).find("line 2") != std::string::npos);
  CHECK(parse_error("algebra A1 dim 1\nunit A1 : 1\nmul A1 : 0 0 3 1\n", true) ==
        "basis index 3 out of range for A1 (dim 1) at line 3");
  CHECK(parse_error("algebra A1 dim 1\nunit A1 : 1\nmodule M12 dim 1\n", true).find("not below the diagonal") !=
        std::string::npos);
  CHECK(parse_error("algebra A1 dim 1\nunit A1 : 1\nmul A1 : 0 0 0 1/0\n", true).find("line 3") !=
        std::string::npos);

  // a broken right unit is caught by validation, with the block named
  std::string broken = read_data("k2x2.txt");
  broken.replace(broken.find("ract M21 : 0 0 0 1"), 18, "ract M21 : 0 0 0 2");
  try {
    parse_triangular_file(f, broken);
    FAIL("accepted a broken module");
  } catch (const ValidationError& e) {
    REQUIRE(!e.violations.empty());
    CHECK(e.violations.front().find("M21") != std::string::npos);
  }

  // fractions, and the worked quiver written out by hand
  auto frac = parse_triangular_file(f, "algebra A1 dim 1\nunit A1 : 2/4\nmul A1 : 0 0 0 2\n");
  CHECK(frac.algebra(0).unit == SparseVec<Q>{{0, Q::value_type(1, 2)}});
  auto explicit_t = parse_triangular_file(f, read_data("quiver_5_1_triangular.txt"));
  CHECK(blockwise_equal(explicit_t, inst::path(f, parse_quiver_file(read_data("quiver_5_1.txt")))));
}

TEST_CASE("round trips") {
  Q f;
  auto q = parse_quiver_file(read_data("quiver_5_1.txt"));
  auto q2 = parse_quiver_file(emit_quiver(q));
  CHECK(q2.vertices == q.vertices);
  CHECK(emit_quiver(q2) == emit_quiver(q));

  for (const auto& in : inst::random_suite(f, 21, 12)) {
    CAPTURE(in.name);
    auto back = parse_triangular_file(f, emit_triangular(in.t));
    CHECK(blockwise_equal(back, in.t));
    CHECK(emit_triangular(back) == emit_triangular(in.t));
  }
  PrimeField f5(5);
  for (const auto& in : inst::random_suite(f5, 22, 4)) {
    CAPTURE(in.name);
    CHECK(blockwise_equal(parse_triangular_file(f5, emit_triangular(in.t)), in.t));
  }
}

TEST_CASE("simplicial files and kind detection") {
  auto s = parse_simplicial_file(read_data("tetrahedron.txt"));
  CHECK(s.vertices.size() == 4);
  CHECK(s.dimension() == 2);
  CHECK(detect_kind(read_data("tetrahedron.txt")) == InputKind::simplicial);
  CHECK(detect_kind(read_data("kronecker.txt")) == InputKind::quiver);
  CHECK(detect_kind(read_data("k2x2.txt")) == InputKind::triangular);
  CHECK_THROWS_AS(detect_kind("# nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_simplicial_file("facet a a\n"), ParseError);
}

TEST_CASE("flags") {
  CHECK(parse_field("rat").prime == 0);
  CHECK(parse_field("fp:7").prime == 7);
  CHECK_THROWS(parse_field("fp:8"));
  CHECK_THROWS(parse_field("fp:"));
  CHECK_THROWS(parse_field("real"));
  CHECK(parse_reports("hochschild, pages,hochschild") == std::vector<Report>{Report::hochschild, Report::pages});
  CHECK_THROWS(parse_reports("hochschild,spectra"));
  CHECK_THROWS(parse_reports(""));
}

TEST_CASE("jobs") {
  auto r = job(read_data("quiver_5_1.txt"), {Report::hochschild});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out.find("HH: 1 6 0 0\n") != std::string::npos);

  r = job("vertex a\n", {Report::hochschild});
  CHECK(r.out.find("HH: 1 0 0 0\n") != std::string::npos);

  r = job(read_data("kronecker.txt"), {Report::hochschild, Report::oracle_check}, 3);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out.find("HH: 1 3 0\n") != std::string::npos);
  CHECK(r.out.find("bar complex, degrees 0..2: 1 3 0  (agrees)") != std::string::npos);

  r = job(read_data("quiver_5_1.txt"), {Report::pages});
  CHECK(r.out.find("E_2 = E_inf") != std::string::npos);
  CHECK(r.out.find("    0     1     6     0") != std::string::npos);

  r = job(read_data("triangle.txt"), {Report::oracle_check}, 3);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out.find("simplicial cohomology: 1 1 0  (agrees)") != std::string::npos);

  r = job(read_data("quiver_5_1.txt"), {Report::degeneration_check, Report::e1_structure});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out.find("d_2 = 0 on every reliable cell") != std::string::npos);
}

TEST_CASE("job errors") {
  auto r = job("vertex a\narrow x : a -> b\n", {Report::hochschild});
  CHECK(r.exit_code == kExitInput);
  CHECK(r.out.empty());
  CHECK(r.err.find("unknown vertex b at line 2") != std::string::npos);

  r = job("vertex a\nvertex b\narrow x : a -> b\narrow y : b -> a\n", {Report::hochschild});
  CHECK(r.exit_code == kExitInput);
  CHECK(r.out.empty());

  JobSpec j;
  j.text = "vertex a\n";
  j.max_degree = 0;
  CHECK(run_job(j).exit_code == kExitInput);
  j.max_degree = 2;
  j.field.prime = 9;
  CHECK(run_job(j).exit_code == kExitInput);
}

TEST_CASE("tsv output") {
  const auto text = read_data("quiver_5_1.txt");
  auto a = job(text, {Report::pages, Report::hochschild}, 4, true);
  auto b = job(text, {Report::pages, Report::hochschild}, 4, true);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("report\tr\tp\tq\tvalue\n", 0) == 0);
  CHECK(a.out.find("pages\t1\t1\t0\t17\n") != std::string::npos);
  CHECK(a.out.find("pages\t2\t2\t3\t?\n") != std::string::npos);
  CHECK(a.out.find("hochschild\t-\t-\t1\t6\n") != std::string::npos);
  // every line has five fields
  std::istringstream in(a.out);
  for (std::string line; std::getline(in, line);) CHECK(std::count(line.begin(), line.end(), '\t') == 4);

  JobSpec j;
  j.text = text;
  j.field.prime = 7;
  j.reports = {Report::hochschild};
  j.tsv = true;
  CHECK(run_job(j).out.find("hochschild\t-\t-\t1\t6\n") != std::string::npos);
}
