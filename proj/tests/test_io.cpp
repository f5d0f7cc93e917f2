#include "arslie/config.hpp"
#include "arslie/errors.hpp"
#include "arslie/output.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace arslie;

namespace {

const char* kHeis = R"([problem]
group = heisenberg
derivation = 0 0 0  1 0 0  0 0 0
delta = 1 0 0, 0 0 1

[geodesic]
point = 0 2 0
T = 1.5
)";

std::string with_problem(const std::string& body) { return "[problem]\n" + body; }

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("a well-formed problem parses") {
    const Config c = Config::parse(kHeis);
    CHECK(c.has("geodesic", "T"));
    CHECK_FALSE(c.has("geodesic", "step"));
    CHECK(c.number("geodesic", "T") == 1.5);
    CHECK(c.number("geodesic", "step", 1e-3) == 1e-3);
    CHECK(c.vector("geodesic", "point", 3)(1) == 2.0);
    const ProblemConfig p = read_problem(c);
    CHECK(p.group == "heisenberg");
    CHECK(p.derivation(1, 0) == 1.0);
    CHECK(p.derivation(0, 1) == 0.0);
    CHECK(p.delta.size() == 2);
    const SimpleArs a = build_problem(p);
    CHECK(a.dim() == 3);
  }

  TEST_CASE("inner derivations") {
    const ProblemConfig p = read_problem(Config::parse(with_problem("group = aff2\ninner = 0 1\ndelta = 1 0\n")));
    CHECK(p.derivation(1, 0) == 1.0);  // -ad(Y) X = [X, Y] = Y
    CHECK(p.derivation.col(1).isZero());
  }

  TEST_CASE("malformed inputs are validation errors") {
    const std::vector<std::string> bad{
        "group = so3\ninner = 0 0 1\ndelta = 1 0 0, 0 1 0\n",
        "group = heisenberg\ndelta = 1 0 0, 0 1 0\n",
        "group = heisenberg\ninner = 0 0 1\nderivation = 0 0 0 0 0 0 0 0 0\ndelta = 1 0 0, 0 1 0\n",
        "group = heisenberg\nderivation = 1 2 3\ndelta = 1 0 0, 0 1 0\n",
        "group = heisenberg\nderivation = 0 0 0 1 0 0 0 0 x\ndelta = 1 0 0, 0 1 0\n",
        "group = heisenberg\nderivation = 0 0 0 1 0 0 0 0 0\ndelta = 1 0 0\n",
        "group = heisenberg\nderivation = 0 0 0 1 0 0 0 0 0\ndelta = 1 0, 0 1 0\n",
        "group = euclidean\ndim = 1\nderivation = 0\ndelta = 1\n",
        "group = euclidean\ndim = 2.5\nderivation = 0 0 1 0\ndelta = 1 0\n",
        "group = heisenberg\nderivation = 0 0 0 1 0 0 0 0 inf\ndelta = 1 0 0, 0 1 0\n",
    };
    for (const auto& body : bad) {
      CAPTURE(body);
      CHECK_THROWS_AS(read_problem(Config::parse(with_problem(body))), ValidationError);
    }
    CHECK_THROWS_AS(Config::parse("key = 1\n[s]\nx = 2\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse("[s]\nx = 1\nx = 2\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse("[s\nx = 1\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse("[s]\n").text("s", "x"), ValidationError);
    // Well-formed syntax but a structure violating the rank condition.
    CHECK_THROWS_AS(build_problem(read_problem(Config::parse(
                        with_problem("group = euclidean\ndim = 2\nderivation = 0 0 0 0\ndelta = 1 0\n")))),
                    ValidationError);
  }

  TEST_CASE("missing files are i/o errors") {
    CHECK_THROWS_AS(Config::load("/nonexistent/arslie.ini"), IoError);
  }
}

TEST_SUITE("output") {
  TEST_CASE("numbers round-trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  }

  TEST_CASE("csv layout") {
    CsvTable t({"t", "x"});
    t.add_row({0.0, 1.5});
    t.add_row({0.1, -2.0});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "t,x\n0,1.5\n0.10000000000000001,-2\n");
    CHECK(t.str() == t.str());
    CHECK_THROWS_AS(t.add_row({1.0}), InvariantViolation);
  }

  TEST_CASE("svg skips non-finite points and is well-formed") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::string svg = render_svg({{{0, 0}, {1, 1}, {nan, 2}}, {{0.5, 0.2}, {0.7, 0.9}}}, "x", "y", "test");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(render_svg({}, "x", "y", "empty").find("</svg>") != std::string::npos);
  }

  TEST_CASE("write_file creates directories and reports failures") {
    const auto dir = std::filesystem::temp_directory_path() / "arslie_io_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_file((dir / "a.csv").string(), "x\n1\n");
    std::ifstream in(dir / "a.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "x");
    std::filesystem::remove_all(dir.parent_path());
    CHECK_THROWS_AS(write_file("/proc/arslie/denied.csv", "x"), IoError);
  }
}
