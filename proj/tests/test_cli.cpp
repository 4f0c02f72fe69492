#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "iforms/cli.hpp"

using namespace iforms;
namespace fs = std::filesystem;

namespace {

struct RunCapture {
  int code = 0;
  std::string out, err;
};

RunCapture run(std::initializer_list<std::string> args) {
  std::ostringstream out, err;
  RunCapture r;
  r.code = cli::run(std::vector<std::string>(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents, const char* ext = ".form") {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("iforms_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ext);
    std::ofstream f(path_, std::ios::binary);
    f << contents;
  }
  ~TempFile() { std::error_code ec; fs::remove(path_, ec); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string demo_file(const char* name) {
  return std::string(IFORMS_SOURCE_DIR) + "/demos/" + name;
}

jsonio::Json parse_report(const std::string& text) { return jsonio::Json::parse(text); }

} // namespace

TEST_CASE("demo subcommand runs every paper fixture cleanly", "[cli]") {
  for (const char* name : {"paper-4.1", "paper-4.2", "paper-4.3", "steiner-conic"}) {
    auto r = run({"demo", name});
    INFO(name << "\n" << r.out << r.err);
    CHECK(r.code == 0);
  }
  auto r = run({"demo", "paper-4.3", "--n", "3", "--json"});
  CHECK(r.code == 0);
  const auto report = parse_report(r.out);
  bool contained = false;
  for (const auto& e : report.at("results"))
    if (e.contains("contained")) contained = e.at("contained").get<bool>();
  CHECK(contained);
}

TEST_CASE("unknown inputs exit with code 2", "[cli]") {
  CHECK(run({}).code == 2); // a subcommand is required
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check", "--input", "/nonexistent/path.form"}).code == 2);
  CHECK(run({"demo", "no-such-demo"}).code == 2);
  CHECK(run({"demo", "paper-4.3", "--n", "12"}).code == 2); // n out of 2..8
  CHECK(run({"stats", "--n", "2", "--d", "1"}).code == 2);  // n < 3
  CHECK(run({"stats", "--n", "3"}).code == 2);              // missing --d
  TempFile broken("w = d(x0) + ;");
  const auto r = run({"check", "--input", broken.path()});
  CHECK(r.code == 2);
  CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("check subcommand verdicts drive the exit code", "[cli]") {
  const auto ok = run({"check", "--input", demo_file("sl2_point.form")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("integrable") != std::string::npos);

  TempFile failing("ambient 3;\ncheck(x2*d(x0) + d(x1));\n");
  CHECK(run({"check", "--input", failing.path()}).code == 1);

  // The same verdict marked as expected exits 0.
  TempFile expected("ambient 3;\ncheck(x2*d(x0) + d(x1)) expect false;\n");
  CHECK(run({"check", "--input", expected.path()}).code == 0);

  // A file without check queries is an input error for this subcommand.
  TempFile rankonly("ambient 2;\nW = space(d(x0), d(x1));\nrank(W);\n");
  CHECK(run({"check", "--input", rankonly.path()}).code == 2);
  CHECK(run({"rank", "--input", rankonly.path()}).code == 0);
}

TEST_CASE("veronese-web subcommand", "[cli]") {
  const auto r = run({"veronese-web", "--input", demo_file("rnc_family_n2.form"), "--json"});
  CHECK(r.code == 0);
  const auto report = parse_report(r.out);
  REQUIRE(report.at("results").size() == 1);
  const auto& entry = report.at("results")[0];
  CHECK(entry.at("contained").get<bool>());
  CHECK(entry.at("is_rnc").get<bool>());
  CHECK(entry.at("curve").at("degree").get<int>() == 2);
}

TEST_CASE("veronese-web runtime precondition violations exit 1", "[cli]") {
  // Swap a non-integrable member into the degree-2 family: the query runs on
  // well-typed data and reports the violated preconditions.
  TempFile fixture(
      "ambient 3;\n"
      "u = x0 + x1 + x2;\n"
      "w0 = d(x0);\n"
      "w1 = (2 + u)*d(x1);\n"
      "w2 = (3 + 2*u)*d(x2);\n"
      "W = space(w0, w1, w2);\n"
      "wsum = w0 + w1 + w2;\n"
      "wbad = w0 + 2*w1 + 3*w2;\n"
      "veronese_web(W, w0, w1, w2, wsum, wbad);\n");
  const auto r = run({"veronese-web", "--input", fixture.path(), "--json"});
  CHECK(r.code == 1);
  const auto report = parse_report(r.out);
  const auto& entry = report.at("results")[0];
  REQUIRE(entry.contains("violations"));
  bool mentions = false;
  for (const auto& v : entry.at("violations"))
    mentions = mentions || v.get<std::string>().find("not integrable") != std::string::npos;
  CHECK(mentions);
}

TEST_CASE("lie subcommand runs scenario files too", "[cli]") {
  CHECK(run({"lie", "--input", demo_file("sl2.form")}).code == 0);
}

TEST_CASE("quadrics subcommand emits the documented schema", "[cli]") {
  const auto r = run({"quadrics", "--input", demo_file("sl2.form"), "--json"});
  CHECK(r.code == 0);
  const auto report = parse_report(r.out);
  const auto& sys = report.at("results")[0].at("system");
  CHECK(sys.at("dim").get<int>() == 3);
  REQUIRE(sys.at("quadrics").size() == 1);
  const auto& q = sys.at("quadrics")[0];
  CHECK(q.at("label").at("form_indices") == jsonio::Json::array({0, 1, 2}));
  CHECK(q.at("label").at("monomial") == jsonio::Json::array());
  // The sl(2) conic 2xz - y^2.
  const jsonio::Json expected = {{"0", "0", "1"}, {"0", "-1", "0"}, {"1", "0", "0"}};
  CHECK(q.at("matrix") == expected);
}

TEST_CASE("quadric labels carry coefficient monomials for polynomial spaces", "[cli]") {
  TempFile fixture(
      "ambient 3;\n"
      "u = x0 + x1 + x2;\n"
      "W = space(d(x0), (2 + u)*d(x1), (3 + 2*u)*d(x2));\n"
      "quadrics(W);\n");
  const auto r = run({"quadrics", "--input", fixture.path(), "--json"});
  REQUIRE(r.code == 0);
  const auto report = parse_report(r.out);
  const auto& sys = report.at("results")[0].at("system");
  CHECK(sys.at("dim").get<int>() == 3);
  REQUIRE(sys.at("quadrics").size() > 0);
  for (const auto& q : sys.at("quadrics")) {
    CHECK(q.at("label").at("form_indices").size() == 3);
    CHECK(q.at("label").at("monomial").size() == 3); // one exponent per x variable
    CHECK(q.at("matrix").size() == 3);
  }
}

TEST_CASE("lie subcommand accepts raw structure constants as JSON", "[cli]") {
  TempFile json_fixture(R"({
    "dim": 3,
    "brackets": [
      {"i": 1, "j": 2, "coeffs": ["-1", 0, 0]},
      {"i": 1, "j": 3, "coeffs": [0, "-1", 0]},
      {"i": 2, "j": 3, "coeffs": [0, 0, "-1"]}
    ]
  })", ".json");
  const auto r = run({"lie", "--input", json_fixture.path(), "--json"});
  CHECK(r.code == 0);
  const auto report = parse_report(r.out);
  REQUIRE(report.at("results").size() == 2);
  CHECK(report.at("results")[0].at("jacobi").get<bool>());
  CHECK(report.at("results")[1].at("system").at("quadrics").size() == 1);

  TempFile bad_json("{ \"dim\": ", ".json");
  CHECK(run({"lie", "--input", bad_json.path()}).code == 2);
}

TEST_CASE("gv and steiner subcommands", "[cli]") {
  CHECK(run({"gv", "--input", demo_file("godbillon_vey.form")}).code == 0);
  CHECK(run({"steiner", "--input", demo_file("steiner_conic.form")}).code == 0);
  // Degenerate points are rejected while the binding is built: input error.
  TempFile collinear(
      "P = points([1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 1, 1]);\nsteiner(P);\n");
  CHECK(run({"steiner", "--input", collinear.path()}).code == 2);
}

TEST_CASE("json reports are byte-identical across runs", "[cli]") {
  auto strip_timing = [](const std::string& text) {
    auto j = parse_report(text);
    j.erase("timing_ms");
    return j.dump(2);
  };
  const auto a = run({"demo", "paper-4.3", "--n", "3", "--json"});
  const auto b = run({"demo", "paper-4.3", "--n", "3", "--json"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(strip_timing(a.out) == strip_timing(b.out));
  // and the result body is identical as raw text
  const auto ja = parse_report(a.out), jb = parse_report(b.out);
  CHECK(ja.at("results").dump() == jb.at("results").dump());
  CHECK(ja.at("input_digest") == jb.at("input_digest"));
}

TEST_CASE("report can be written to a file", "[cli]") {
  const std::string path =
      (fs::temp_directory_path() / ("iforms_out_" + std::to_string(::getpid()) + ".json"))
          .string();
  const auto r = run({"demo", "paper-4.1", "--json", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(parse_report(buf.str()).at("subcommand") == "demo");
  std::error_code ec;
  fs::remove(path, ec);
}

TEST_CASE("stats subcommand", "[cli]") {
  const auto r = run({"stats", "--n", "3", "--d", "2", "--json"});
  CHECK(r.code == 0);
  const auto report = parse_report(r.out);
  CHECK(report.at("results")[0].at("codimension") == "28");
  CHECK(report.at("results")[0].at("degree") == "1430");
}

TEST_CASE("builtin fixtures match the shipped demo files", "[cli]") {
  auto file_contents = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
  };
  CHECK(file_contents(demo_file("sl2.form")) == demos::sl2());
  CHECK(file_contents(demo_file("godbillon_vey.form")) == demos::godbillon_vey());
  CHECK(file_contents(demo_file("rnc_family_n2.form")) == demos::rnc_family(2));
  CHECK(file_contents(demo_file("steiner_conic.form")) == demos::steiner_conic());
  CHECK(file_contents(demo_file("sl2_point.form")) == demos::sl2_point());
}

TEST_CASE("help and version", "[cli]") {
  CHECK(run({"--help"}).code == 0);
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(version_string) != std::string::npos);
}
