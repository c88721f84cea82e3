#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/oracle.hpp"
#include "support/util.hpp"
#include "zplie/io.hpp"

using namespace zplie;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("zplie_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

json load(const fs::path& p) { return json::parse(io::read_file(p)); }

std::string write_family(const fs::path& dir, const Algebra& alg, const MapFamily& f) {
  const fs::path p = dir / "input.json";
  io::write_file(p, io::family_to_json(alg, f));
  return p.string();
}

LinMap transpose_map() {
  return testutil::map_of(oracle::Layout{{2}}, [](const oracle::Mat& a) {
    oracle::Mat t = oracle::zeros(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) t[i][j] = a[j][i];
    return t;
  });
}

LinMap trace_times_identity() {
  return testutil::map_of(oracle::Layout{{2}}, [](const oracle::Mat& a) {
    return oracle::scale(a[0][0] + a[1][1], oracle::identity(2));
  });
}

}  // namespace

TEST_CASE("solve on M_2 at xi = 1/2") {
  const fs::path dir = scratch("solve");
  const Run r = run({"solve", "--algebra", "matrix:2", "--xi", "1/2", "--levels", "1", "--out", dir.string()});
  CHECK(r.code == cli::kOk);
  const json rep = load(dir / "report.json");
  CHECK(rep["levels"][0]["dimension"] == 3);
  CHECK(rep["span"]["dim"] == 12);
  CHECK(rep["config"]["seed"] == 0);
  CHECK(rep["config"]["xi"] == "1/2");
  CHECK(rep["exit_code"] == 0);
  CHECK_FALSE(rep.contains("elapsed_ms"));
  const Algebra m2 = build_matrix_algebra(2);
  const SolutionSpace s = io::solution_space_from_json(io::read_file(dir / "level_1.json"), m2);
  CHECK(s.dimension() == 3);
  CHECK(io::solution_space_to_json(s) == io::read_file(dir / "level_1.json"));
  const MapFamily f = io::family_from_json(io::read_file(dir / "family.json"), m2);
  CHECK(is_higher_derivation(m2, f));
}

TEST_CASE("solve on M_1 is vacuous") {
  const fs::path dir = scratch("solve1");
  const Run r = run({"solve", "--algebra", "matrix:1", "--xi", "1", "--levels", "2", "--out", dir.string()});
  CHECK(r.code == cli::kOk);
  const json rep = load(dir / "report.json");
  REQUIRE(rep["levels"].size() == 2);
  for (const auto& l : rep["levels"]) CHECK(l["dimension"] == 1);
}

TEST_CASE("solve is deterministic") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    const Run r = run({"solve", "--algebra", "blocks:2,2", "--xi", "0", "--levels", "1", "--seed", "42", "--out", dir.string()});
    CHECK(r.code == cli::kOk);
  }
  for (const char* f : {"report.json", "level_1.json", "family.json"}) CHECK(io::read_file(a / f) == io::read_file(b / f));
}

TEST_CASE("timing is opt-in") {
  const fs::path dir = scratch("timing");
  run({"solve", "--algebra", "matrix:2", "--xi", "2", "--out", dir.string(), "--timing"});
  CHECK(load(dir / "report.json").contains("elapsed_ms"));
}

TEST_CASE("verify: inner family, transpose and trace") {
  const Algebra m2 = build_matrix_algebra(2);
  const fs::path dir = scratch("verify");
  CHECK(run({"inner", "--algebra", "matrix:2", "--levels", "3", "--seed", "4", "--out", dir.string()}).code == 0);
  Run r = run({"verify", "--algebra", "matrix:2", "--family", (dir / "family.json").string(), "--out", dir.string()});
  CHECK(r.code == cli::kOk);
  const json inner_report = load(dir / "report.json");
  for (const auto& c : inner_report["checks"]) CHECK(c["pass"] == true);

  const std::string tr = write_family(dir, m2, MapFamily::from_higher_levels(4, {transpose_map()}));
  r = run({"verify", "--algebra", "matrix:2", "--family", tr, "--out", dir.string()});
  CHECK(r.code == cli::kVerificationFailed);
  CHECK(r.out.find("FAIL lie_higher_derivation level 1: level 1, basis pair (E_11, E_12)") != std::string::npos);

  const std::string trace = write_family(dir, m2, MapFamily::from_higher_levels(4, {trace_times_identity()}));
  r = run({"verify", "--algebra", "matrix:2", "--family", trace, "--xi", "1", "--out", dir.string()});
  CHECK(r.code == cli::kOk);
  bool zp = false, hd = false;
  const json trace_report = load(dir / "report.json");
  for (const auto& c : trace_report["checks"]) {
    if (c["check"] == "zero_product_condition") zp = c["pass"];
    if (c["check"] == "higher_derivation") hd = c["pass"];
  }
  CHECK(zp);
  CHECK_FALSE(hd);
}

TEST_CASE("verify: malformed family") {
  const fs::path dir = scratch("verify_bad");
  io::write_file(dir / "bad.json", "{\"algebra\": \"matrix:2\", \"order\": 1}");
  CHECK(run({"verify", "--algebra", "matrix:2", "--family", (dir / "bad.json").string(), "--out", dir.string()}).code ==
        cli::kIoError);
  CHECK(run({"verify", "--algebra", "matrix:2", "--family", (dir / "missing.json").string(), "--out", dir.string()})
            .code == cli::kIoError);
}

TEST_CASE("decompose the ad_T + trace example") {
  const Algebra m2 = build_matrix_algebra(2);
  const fs::path dir = scratch("decompose");
  const Element t = m2.basis(1) + Scalar(2) * m2.basis(2);
  const LinMap adt = LinMap::from_function(m2, [&](const Element& x) { return commutator(m2, t, x); });
  const std::string fam = write_family(dir, m2, MapFamily::from_higher_levels(4, {adt + Scalar(5) * trace_times_identity()}));
  CHECK(run({"decompose", "--algebra", "matrix:2", "--family", fam, "--out", dir.string()}).code == cli::kOk);
  const Decomposition dec = io::decomposition_from_json(io::read_file(dir / "decomposition.json"), m2);
  CHECK(dec.blocks[0].h[0] == Vector{5, 0, 0, 5});

  const std::string tr = write_family(dir, m2, MapFamily::from_higher_levels(4, {transpose_map()}));
  const Run bad = run({"decompose", "--algebra", "matrix:2", "--family", tr, "--out", dir.string()});
  CHECK(bad.code == cli::kVerificationFailed);
  CHECK(bad.out.find("residual is not scalar") != std::string::npos);
}

TEST_CASE("transfer then rebuild round-trips byte for byte") {
  const fs::path dir = scratch("transfer");
  CHECK(run({"inner", "--algebra", "blocks:2,1", "--levels", "4", "--seed", "8", "--out", (dir / "in").string()}).code == 0);
  for (const std::string o : {"a", "b"}) {
    CHECK(run({"transfer", "--algebra", "blocks:2,1", "--family", (dir / "in" / "family.json").string(), "--ordering", o,
               "--out", (dir / o).string()})
              .code == 0);
    CHECK(run({"rebuild", "--algebra", "blocks:2,1", "--delta", (dir / o / "delta.json").string(), "--out",
               (dir / o).string()})
              .code == 0);
    CHECK(io::read_file(dir / o / "family.json") == io::read_file(dir / "in" / "family.json"));
  }
  CHECK(run({"transfer", "--algebra", "blocks:2,1", "--family", (dir / "in" / "family.json").string(), "--ordering", "c",
             "--out", dir.string()})
            .code == cli::kIoError);
}

TEST_CASE("classify at xi = 0") {
  const Algebra m2 = build_matrix_algebra(2);
  const fs::path dir = scratch("classify");
  const Element t = m2.basis(1);
  const LinMap adt = LinMap::from_function(m2, [&](const Element& x) { return commutator(m2, t, x); });
  const std::string fam = write_family(dir, m2, MapFamily::from_higher_levels(4, {adt + LinMap::identity(4)}));
  CHECK(run({"classify", "--algebra", "matrix:2", "--family", fam, "--xi", "0", "--out", dir.string()}).code == 0);
  const XiClassification c = io::classification_from_json(io::read_file(dir / "classification.json"), m2);
  CHECK(c.verdict == Verdict::GeneralizedHigherDerivation);
  REQUIRE(c.associated.has_value());
  CHECK((*c.associated)[1] == adt);

  const std::string tr = write_family(dir, m2, MapFamily::from_higher_levels(4, {transpose_map()}));
  CHECK(run({"classify", "--algebra", "matrix:2", "--family", tr, "--xi", "1/2", "--out", dir.string()}).code ==
        cli::kVerificationFailed);
  CHECK(run({"classify", "--algebra", "matrix:2", "--family", fam, "--xi", "1", "--out", dir.string()}).code ==
        cli::kIoError);
}

TEST_CASE("usage and input errors exit with code 4") {
  const fs::path dir = scratch("codes");
  CHECK(run({"solve", "--algebra", "matrix:0", "--xi", "1", "--out", dir.string()}).code == cli::kIoError);
  CHECK(run({"solve", "--algebra", "tensor:2", "--xi", "1", "--out", dir.string()}).code == cli::kIoError);
  CHECK(run({"solve", "--algebra", "matrix:2", "--xi", "1/0", "--out", dir.string()}).code == cli::kIoError);
  CHECK(run({"solve", "--algebra", "matrix:2", "--out", dir.string()}).code == cli::kIoError);
  CHECK(run({"solve", "--algebra", "file:" + (dir / "nope.json").string(), "--xi", "1", "--out", dir.string()}).code ==
        cli::kIoError);
  CHECK(run({"frobnicate"}).code == cli::kIoError);
}

TEST_CASE("a non-extendable prefix exits with code 3") {
  const Algebra m2 = build_matrix_algebra(2);
  const fs::path dir = scratch("inconsistent");
  const std::string tr = write_family(dir, m2, MapFamily::from_higher_levels(4, {transpose_map()}));
  const Run r = run({"solve", "--algebra", "matrix:2", "--xi", "1/2", "--levels", "2", "--family", tr, "--out", dir.string()});
  CHECK(r.code == cli::kInconsistent);
  const json rep = load(dir / "report.json");
  CHECK(rep["status"] == "inconsistent");
  CHECK(rep["inconsistency"]["level"] == 2);
  CHECK(run({"solve", "--algebra", "matrix:2", "--xi", "1/2", "--levels", "1", "--family", tr, "--out", dir.string()}).code ==
        cli::kIoError);
}

TEST_CASE("extending a valid prefix") {
  const Algebra m2 = build_matrix_algebra(2);
  const fs::path dir = scratch("prefix");
  const Element t = m2.basis(1);
  const LinMap adt = LinMap::from_function(m2, [&](const Element& x) { return commutator(m2, t, x); });
  const std::string fam = write_family(dir, m2, MapFamily::from_higher_levels(4, {adt}));
  CHECK(run({"solve", "--algebra", "matrix:2", "--xi", "-1", "--levels", "3", "--family", fam, "--choice", "random",
             "--out", dir.string()})
            .code == cli::kOk);
  const MapFamily f = io::family_from_json(io::read_file(dir / "family.json"), m2);
  CHECK(f.order() == 3);
  CHECK(f[1] == adt);
  CHECK(is_higher_derivation(m2, f));
  CHECK_FALSE(fs::exists(dir / "level_1.json"));
  CHECK(fs::exists(dir / "level_3.json"));
}

TEST_CASE("file algebras") {
  const fs::path dir = scratch("file_alg");
  io::write_file(dir / "alg.json", io::algebra_to_json(build_block_diagonal({2, 1})));
  const Run r = run({"solve", "--algebra", "file:" + (dir / "alg.json").string(), "--xi", "1", "--levels", "2", "--out",
                     dir.string()});
  CHECK(r.code == cli::kOk);
  CHECK(load(dir / "report.json")["algebra"]["name"] == "blocks:2,1");
}
