#include "doctest.h"

#include "ltf/io.hpp"

#include <filesystem>
#include <string>

using namespace ltf;

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("ltf json round trip keeps exact rationals") {
  Ltf f;
  f.weights = {rat(-1, 2), rat(3), rat(7, 5)};
  f.theta = rat(-9, 4);
  json j = ltf_to_json(f);
  CHECK(j.dump() == R"({"n":3,"weights":["-1/2","3","7/5"],"theta":"-9/4"})");
  Ltf g = ltf_from_json(j);
  CHECK(g.weights == f.weights);
  CHECK(g.theta == f.theta);

  CHECK_THROWS_AS(ltf_from_json(json::parse(R"({"n":2,"weights":["1"],"theta":"0"})")), error);
  CHECK_THROWS_AS(ltf_from_json(json::parse(R"({"weights":[],"theta":"0"})")), error);
  CHECK_THROWS_AS(ltf_from_json(json::parse(R"({"n":1,"weights":[1],"theta":"0"})")), error);
  CHECK_THROWS_AS(ltf_from_json(json::parse(R"({"n":1,"weights":["x"],"theta":"0"})")), error);
}

TEST_CASE("table hex encoding matches hand-packed bits") {
  // MAJ3 is +1 on points {3,5,6,7}: 8+32+64+128 = 0xe8.
  json maj = table_to_json(truth_table(majority(3)));
  CHECK(maj.dump() == R"({"n":3,"bits_hex":"e8"})");
  CHECK(table_from_json(maj) == truth_table(majority(3)));

  // Dictator x1 on two variables: +1 exactly when bit 0 is set -> 1010b.
  json dict = table_to_json(truth_table(dictator(2, 0)));
  CHECK(dict["bits_hex"] == "a");
  CHECK(table_from_json(dict) == truth_table(dictator(2, 0)));

  // Upper-case digits parse to the same table.
  json upper = json::parse(R"({"n":3,"bits_hex":"E8"})");
  CHECK(table_from_json(upper) == truth_table(majority(3)));

  CHECK_THROWS_AS(table_from_json(json::parse(R"({"n":3,"bits_hex":"e"})")), error);
  CHECK_THROWS_AS(table_from_json(json::parse(R"({"n":3,"bits_hex":"zz"})")), error);
  // n=1 has two points; a set bit above them is corrupt, not ignorable.
  CHECK_THROWS_AS(table_from_json(json::parse(R"({"n":1,"bits_hex":"4"})")), error);
}

TEST_CASE("table hex round-trips a random wide table") {
  Rng rng(31);
  TruthTable t(10);
  for (std::uint64_t p = 0; p < t.size(); ++p) t.set(p, rng.pm1());
  json j = table_to_json(t);
  CHECK(j["bits_hex"].get<std::string>().size() == 256);
  CHECK(table_from_json(j) == t);
}

TEST_CASE("distribution json round trips all three kinds") {
  json u = distribution_to_json(InputDistribution::uniform(5));
  CHECK(u.dump() == R"({"kind":"uniform","n":5})");
  CHECK(distribution_from_json(u).is_uniform());
  CHECK(distribution_from_json(u).n() == 5);

  InputDistribution prod = InputDistribution::product({rat(3, 4), rat(1, 2)});
  json p = distribution_to_json(prod);
  CHECK(p.dump() == R"({"kind":"product","p":["3/4","1/2"]})");
  InputDistribution prod2 = distribution_from_json(p);
  CHECK(prod2.is_product());
  CHECK(prod2.as_product().p == prod.as_product().p);

  InputDistribution had = pairwise_hadamard_n3();
  InputDistribution had2 = distribution_from_json(distribution_to_json(had));
  CHECK(had2.is_explicit());
  CHECK(had2.as_explicit().support == had.as_explicit().support);

  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"kind":"gauss"})")), error);
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"kind":"product","p":["0"]})")), error);
}

TEST_CASE("spectrum csv lists every mask with exact coefficients") {
  std::string csv = spectrum_csv(wht(truth_table(majority(3))));
  CHECK(csv ==
        "0,0,1\n"
        "1,1,2\n"
        "2,1,2\n"
        "3,0,1\n"
        "4,1,2\n"
        "5,0,1\n"
        "6,0,1\n"
        "7,-1,2\n");
}

TEST_CASE("gap csv carries the per-k floors") {
  GapReport g = gap_report({rat(1), rat(2, 3), rat(1, 3)});
  std::string csv = gap_csv(g);
  CHECK(csv ==
        "1,1,3,1/1073741824,1\n"
        "2,1,3,1/68719476736,1\n");
}

TEST_CASE("profile and probe csv render rational columns") {
  std::vector<ProfileRow> rows = anticonc_profile(
      {rat(1), rat(1)}, {rat(0), rat(1, 2)}, InputDistribution::uniform(2));
  std::string csv = profile_csv(rows);
  // v_star is the first maximizing window's midpoint (left edge on a support
  // value), so radius 1/2 reports center 0 + 1/2.
  CHECK(csv ==
        "0,1,2,0\n"
        "1/2,1,2,1/2\n");

  auto family = [](int k) {
    std::vector<rat> a;
    for (int i = 1; i <= k; ++i) a.push_back(rat(i));
    return a;
  };
  auto dist = [](int k) { return InputDistribution::uniform(k); };
  std::string probe = probe_csv(halasz_probe(family, rat(1), 2, 2, dist));
  CHECK(probe == "2,1/2,1.4142135623730951\n");
}

TEST_CASE("certificate json records tight-row provenance") {
  LtfRepresentation rep = ltf_representation(truth_table(majority(3)));
  json j = certificate_to_json(rep.cert, rep.built.lp);
  CHECK(j["weights"].size() == rep.cert.w.size());
  CHECK(j["tight_rows"].size() == rep.cert.tight_rows.size());
  CHECK(j["basis_rows"].size() == rep.cert.w.size());
  bool saw_point = false, saw_gap = false;
  for (const json& row : j["tight_rows"]) {
    if (row["kind"] == "point") saw_point = true;
    if (row["kind"] == "gap") saw_gap = true;
  }
  CHECK(saw_point);
  CHECK(saw_gap);
}

TEST_CASE("pipeline report json carries the trace and config") {
  PipelineReport rep = pipeline_erdos(majority(3), rat(1, 2),
                                      InputDistribution::uniform(3));
  json j = pipeline_report_to_json(rep);
  CHECK(j["method"] == "ser07");
  CHECK(j["distribution"] == "uniform");
  // k = 3 gives radius 1/2 and the grid lands on the minimal (4,3,2) weights.
  CHECK(j["max_weight"] == "4");
  CHECK(j["distance"]["mode"] == "exact");
  CHECK(j["trace"]["branch"] == "rounded");
  CHECK(j["config"]["budget"] == 16);
  CHECK(j["met_target"] == true);

  Ltf round_trip = ltf_from_json(j["h"]);
  CHECK(truth_table(round_trip) == truth_table(rep.h));
}

TEST_CASE("junta report json records case, sizes, and seed") {
  Rng rng(7);
  JuntaApproximator a = theorem1_pipeline(dictator(4, 1), rat(1, 4), rng);
  json j = junta_report_to_json(a, 7);
  CHECK(j["seed"] == 7);
  CHECK(j["distance"]["value"] == "0");
  CHECK(j["junta_size"] == 1);
  CHECK(j["met_target"] == true);
}

TEST_CASE("error json is machine readable") {
  error e("bad_radius", "radius must be positive");
  CHECK(error_to_json(e).dump() ==
        R"({"error":"bad_radius","message":"radius must be positive"})");
}

TEST_CASE("json files round trip through disk") {
  std::string path = tmp_path("ltf_io_test.json");
  write_text_file(path, ltf_to_json(majority(5)).dump(2) + "\n");
  json j = read_json_file(path);
  Ltf f = ltf_from_json(j);
  CHECK(truth_table(f) == truth_table(majority(5)));

  CHECK_THROWS_AS(read_json_file(tmp_path("ltf_io_missing.json")), error);
  write_text_file(path, "{not json");
  CHECK_THROWS_AS(read_json_file(path), error);
}
