#include "doctest.h"

#include "ltf/verify.hpp"

using namespace ltf;

TEST_CASE("verify suite names cover the dispatch table") {
  const auto& names = verify_suite_names();
  CHECK(names.size() == 12);
  CHECK(names.front() == "lemma9");
  CHECK_THROWS_AS(run_verify_suite("lemma999"), error);
}

TEST_CASE("verify lemma26 enumerated sweep at n <= 3") {
  VerifyParams p;
  p.nmax = 3;
  VerifyReport r = run_verify_suite("lemma26", p);
  // 2 count checks + 14 + 104 tables
  CHECK(r.instances == 120);
  CHECK(r.ok());
  CHECK(r.worst_margin > 0);
}

TEST_CASE("verify prop17 over all thresholds at n <= 3") {
  VerifyParams p;
  p.nmax = 3;
  VerifyReport r = run_verify_suite("prop17", p);
  CHECK(r.instances == (4 - 2) + (14 - 2) + (104 - 2));
  CHECK(r.ok());
}

TEST_CASE("verify lemma10 small run passes and is deterministic") {
  VerifyParams p;
  p.nmax = 8;
  p.instances = 2;
  p.draws = 40;
  p.seed = 5;
  VerifyReport a = run_verify_suite("lemma10", p);
  VerifyReport b = run_verify_suite("lemma10", p);
  CHECK(a.ok());
  CHECK(verify_report_to_json(a).dump() == verify_report_to_json(b).dump());
}

TEST_CASE("verify erdos small run includes the tight case") {
  VerifyParams p;
  p.instances = 8;
  p.nmax = 8;
  VerifyReport r = run_verify_suite("erdos", p);
  CHECK(r.ok());
  CHECK(r.worst_margin == 0.0);  // the all-ones instance meets the bound exactly
}

TEST_CASE("verify halasz probe over a short range") {
  VerifyParams p;
  p.nmax = 10;
  VerifyReport r = run_verify_suite("halasz", p);
  CHECK(r.instances == 6);  // k = 6..10 plus the width check
  CHECK(r.ok());
}

TEST_CASE("verify extension small run") {
  VerifyParams p;
  p.instances = 10;
  p.nmax = 10;
  p.seed = 3;
  VerifyReport r = run_verify_suite("extension", p);
  CHECK(r.ok());
  CHECK(r.worst_margin >= 0);
}

TEST_CASE("verify lemma29 one shape instance each") {
  VerifyParams p;
  p.instances = 1;
  VerifyReport r = run_verify_suite("lemma29", p);
  CHECK(r.instances == 3);
  CHECK(r.ok());
}

TEST_CASE("verify lemma22 small run") {
  VerifyParams p;
  p.instances = 3;
  p.nmax = 9;
  p.seed = 11;
  VerifyReport r = run_verify_suite("lemma22", p);
  CHECK(r.ok());
}

TEST_CASE("verify claim40 small run") {
  VerifyParams p;
  p.instances = 4;
  p.nmax = 5;
  VerifyReport r = run_verify_suite("claim40", p);
  CHECK(r.ok());
  CHECK(r.worst_margin > 0);
}

TEST_CASE("verify berryesseen small run") {
  VerifyParams p;
  p.instances = 6;
  p.nmax = 10;
  VerifyReport r = run_verify_suite("berryesseen", p);
  CHECK(r.ok());
}

TEST_CASE("verify corollary13 trimmed to two runs") {
  VerifyParams p;
  p.instances = 2;
  VerifyReport r = run_verify_suite("corollary13", p);
  CHECK(r.instances == 2);
  CHECK(r.ok());
}

TEST_CASE("verify lemma9 small run") {
  VerifyParams p;
  p.instances = 6;
  p.nmax = 9;
  VerifyReport r = run_verify_suite("lemma9", p);
  CHECK(r.ok());
  CHECK(r.worst_margin > 0);
}

TEST_CASE("verify report json shape") {
  VerifyParams p;
  p.instances = 1;
  p.nmax = 8;
  p.seed = 2;
  json j = verify_report_to_json(run_verify_suite("erdos", p));
  CHECK(j["suite"] == "erdos");
  CHECK(j["instances"] == 1);
  CHECK(j["failed"] == 0);
  CHECK(j["failures"].is_array());
  CHECK(j["seed"] == 2);
}
