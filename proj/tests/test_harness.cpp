#include "cubsurf/error.hpp"
#include "cubsurf/harness.hpp"
#include "doctest.h"

using namespace cubsurf;

TEST_CASE("random smooth surfaces are reproducible") {
  const GFPtr f = field_of_order(13);
  const CubicForm a = random_smooth_surface(f, std::uint64_t{1});
  const CubicForm b = random_smooth_surface(f, std::uint64_t{1});
  CHECK(a == b);
  CHECK(dump_json(a.to_json()) == dump_json(b.to_json()));
  CHECK_FALSE(random_smooth_surface(f, std::uint64_t{2}) == a);
}

TEST_CASE("100 samples over F_7 are smooth") {
  const GFPtr f = field_of_order(7);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) CHECK(is_smooth(random_smooth_surface(f, rng)));
}

TEST_CASE("smooth cubics exist over F_2") {
  Rng rng(3);
  CHECK(is_smooth(random_smooth_surface(field_of_order(2), rng)));
}

TEST_CASE("constructed surfaces carry the requested lines") {
  Rng rng(11);
  for (unsigned q : {7U, 13U, 16U}) {
    const GFPtr f = field_of_order(q);
    for (int i = 0; i < 3; ++i) {
      const CubicForm s = random_surface_with_skew_pair(f, rng);
      CHECK(is_smooth(s));
      const auto lines = lines_on_surface(s, 1).lines;
      bool found = false;
      for (std::size_t a = 0; a < lines.size(); ++a) {
        for (std::size_t b = a + 1; b < lines.size(); ++b) found = found || skew(*f, lines[a], lines[b]);
      }
      CHECK(found);
      const CubicForm t = random_surface_with_line(f, rng);
      CHECK(is_smooth(t));
      CHECK_FALSE(lines_on_surface(t, 1).lines.empty());
    }
  }
}

TEST_CASE("field_of_order") {
  CHECK(field_of_order(25)->size() == 25);
  CHECK(field_of_order(64)->size() == 64);
  CHECK(field_of_order(13)->size() == 13);
  for (std::uint64_t q : {0, 1, 6, 12, 100}) {
    try {
      field_of_order(q);
      FAIL("accepted " << q);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInvalidArgument);
    }
  }
}

TEST_CASE("config round-trips through JSON") {
  ExperimentConfig c;
  c.seed = 99;
  c.skew_fields = {7, 9};
  c.timings = true;
  c.max_pairs = 17;
  const ExperimentConfig d = ExperimentConfig::from_json(c.to_json());
  CHECK(d.to_json() == c.to_json());
  const ExperimentConfig partial = ExperimentConfig::from_json(nlohmann::json{{"seed", 5}});
  CHECK(partial.seed == 5);
  CHECK(partial.relation_height == ExperimentConfig{}.relation_height);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"seed", "x"}}), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::array()), Error);
}

TEST_CASE("suites") {
  CHECK(suite_names() == std::vector<std::string>{"geometry", "hs", "pic", "reduction", "span", "all"});
  CHECK_THROWS_AS(run_suite("nope", {}), Error);
  const VerificationReport a = run_suite("pic", {});
  const VerificationReport b = run_suite("pic", {});
  CHECK(a.passed());
  CHECK(dump_json(a.to_json()) == dump_json(b.to_json()));
  REQUIRE(a.checks.size() == 2);
  CHECK(a.checks[0].name < a.checks[1].name);
  CHECK(a.find("pic_quotients") != nullptr);
  CHECK(a.find("lines_structure") == nullptr);
  CHECK_FALSE(a.to_json()["checks"]["group_axioms"].contains("seconds"));
}

TEST_CASE("geometry suite on the F_2 example") {
  const VerificationReport r = run_suite("geometry", {});
  CHECK(r.passed());
  CHECK(r.find("lines_structure")->details["lines"] == 27);
  CHECK(r.find("eckardt_census")->details["eckardt_points"] == 13);
}

TEST_CASE("scan is deterministic") {
  const auto a = scan_surfaces(5, 4, 2, true);
  CHECK(a == scan_surfaces(5, 4, 2, true));
  CHECK(a["surfaces"].size() == 4);
}
