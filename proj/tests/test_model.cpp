#include "zfstar/model.hpp"

#include <doctest.h>

#include <algorithm>

#include "generators.hpp"

using namespace zfstar;

namespace {

const char* kExampleFile = R"({ "elements": ["alpha","beta","s1"],
  "sets": ["s1"],
  "membership": [["alpha","s1"],["beta","s1"]],
  "parthood": [["alpha","alpha"],["beta","beta"],["beta","alpha"]] })";

bool has_violation(const Structure& s, const std::string& needle) {
  auto v = s.validate();
  return std::any_of(v.begin(), v.end(), [&](const Violation& violation) {
    return violation.message.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("the documented example file loads") {
  Structure s = Structure::load(kExampleFile);
  CHECK(s.size() == 3);
  CHECK(s.set_list() == std::vector<std::string>{"s1"});
  CHECK(s.is_pt(*s.index_of("alpha")));
  CHECK(s.is_pt(*s.index_of("beta")));
  CHECK(s.members("s1") == std::vector<std::string>{"alpha", "beta"});
  CHECK(s.parts("alpha") == std::vector<std::string>{"alpha", "beta"});
  CHECK(s.validate().empty());
}

TEST_CASE("validate accepts a reflexive PT and flags each broken invariant") {
  Structure ok({"a"}, {}, {}, {{"a", "a"}});
  CHECK(ok.validate().empty());

  Structure bad_container({"a", "b"}, {}, {{"a", "b"}}, {});
  CHECK(has_violation(bad_container, "not a set"));

  Structure bad_endpoint({"s", "a"}, {"s"}, {}, {{"s", "a"}});
  CHECK(has_violation(bad_endpoint, "parthood endpoint is a set"));

  Structure dup_name({"a", "a"}, {}, {}, {});
  CHECK(has_violation(dup_name, "duplicate element name"));

  Structure empty_name({""}, {}, {}, {});
  CHECK(has_violation(empty_name, "empty element name"));

  Structure undeclared({"a"}, {}, {}, {{"a", "zz"}});
  CHECK(has_violation(undeclared, "undeclared element 'zz'"));

  Structure dup_pair({"a"}, {}, {}, {{"a", "a"}, {"a", "a"}});
  CHECK(has_violation(dup_pair, "duplicate parthood pair"));
}

TEST_CASE("every single corrupting mutation of a valid structure is caught") {
  Structure base = testgen::photon_structure();
  REQUIRE(base.validate().empty());

  // Tag a parthood endpoint as a set.
  Structure m1(base.elements(), {"s1", "beta1"}, base.membership(),
               base.parthood());
  CHECK(!m1.validate().empty());
  // Point membership at a PT container.
  auto mem = base.membership();
  mem.emplace_back("beta1", "alpha");
  Structure m2(base.elements(), base.set_list(), mem, base.parthood());
  CHECK(!m2.validate().empty());
  // Reference an undeclared element.
  auto part = base.parthood();
  part.emplace_back("ghost", "alpha");
  Structure m3(base.elements(), base.set_list(), base.membership(), part);
  CHECK(!m3.validate().empty());
  // Duplicate an element name.
  auto elements = base.elements();
  elements.push_back("alpha");
  Structure m4(elements, base.set_list(), base.membership(), base.parthood());
  CHECK(!m4.validate().empty());
}

TEST_CASE("load rejects malformed files") {
  CHECK_THROWS_AS(Structure::load("not json"), model_error);
  CHECK_THROWS_AS(Structure::load("[1,2]"), model_error);
  CHECK_THROWS_AS(
      Structure::load(R"({"elements":[],"sets":[],"membership":[]})"),
      model_error);  // missing key
  CHECK_THROWS_AS(
      Structure::load(
          R"({"elements":[],"sets":[],"membership":[],"parthood":[],"extra":1})"),
      model_error);  // unknown key
  CHECK_THROWS_AS(
      Structure::load(
          R"({"elements":["a",3],"sets":[],"membership":[],"parthood":[]})"),
      model_error);  // non-string element
  CHECK_THROWS_AS(
      Structure::load(
          R"({"elements":["a"],"sets":[],"membership":[["a"]],"parthood":[]})"),
      model_error);  // malformed pair
  CHECK_THROWS_AS(
      Structure::load(
          R"({"elements":["a","a"],"sets":[],"membership":[],"parthood":[]})"),
      model_error);  // duplicate element
  // Invariant violations are reported through the same channel.
  try {
    Structure::load(
        R"({"elements":["a","b"],"sets":[],"membership":[["a","b"]],"parthood":[]})");
    FAIL("expected a model error");
  } catch (const model_error& e) {
    REQUIRE(e.violations.size() == 1);
    CHECK(e.violations[0].find("not a set") != std::string::npos);
  }
}

TEST_CASE("save/load round-trips random valid structures") {
  testgen::StructureGen gen(4711);
  for (int i = 0; i < 200; ++i) {
    Structure s = gen.random_valid();
    CAPTURE(s.save());
    Structure back = Structure::load(s.save());
    CHECK(back == s);
    // Pair order is preserved verbatim.
    CHECK(back.membership() == s.membership());
    CHECK(back.parthood() == s.parthood());
    CHECK(back.set_list() == s.set_list());
  }
}

TEST_CASE("parts and members") {
  Structure s = testgen::photon_structure();
  CHECK(s.members("alpha").empty());  // PTs have no members
  // Reflexivity makes the whole one of its own parts; declaration order.
  CHECK(s.parts("alpha") ==
        std::vector<std::string>{"alpha", "beta1", "beta2"});
  CHECK(s.parts("beta1") == std::vector<std::string>{"beta1"});
  CHECK_THROWS_AS(s.parts("s1"), error);       // sets have no parts
  CHECK_THROWS_AS(s.parts("nope"), error);     // undeclared
  CHECK_THROWS_AS(s.members("nope"), error);   // undeclared
  Structure empty_set({"t"}, {"t"}, {}, {});
  CHECK(empty_set.members("t").empty());
}
