#include "commands.hpp"
#include "descriptor.hpp"

#include "doctest.h"

using namespace affind;
using namespace affind::cli;

namespace {

std::string field_of(const Json& j) {
  try {
    parse_descriptor(j);
  } catch (const DescriptorError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("descriptor parsing") {
  const Json j = Json::parse(R"({"type":"A2^1","J":[1],"phi":{"1":"+","2":"-","default":"+"},
                                 "module":{"kind":"tensor","charge":"3/2"},"window":{"D":2,"H":1,"cap":50},"seed":9})");
  const Descriptor d = parse_descriptor(j);
  CHECK(d.spec.type.token() == "A2^1");
  CHECK(d.spec.J == NodeSet{1});
  CHECK(d.spec.module.phi.sign(2) == '-');
  CHECK(d.spec.module.phi.sign(7) == '+');
  CHECK(d.spec.module.charge == Rational(3, 2));
  CHECK(d.spec.window == TruncationWindow{2, 1, 50});
  CHECK(d.spec.seed == 9);
  CHECK(config_json(d.spec)["module"]["charge"] == "3/2");
}

TEST_CASE("malformed descriptors name the offending field") {
  CHECK(field_of(Json::parse(R"({"type":"Q7^1"})")) == "type");
  CHECK(field_of(Json::parse(R"({"type":"A2^1","J":[3]})")) == "J[0]");
  CHECK(field_of(Json::parse(R"({"phi":{"x":"+"}})")) == "phi.x");
  CHECK(field_of(Json::parse(R"({"phi":{"1":"*"}})")) == "phi.1");
  CHECK(field_of(Json::parse(R"({"module":{"charge":"one"}})")) == "module.charge");
  CHECK(field_of(Json::parse(R"({"module":{"kind":"verma"}})")) == "module.kind");
  CHECK(field_of(Json::parse(R"({"window":{"D":-1}})")) == "window.D");
  CHECK(field_of(Json::parse(R"({"window":{"Q":1}})")) == "window.Q");
  CHECK(field_of(Json::parse(R"({"u":["-1,x"]})")) == "u[0]");
  CHECK(field_of(Json::parse(R"({"colour":1})")) == "colour");
  CHECK(field_of(Json::parse(R"({"type":"A1^1","module":{"lambda":["1","2"]}})")) == "module.lambda");
}

TEST_CASE("weights, ranges and words") {
  const Degree w = parse_weight("-1,0;2", 2);
  CHECK(w.finite == std::vector<int>{-1, 0});
  CHECK(w.delta == 2);
  CHECK(w.weight_str() == "λ-1·α1+2·δ");
  CHECK_THROWS(parse_weight("-1;2", 2));
  CHECK(parse_range("2..8") == std::pair{2, 8});
  CHECK(parse_range("5") == std::pair{5, 5});
  CHECK(parse_word("-2,-1") == ModeWord{{-2, 0}, {-1, 0}});
  CHECK(parse_word("-1@2") == ModeWord{{-1, 1}});
}

TEST_CASE("commands honour the exit-code contract") {
  Descriptor d = parse_descriptor(Json::parse(R"({"type":"A1^1","module":"fock","window":{"D":2,"H":2}})"));
  CHECK(run_command("theorem2", d).exit == kPass);
  CHECK(run_command("probe-irreducible", d).exit == kPass);
  d.spec.module.charge = 0;
  CHECK(run_command("theorem2", d).exit == kInconclusive);
  CHECK(run_command("probe-irreducible", d).exit == kFail);
  CHECK_THROWS_AS(run_command("lemma-heis", d), DescriptorError);
  CHECK_THROWS_AS(run_command("invariants", d), DescriptorError);
  CHECK_THROWS_AS(run_command("nonsense", d), DescriptorError);
}

TEST_CASE("reports are deterministic") {
  const Descriptor d = parse_descriptor(Json::parse(R"({"type":"A2^1","J":[1],"window":{"D":1,"H":1},"seed":4})"));
  CHECK(run_command("theorem2", d).report.dump() == run_command("theorem2", d).report.dump());
  CHECK(run_command("character", d).report.dump() == run_command("character", d).report.dump());
}
