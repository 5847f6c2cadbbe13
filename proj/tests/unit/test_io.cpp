#include <string>

#include "support.hpp"
#include "stalab/catalog.hpp"
#include "stalab/errors.hpp"
#include "stalab/phase.hpp"
#include "stalab/sequence_io.hpp"

using namespace stalab;

TEST_CASE("catalog sequences round-trip through JSON") {
  const auto p = PhysicalParams::rubidium87(2);
  const Environment env{Vec3(0, 0, -9.8), Vec3(1e-5, 0, 0), Vec3(0.1, 0, 0.3)};
  const Time T = milliseconds(30);
  CabOptions cab;
  cab.n_b = 3;
  cab.tau_b = T / 6;
  cab.bloch_phases = {0.1, 0.2, 0.3, 0.4};
  for (const auto& seq : {build_mach_zehnder(p, T, env, {0.5, 0.25, 0.125, 0}), build_cab(p, T, cab, env),
                          build_butterfly(p, T, env), build_mach_zehnder_offset(p, T, microseconds(3), env)}) {
    const auto text = dump_sequence(seq);
    const auto back = parse_sequence(text);
    CHECK(dump_sequence(back) == text);
    const auto a = total_phase(seq);
    const auto b = total_phase(back);
    CHECK(a.total == b.total);
    CHECK(a.laser == b.laser);
    CHECK(a.sagnac == b.sagnac);
  }
}

TEST_CASE("parse errors name the field") {
  const std::string good = dump_sequence(build_mach_zehnder(PhysicalParams::rubidium87(), milliseconds(10)));
  try {
    parse_sequence(R"({"params": {"m": 1, "hbar": 1, "k": [0, 0, 1], "n": 1}, "T": "x", "arms": {}})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "/T");
  }
  try {
    auto bad = good;
    bad.insert(1, "\"colour\": 1, ");
    parse_sequence(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "/colour");
  }
  try {
    parse_sequence("{\n\"T\": 0.1,\n]");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(load_sequence("/nonexistent/sequence.json"), ParseError);
}
