#include "stalab/sequence_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stalab/errors.hpp"

namespace stalab {
namespace {

using nlohmann::json;

struct Reader {
  const json& node;
  std::string path;

  Reader at(const std::string& key) const { return {node.at(key), path + "/" + key}; }
  Reader at(std::size_t i) const { return {node.at(i), path + "/" + std::to_string(i)}; }
  bool has(const std::string& key) const { return node.contains(key) && !node.at(key).is_null(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what + " at " + path, path); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!node.is_object()) fail("expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : node.items())
      if (!ok.count(key)) throw ParseError("unknown field " + path + "/" + key, path + "/" + key);
  }
  Reader required(const std::string& key) const {
    if (!has(key)) throw ParseError("missing field " + path + "/" + key, path + "/" + key);
    return at(key);
  }
  double number() const {
    if (!node.is_number()) fail("expected a number");
    return node.get<double>();
  }
  int integer() const {
    if (!node.is_number_integer()) fail("expected an integer");
    return node.get<int>();
  }
  Vec3 vec() const {
    if (!node.is_array() || node.size() != 3) fail("expected a 3-vector");
    return {at(std::size_t{0}).number(), at(1).number(), at(2).number()};
  }
  Time time() const {
    try {
      return Time::from_seconds(number());
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
  }
  const json& array() const {
    if (!node.is_array()) fail("expected an array");
    return node;
  }
};

double opt_number(const Reader& r, const char* key, double fallback = 0.0) {
  return r.has(key) ? r.at(key).number() : fallback;
}
Vec3 opt_vec(const Reader& r, const char* key) {
  return r.has(key) ? r.at(key).vec() : Vec3::Zero();
}

ArmTimeline read_arm(const Reader& r, Arm label) {
  r.expect_object({"x0", "v0", "kicks", "segments"});
  std::vector<ImpulseKick> kicks;
  std::vector<AccelSegment> segs;
  if (r.has("kicks")) {
    const auto list = r.at("kicks");
    for (std::size_t i = 0; i < list.array().size(); ++i) {
      const auto k = list.at(i);
      k.expect_object({"t", "dv", "phi", "dn"});
      kicks.push_back({k.required("t").time(), k.required("dv").vec(), opt_number(k, "phi"),
                       k.has("dn") ? k.at("dn").integer() : 0});
    }
  }
  if (r.has("segments")) {
    const auto list = r.at("segments");
    for (std::size_t i = 0; i < list.array().size(); ++i) {
      const auto s = list.at(i);
      s.expect_object({"t_s", "t_e", "a", "phi_b", "tau_b"});
      AccelSegment seg{s.required("t_s").time(), s.required("t_e").time(), s.required("a").vec(),
                       opt_number(s, "phi_b"), std::nullopt};
      if (s.has("tau_b")) seg.bloch_period = s.at("tau_b").number();
      segs.push_back(seg);
    }
  }
  try {
    return ArmTimeline(label, opt_vec(r, "x0"), opt_vec(r, "v0"), std::move(kicks), std::move(segs));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(e.what()) + " at " + r.path, r.path);
  }
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  for (std::size_t i = 0; i < byte; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json arm_json(const ArmTimeline& arm) {
  json kicks = json::array();
  for (const auto& k : arm.kicks())
    kicks.push_back({{"t", k.time.seconds()}, {"dv", vec_json(k.dv)}, {"phi", k.phase}, {"dn", k.recoils}});
  json segs = json::array();
  for (const auto& s : arm.segments()) {
    json j = {{"t_s", s.start.seconds()},
              {"t_e", s.end.seconds()},
              {"a", vec_json(s.accel)},
              {"phi_b", s.phase}};
    if (s.bloch_period) j["tau_b"] = *s.bloch_period;
    segs.push_back(j);
  }
  return {{"x0", vec_json(arm.initial_position())},
          {"v0", vec_json(arm.initial_velocity())},
          {"kicks", kicks},
          {"segments", segs}};
}

}  // namespace

InterferometerSequence parse_sequence(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "", line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  const Reader root{doc, ""};
  try {
    root.expect_object({"params", "T", "g", "omega", "v_i", "arms"});
    const auto p = root.required("params");
    p.expect_object({"m", "hbar", "k", "n"});
    const double m = p.required("m").number();
    const double hbar = p.required("hbar").number();
    const Vec3 k = p.required("k").vec();
    const int n = p.required("n").integer();
    std::optional<PhysicalParams> params;
    try {
      params.emplace(m, hbar, k, n);
    } catch (const Error& e) {
      p.fail(e.what());
    }

    const Time T = root.required("T").time();
    const auto arms = root.required("arms");
    arms.expect_object({"a", "b"});
    ArmTimeline a = read_arm(arms.required("a"), Arm::A);
    ArmTimeline b = read_arm(arms.required("b"), Arm::B);
    try {
      return InterferometerSequence(*params, T, std::move(a), std::move(b), opt_vec(root, "g"),
                                    opt_vec(root, "omega"), opt_vec(root, "v_i"));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), "");
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what(), "");
  }
}

InterferometerSequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sequence(buf.str());
}

std::string dump_sequence(const InterferometerSequence& seq) {
  const auto& p = seq.params();
  json doc = {
      {"params", {{"m", p.mass()}, {"hbar", p.hbar()}, {"k", vec_json(p.k())}, {"n", p.order()}}},
      {"T", seq.T()},
      {"g", vec_json(seq.gravity())},
      {"omega", vec_json(seq.rotation())},
      {"v_i", vec_json(seq.initial_velocity())},
      {"arms", {{"a", arm_json(seq.arm_a())}, {"b", arm_json(seq.arm_b())}}}};
  return doc.dump(2) + "\n";
}

}  // namespace stalab
