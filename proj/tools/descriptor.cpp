#include "descriptor.hpp"

#include "affind/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace affind::cli {

namespace {

int get_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw DescriptorError(field, "expected an integer, got " + j.dump());
  return j.get<int>();
}

int get_nonneg(const Json& j, const std::string& field) {
  const int v = get_int(j, field);
  if (v < 0) throw DescriptorError(field, "must be nonnegative");
  return v;
}

Rational get_rational(const Json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw DescriptorError(field, e.what());
  }
  throw DescriptorError(field, "expected an integer or a rational string like \"-3/7\", got " + j.dump());
}

char get_sign(const Json& j, const std::string& field) {
  if (!j.is_string() || (j != "+" && j != "-")) throw DescriptorError(field, "expected \"+\" or \"-\"");
  return j.get<std::string>()[0];
}

PhiTable get_phi(const Json& j, const std::string& field) {
  if (j.is_string()) return PhiTable(get_sign(j, field));
  if (!j.is_object()) throw DescriptorError(field, "expected a sign or an object like {\"1\":\"-\",\"default\":\"+\"}");
  PhiTable phi(j.contains("default") ? get_sign(j["default"], field + ".default") : '+');
  for (const auto& [key, val] : j.items()) {
    if (key == "default") continue;
    int n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw DescriptorError(field + "." + key, "keys must be positive integers or \"default\"");
    }
    if (n <= 0) throw DescriptorError(field + "." + key, "keys must be positive integers");
    phi.set(n, get_sign(val, field + "." + key));
  }
  return phi;
}

Json phi_json(const PhiTable& phi) {
  Json j = Json::object();
  for (const auto& [n, s] : phi.entries()) j[std::to_string(n)] = std::string(1, s);
  j["default"] = std::string(1, phi.default_sign());
  return j;
}

std::string rational_str(const Rational& q) { return to_string(q); }

}  // namespace

const std::vector<std::string>& descriptor_keys() {
  static const std::vector<std::string> keys{"command", "expect", "type",  "J",     "phi",    "borel",  "module",
                                             "window",  "seed",   "weight", "bound", "samples", "kmax",  "k",
                                             "depth",   "u",      "N",     "force", "scramble", "name"};
  return keys;
}

Descriptor parse_descriptor(const Json& j) {
  if (!j.is_object()) throw DescriptorError("", "a descriptor is a JSON object");
  for (const auto& [key, val] : j.items())
    if (std::find(descriptor_keys().begin(), descriptor_keys().end(), key) == descriptor_keys().end())
      throw DescriptorError(key, "unknown field");
  Descriptor d;
  auto& s = d.spec;
  if (j.contains("type")) {
    if (!j["type"].is_string()) throw DescriptorError("type", "expected a token like \"A2^1\"");
    try {
      s.type = AffineType::parse(j["type"].get<std::string>());
    } catch (const std::exception& e) {
      throw DescriptorError("type", e.what());
    }
  }
  if (j.contains("J")) {
    if (!j["J"].is_array()) throw DescriptorError("J", "expected a list of node indices");
    for (std::size_t i = 0; i < j["J"].size(); ++i) {
      const int n = get_int(j["J"][i], "J[" + std::to_string(i) + "]");
      if (n < 1 || n > s.type.finite_rank())
        throw DescriptorError("J[" + std::to_string(i) + "]",
                              "node " + std::to_string(n) + " outside 1.." + std::to_string(s.type.finite_rank()));
      s.J.insert(n);
    }
  }
  if (j.contains("phi")) s.module.phi = get_phi(j["phi"], "phi");
  if (j.contains("borel")) {
    const Json& b = j["borel"];
    if (!b.is_object()) throw DescriptorError("borel", "expected {\"phi\": ...}");
    for (const auto& [key, val] : b.items())
      if (key != "phi") throw DescriptorError("borel." + key, "only phi is supported for parabolic experiments");
    if (b.contains("phi")) s.module.phi = get_phi(b["phi"], "borel.phi");
  }
  if (j.contains("module")) {
    const Json& m = j["module"];
    if (m.is_string()) {
      s.module.kind = m.get<std::string>();
    } else if (m.is_object()) {
      for (const auto& [key, val] : m.items()) {
        const std::string f = "module." + key;
        if (key == "kind") {
          if (!val.is_string()) throw DescriptorError(f, "expected \"fock\" or \"tensor\"");
          s.module.kind = val.get<std::string>();
        } else if (key == "charge") {
          s.module.charge = get_rational(val, f);
        } else if (key == "phi") {
          s.module.phi = get_phi(val, f);
        } else if (key == "lambda") {
          if (!val.is_array()) throw DescriptorError(f, "expected a list of rationals");
          HighestWeight hw;
          for (std::size_t i = 0; i < val.size(); ++i) hw.h.push_back(get_rational(val[i], f + "[" + std::to_string(i) + "]"));
          s.module.lambda = hw;
        } else {
          throw DescriptorError(f, "unknown field");
        }
      }
    } else {
      throw DescriptorError("module", "expected \"fock\", \"tensor\" or an object");
    }
    if (s.module.kind != "fock" && s.module.kind != "tensor")
      throw DescriptorError("module.kind", "expected \"fock\" or \"tensor\", got \"" + s.module.kind + "\"");
  }
  if (s.module.kind == "fock" && !s.J.empty()) throw DescriptorError("module.kind", "fock needs J = []; use tensor");
  if (s.module.lambda && static_cast<int>(s.module.lambda->h.size()) != s.type.finite_rank())
    throw DescriptorError("module.lambda", "expected " + std::to_string(s.type.finite_rank()) + " values");
  if (j.contains("window")) {
    const Json& w = j["window"];
    if (!w.is_object()) throw DescriptorError("window", "expected {\"D\":..,\"H\":..,\"cap\":..}");
    for (const auto& [key, val] : w.items()) {
      const std::string f = "window." + key;
      if (key == "D")
        s.window.D = get_nonneg(val, f);
      else if (key == "H")
        s.window.H = get_nonneg(val, f);
      else if (key == "cap")
        s.window.cap = static_cast<std::size_t>(get_nonneg(val, f));
      else
        throw DescriptorError(f, "unknown field");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw DescriptorError("seed", "expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("weight")) {
    if (!j["weight"].is_string()) throw DescriptorError("weight", "expected \"c1,..,cN;d\"");
    try {
      d.weight = parse_weight(j["weight"].get<std::string>(), s.type.finite_rank());
    } catch (const std::exception& e) {
      throw DescriptorError("weight", e.what());
    }
  }
  if (j.contains("bound")) d.bound = get_nonneg(j["bound"], "bound");
  if (j.contains("samples")) d.samples = static_cast<std::size_t>(get_nonneg(j["samples"], "samples"));
  if (j.contains("kmax")) d.kmax = get_nonneg(j["kmax"], "kmax");
  if (j.contains("k")) d.k = get_int(j["k"], "k");
  if (j.contains("depth")) d.depth = get_int(j["depth"], "depth");
  if (j.contains("u")) {
    if (!j["u"].is_array()) throw DescriptorError("u", "expected a list of words like \"-1\" or \"-2,-1\"");
    for (std::size_t i = 0; i < j["u"].size(); ++i) {
      const std::string f = "u[" + std::to_string(i) + "]";
      if (!j["u"][i].is_string()) throw DescriptorError(f, "expected a word like \"-2,-1\"");
      try {
        d.u.push_back(parse_word(j["u"][i].get<std::string>()));
      } catch (const std::exception& e) {
        throw DescriptorError(f, e.what());
      }
    }
  }
  if (j.contains("N")) {
    if (!j["N"].is_string()) throw DescriptorError("N", "expected a range like \"2..8\"");
    try {
      std::tie(d.N_lo, d.N_hi) = parse_range(j["N"].get<std::string>());
    } catch (const std::exception& e) {
      throw DescriptorError("N", e.what());
    }
  }
  if (j.contains("force")) {
    if (!j["force"].is_boolean()) throw DescriptorError("force", "expected true or false");
    d.force = j["force"].get<bool>();
  }
  if (j.contains("scramble")) {
    if (!j["scramble"].is_number_unsigned()) throw DescriptorError("scramble", "expected a nonnegative seed");
    d.scramble = j["scramble"].get<std::uint64_t>();
  }
  return d;
}

Json config_json(const ExperimentSpec& s) {
  Json j;
  j["type"] = s.type.token();
  j["J"] = Json::array();
  for (int n : s.J) j["J"].push_back(n);
  j["phi"] = phi_json(s.module.phi);
  Json m;
  m["kind"] = s.module.kind;
  m["charge"] = rational_str(s.module.charge);
  if (s.module.lambda) {
    m["lambda"] = Json::array();
    for (const auto& q : s.module.lambda->h) m["lambda"].push_back(rational_str(q));
  }
  j["module"] = m;
  j["seed"] = s.seed;
  return j;
}

Degree parse_weight(const std::string& text, int rank) {
  const auto semi = text.find(';');
  const std::string fin = text.substr(0, semi);
  Degree d = Degree::zero(rank);
  std::stringstream ss(fin);
  std::string tok;
  std::vector<int> f;
  while (std::getline(ss, tok, ',')) f.push_back(std::stoi(tok));
  if (static_cast<int>(f.size()) != rank)
    throw std::invalid_argument("expected " + std::to_string(rank) + " finite coefficients in \"" + text + "\"");
  d.finite = f;
  if (semi != std::string::npos) d.delta = std::stoi(text.substr(semi + 1));
  return d;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = std::stoi(text);
    return {n, n};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

ModeWord parse_word(const std::string& text) {
  ModeWord u;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto at = tok.find('@');
    const int m = std::stoi(tok.substr(0, at));
    const int t = at == std::string::npos ? 1 : std::stoi(tok.substr(at + 1));
    if (t < 1) throw std::invalid_argument("generator index starts at 1");
    u.emplace_back(m, t - 1);
  }
  if (u.empty()) throw std::invalid_argument("empty word");
  return u;
}

std::string word_str(const ModeWord& u) {
  std::string s;
  for (const auto& [m, t] : u) {
    if (!s.empty()) s += " ";
    s += "x" + (t ? "@" + std::to_string(t + 1) : std::string()) + "(" + std::to_string(m) + ")";
  }
  return s;
}

}  // namespace affind::cli
