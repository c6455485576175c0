#include "commands.hpp"

#include "affind/verifier.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace affind::cli {

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

Json window_json(const TruncationWindow& w) { return Json{{"D", w.D}, {"H", w.H}, {"cap", w.cap}}; }

std::vector<LabelId> all_labels(const WeightModule& m, const TruncationWindow& w) {
  std::vector<LabelId> out;
  for (const auto& [mu, ids] : m.window_basis(w).spaces) out.insert(out.end(), ids.begin(), ids.end());
  return out;
}

Result roots(const Descriptor& d) {
  const AffineRootSystem rs(d.spec.type);
  Result r;
  r.table.push_back({"root", "delta", "class", "half"});
  Json list = Json::array();
  for (const auto& a : rs.roots_window(d.spec.window.D)) {
    const RootClass c = rs.classify(a);
    bool half = !is_integer(a.delta);
    for (Eigen::Index i = 0; i < a.finite.size(); ++i) half = half || !is_integer(a.finite(i));
    r.table.push_back({a.str(), to_string(a.delta), std::string(to_string(c)), yes(half)});
    list.push_back(Json{{"root", a.str()}, {"delta", to_string(a.delta)}, {"class", to_string(c)}, {"half", half}});
  }
  r.report = Json{{"type", d.spec.type.token()}, {"delta_bound", d.spec.window.D}, {"count", list.size()}, {"roots", list}};
  return r;
}

Result algebra_check(const Descriptor& d) {
  const LoopAlgebra g(d.spec.type);
  const auto rep = lie_axiom_check(g, d.bound, d.samples, d.spec.seed);
  Result r;
  r.report = Json{{"type", d.spec.type.token()},
                  {"bound", d.bound},
                  {"jacobi", d.samples ? "sampled" : "exhaustive"},
                  {"pairs", rep.pairs},
                  {"triples", rep.triples},
                  {"antisymmetry_failures", rep.antisymmetry_failures},
                  {"jacobi_failures", rep.jacobi_failures},
                  {"grading_failures", rep.grading_failures},
                  {"first_failure", rep.first_failure},
                  {"verdict", rep.ok() ? "PASS" : "FAIL"}};
  r.exit = rep.ok() ? kPass : kFail;
  return r;
}

Result parabolic(const Descriptor& d) {
  const LoopAlgebra g(d.spec.type);
  const Parabolic p(g, d.spec.J);
  Result r;
  r.table.push_back({"symbol", "tag"});
  for (const auto& s : g.basis_window(d.bound)) r.table.push_back({g.str(s), std::string(to_string(p.classify(s)))});
  Json comps = Json::array();
  for (const auto& c : p.components()) comps.push_back(to_string(c));
  Json gj = Json::object();
  for (int k = 1; k <= d.kmax; ++k) {
    Json row = Json::array();
    for (const auto& x : p.gj_basis(k)) row.push_back(g.str(x));
    gj[std::to_string(k)] = row;
  }
  const auto cert = decomposition_certificates(p, d.bound, d.kmax);
  r.report = Json{{"type", d.spec.type.token()},
                  {"J", to_string(d.spec.J)},
                  {"components", comps},
                  {"gj_basis", gj},
                  {"certificates",
                   {{"checks", cert.checks},
                    {"nJ_closed", cert.nj_closed},
                    {"nJbar_closed", cert.njbar_closed},
                    {"levi_closed", cert.levi_closed},
                    {"gj_commutes_with_levi", cert.gj_commutes},
                    {"gj_orthogonal", cert.orthogonal},
                    {"dimensions", cert.dims},
                    {"first_failure", cert.first_failure}}},
                  {"verdict", cert.ok() ? "PASS" : "FAIL"}};
  r.exit = cert.ok() ? kPass : kFail;
  return r;
}

Result induce(const Descriptor& d) {
  const Experiment e(d.spec);
  const auto& M = *e.M();
  const auto& w = d.spec.window;
  const WindowBasis& b = M.window_basis(w);
  const auto free = freeness_check(M, w, d.spec.seed);
  const auto syms = e.algebra().basis_window(d.bound);
  const auto rep = representation_check(M, syms, syms, all_labels(M, w));
  Result r;
  r.table.push_back({"weight", "dim"});
  Json spaces = Json::array();
  for (const auto& [mu, ids] : b.spaces) {
    r.table.push_back({mu.weight_str(), std::to_string(ids.size())});
    spaces.push_back(Json{{"weight", mu.weight_str()}, {"dim", ids.size()}});
  }
  const bool ok = free.free && rep.ok() && !b.overflow;
  r.report = Json{{"config", config_json(d.spec)},
                  {"window", window_json(w)},
                  {"module", M.name()},
                  {"total", b.total()},
                  {"overflow", b.overflow},
                  {"spaces", spaces},
                  {"freeness", {{"free", free.free}, {"spaces", free.spaces}, {"vectors", free.vectors}}},
                  {"representation",
                   {{"bound", d.bound}, {"checks", rep.checks}, {"failures", rep.failures}, {"first_failure", rep.first_failure}}},
                  {"verdict", ok ? "PASS" : "FAIL"}};
  r.exit = b.overflow ? kInconclusive : ok ? kPass : kFail;
  return r;
}

Result character_cmd(const Descriptor& d) {
  const Experiment e(d.spec);
  const auto& w = d.spec.window;
  const Character ch = character(*e.M(), w);
  const Character en = character_from(e.M()->window_basis(w));
  Result r;
  r.table.push_back({"weight", "dim", "enumerated"});
  Json rows = Json::array();
  std::map<Degree, std::pair<long, long>> all;
  for (const auto& [mu, n] : ch) all[mu].first = n;
  for (const auto& [mu, n] : en) all[mu].second = n;
  bool agree = true;
  for (const auto& [mu, nn] : all) {
    agree = agree && nn.first == nn.second;
    r.table.push_back({mu.weight_str(), std::to_string(nn.first), std::to_string(nn.second)});
    rows.push_back(Json{{"weight", mu.weight_str()}, {"dim", nn.first}, {"enumerated", nn.second}});
  }
  r.report = Json{{"config", config_json(d.spec)}, {"window", window_json(w)}, {"character", rows},
                  {"verdict", agree ? "PASS" : "FAIL"}};
  r.exit = agree ? kPass : kFail;
  return r;
}

Result invariants_cmd(const Descriptor& d) {
  if (!d.weight) throw DescriptorError("weight", "invariants needs a weight like \"-1;-1\"");
  const Experiment e(d.spec);
  const auto s = invariants(*e.M(), e.parabolic(), *d.weight, d.spec.window);
  Result r;
  Json kernel = Json::array();
  for (const auto& v : s.kernel) kernel.push_back(str(*e.M(), v));
  r.report = Json{{"config", config_json(d.spec)},
                  {"window", window_json(d.spec.window)},
                  {"weight", d.weight->weight_str()},
                  {"dim_space", s.space.size()},
                  {"dim_invariants", s.kernel.size()},
                  {"generators_used", s.generators},
                  {"verified", s.verified},
                  {"kernel", kernel}};
  r.exit = s.verified ? kPass : kFail;
  return r;
}

Json theorem2_json(const Theorem2Report& t) {
  Json pw = Json::array();
  for (const auto& w : t.per_weight)
    pw.push_back(Json{{"weight", w.weight.weight_str()},
                      {"dim_space", w.dim_space},
                      {"dim_invariants", w.dim_invariants},
                      {"expected_top_dim", w.expected_top_dim},
                      {"pass", w.pass}});
  Json j{{"window", window_json(t.window)},
         {"per_weight", pw},
         {"verdict", to_string(t.verdict)},
         {"reason", t.reason},
         {"clip_stats", {{"generators", t.clip.generators}, {"products", t.clip.products}, {"overflow", t.clip.overflow}, {"clipped", 0}}}};
  if (!t.witness.empty()) j["witness"] = t.witness;
  return j;
}

int verdict_exit(Verdict v) { return v == Verdict::Pass ? kPass : v == Verdict::Fail ? kFail : kInconclusive; }

Result theorem2(const Descriptor& d) {
  const Experiment e(d.spec);
  const auto t = theorem2_report(*e.M(), e.parabolic(), d.spec.window, d.force);
  Result r;
  r.report = Json{{"config", config_json(d.spec)}};
  r.report.update(theorem2_json(t));
  r.table.push_back({"weight", "dim_space", "dim_invariants", "expected_top_dim", "pass"});
  for (const auto& w : t.per_weight)
    r.table.push_back({w.weight.weight_str(), std::to_string(w.dim_space), std::to_string(w.dim_invariants),
                       std::to_string(w.expected_top_dim), yes(w.pass)});
  r.exit = verdict_exit(t.verdict);
  return r;
}

Result lemma_heis(const Descriptor& d) {
  if (d.spec.module.charge.is_zero()) throw DescriptorError("module.charge", "lemma-heis needs a nonzero charge");
  const LoopAlgebra g(d.spec.type);
  auto W = FockModule::full(g, {d.spec.module.charge, d.spec.module.phi});
  std::vector<ModeWord> us = d.u;
  const auto rep = lemma_heis_check(*W, W->top(), us, d.N_lo, d.N_hi);
  Result r;
  Json ulist = Json::array();
  for (const auto& u : us) ulist.push_back(Json{{"word", word_str(u)}, {"degree", word_degree(u)}});
  Json rows = Json::array();
  r.table.push_back({"N", "z_N_nonzero", "z_minus_N_nonzero", "holds"});
  for (const auto& row : rep.rows) {
    rows.push_back(Json{{"N", row.N}, {"z_N_nonzero", row.plus_nonzero}, {"z_minus_N_nonzero", row.minus_nonzero}, {"holds", row.holds()}});
    r.table.push_back({std::to_string(row.N), yes(row.plus_nonzero), yes(row.minus_nonzero), yes(row.holds())});
  }
  r.report = Json{{"config", config_json(d.spec)}, {"v", W->label(W->top())}, {"u", ulist}, {"rows", rows},
                  {"verdict", rep.holds ? "PASS" : "FAIL"}};
  r.exit = rep.holds ? kPass : kFail;
  return r;
}

Result admissible(const Descriptor& d) {
  const Experiment e(d.spec);
  const auto rep = admissible_probe(*e.W(), d.k, d.depth);
  Result r;
  Json cyc = Json::array();
  r.table.push_back({"generator", "dim", "escaped", "plus", "minus"});
  for (const auto& c : rep.cyclic) {
    cyc.push_back(Json{{"generator", c.generator}, {"dim", c.dim}, {"escaped", c.escaped}, {"plus", c.plus}, {"minus", c.minus},
                       {"failing_pair", c.failing_pair}});
    r.table.push_back({c.generator, std::to_string(c.dim), yes(c.escaped), yes(c.plus), yes(c.minus)});
  }
  r.report = Json{{"config", config_json(d.spec)}, {"k", rep.k}, {"depth", rep.depth}, {"verdict", to_string(rep.verdict)},
                  {"direction", rep.direction}, {"cyclic", cyc}};
  r.exit = rep.verdict == AdmissibleVerdict::EvidenceAdmissible ? kPass
           : rep.verdict == AdmissibleVerdict::Counterexample   ? kFail
                                                                 : kInconclusive;
  return r;
}

Result probe(const Descriptor& d) {
  const Experiment e(d.spec);
  const auto rep = irreducibility_probe(*e.M(), e.parabolic(), d.spec.window);
  Result r;
  r.report = Json{{"config", config_json(d.spec)},
                  {"window", window_json(d.spec.window)},
                  {"verdict", to_string(rep.verdict)},
                  {"trivial_window", rep.trivial_window},
                  {"vectors", rep.vectors},
                  {"descents", rep.descents},
                  {"witness", rep.witness},
                  {"certificate", rep.certificate},
                  {"reason", rep.reason},
                  {"theorem2", theorem2_json(rep.theorem2)}};
  r.exit = rep.verdict == Irreducibility::IrreducibleAtWindow    ? kPass
           : rep.verdict == Irreducibility::ReducibleWithWitness ? kFail
                                                                  : kInconclusive;
  return r;
}

Result factorize(const Descriptor& d) {
  const Experiment e(d.spec);
  const auto& w = d.spec.window;
  std::shared_ptr<const WeightModule> N = e.N();
  if (d.scramble) N = std::make_shared<ScrambledModule>(N, w, *d.scramble);
  const auto rep = tensor_factorize(*N, e.parabolic(), w);
  Result r;
  Json slices = Json::array();
  r.table.push_back({"weight", "dim", "pairs", "rank", "injective", "surjective"});
  for (const auto& s : rep.slices) {
    slices.push_back(Json{{"weight", s.weight.weight_str()}, {"dim", s.dim}, {"pairs", s.pairs}, {"rank", s.rank},
                          {"injective", s.injective}, {"surjective", s.surjective}});
    r.table.push_back({s.weight.weight_str(), std::to_string(s.dim), std::to_string(s.pairs), std::to_string(s.rank),
                       yes(s.injective), yes(s.surjective)});
  }
  Json vd = Json::object(), wd = Json::object();
  for (const auto& [mu, n] : rep.V_dims) vd[mu.weight_str()] = n;
  for (const auto& [mu, n] : rep.W_dims) wd[mu.weight_str()] = n;
  r.report = Json{{"config", config_json(d.spec)}, {"window", window_json(w)}, {"module", N->name()}, {"v", rep.v},
                  {"V_dims", vd}, {"W_dims", wd}, {"slices", slices}, {"verdict", rep.full_rank ? "PASS" : "FAIL"}};
  r.exit = rep.full_rank ? kPass : kFail;
  return r;
}

const std::map<std::string, std::function<Result(const Descriptor&)>>& table() {
  static const std::map<std::string, std::function<Result(const Descriptor&)>> t{
      {"roots", roots},           {"algebra-check", algebra_check}, {"parabolic", parabolic},
      {"induce", induce},         {"character", character_cmd},     {"invariants", invariants_cmd},
      {"theorem2", theorem2},     {"lemma-heis", lemma_heis},       {"admissible", admissible},
      {"probe-irreducible", probe}, {"factorize", factorize}};
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"roots",      "algebra-check", "parabolic",  "induce",
                                              "character",  "invariants",    "theorem2",   "lemma-heis",
                                              "admissible", "probe-irreducible", "factorize"};
  return names;
}

Result run_command(const std::string& name, const Descriptor& d) {
  auto it = table().find(name);
  if (it == table().end()) throw DescriptorError("command", "unknown command \"" + name + "\"");
  return it->second(d);
}

}  // namespace affind::cli
