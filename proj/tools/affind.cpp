#include "commands.hpp"
#include "descriptor.hpp"

#include "affind/verifier.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace affind;
using namespace affind::cli;

namespace {

struct Flags {
  std::string descriptor;
  std::string type, J, phi, module, charge, lambda, weight, N;
  int D = 0, H = 0, cap = 0, bound = 0, samples = 0, kmax = 0, k = 0, depth = 0;
  std::uint64_t seed = 0, scramble = 0;
  std::vector<std::string> u;
  bool force = false;
  std::string format = "json";
  std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("descriptor", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DescriptorError("descriptor", path + ": " + e.what());
  }
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("-d,--descriptor", f.descriptor, "JSON descriptor; flags override its fields");
  app->add_option("--type", f.type, "affine type token, e.g. A2^1");
  app->add_option("--J", f.J, "comma-separated node indices, \"\" for the empty set");
  app->add_option("--phi", f.phi, "sign table: \"+\", or \"1:-,2:+,default:+\"");
  app->add_option("--module", f.module, "fock | tensor");
  app->add_option("--charge", f.charge, "central charge a, e.g. 1 or -3/2");
  app->add_option("--lambda", f.lambda, "highest weight values, comma-separated rationals");
  app->add_option("--D", f.D, "window loop-degree bound");
  app->add_option("--H", f.H, "window height bound");
  app->add_option("--cap", f.cap, "weight-space size cap, 0 for none");
  app->add_option("--window", f.D, "alias of --D");
  app->add_option("--seed", f.seed, "seed for generic weights and shuffles");
  app->add_option("--weight", f.weight, "weight offset from the top: \"c1,..,cN;d\"");
  app->add_option("--bound", f.bound, "loop-degree bound of the tested symbols");
  app->add_option("--samples", f.samples, "seeded Jacobi triples, 0 for exhaustive");
  app->add_option("--kmax", f.kmax, "largest k for G_J bases");
  app->add_option("--k", f.k, "imaginary degree k");
  app->add_option("--depth", f.depth, "probe depth");
  app->add_option("--u", f.u, "word in x-modes, e.g. \"-1\" or \"-2,-1\"; repeatable");
  app->add_option("--N", f.N, "range of N, e.g. 2..8");
  app->add_flag("--force", f.force, "run theorem2 even when its hypotheses fail");
  app->add_option("--scramble", f.scramble, "scramble N's basis with this seed before factorizing");
  app->add_option("--format", f.format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
  app->add_option("--out", f.out, "write the report to this file");
}

// Descriptor JSON from the file (if any) with the given flags layered on top.
Json layered(CLI::App* app, const Flags& f) {
  Json j = f.descriptor.empty() ? Json::object() : read_json(f.descriptor);
  const auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--type")) j["type"] = f.type;
  if (given("--J")) {
    j["J"] = Json::array();
    for (const auto& t : split(f.J, ',')) {
      try {
        j["J"].push_back(std::stoi(t));
      } catch (const std::exception&) {
        throw DescriptorError("J", "not an integer: " + t);
      }
    }
  }
  if (given("--phi")) {
    if (f.phi == "+" || f.phi == "-") {
      j["phi"] = f.phi;
    } else {
      Json p = Json::object();
      for (const auto& e : split(f.phi, ',')) {
        const auto c = e.find(':');
        if (c == std::string::npos) throw DescriptorError("phi", "entries look like 2:- or default:+");
        p[e.substr(0, c)] = e.substr(c + 1);
      }
      j["phi"] = p;
    }
  }
  if (j.contains("module") && j["module"].is_string()) j["module"] = Json{{"kind", j["module"]}};
  if (given("--module")) j["module"]["kind"] = f.module;
  if (given("--charge")) j["module"]["charge"] = f.charge;
  if (given("--lambda")) {
    j["module"]["lambda"] = Json::array();
    for (const auto& t : split(f.lambda, ',')) j["module"]["lambda"].push_back(t);
  }
  if (given("--D") || given("--window")) j["window"]["D"] = f.D;
  if (given("--H")) j["window"]["H"] = f.H;
  if (given("--cap")) j["window"]["cap"] = f.cap;
  if (given("--seed")) j["seed"] = f.seed;
  if (given("--weight")) j["weight"] = f.weight;
  if (given("--bound")) j["bound"] = f.bound;
  if (given("--samples")) j["samples"] = f.samples;
  if (given("--kmax")) j["kmax"] = f.kmax;
  if (given("--k")) j["k"] = f.k;
  if (given("--depth")) j["depth"] = f.depth;
  if (given("--u")) j["u"] = f.u;
  if (given("--N")) j["N"] = f.N;
  if (given("--force")) j["force"] = f.force;
  if (given("--scramble")) j["scramble"] = f.scramble;
  return j;
}

std::string render(const Result& r, const std::string& format) {
  if (format == "json") return r.report.dump(2) + "\n";
  std::string out;
  if (r.table.empty()) {
    for (const auto& [key, val] : r.report.items())
      out += key + "\t" + (val.is_string() ? val.get<std::string>() : val.dump()) + "\n";
    return out;
  }
  for (const auto& row : r.table) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + row[i];
    out += "\n";
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(path);
  if (!o) throw DescriptorError("out", "cannot write " + path);
  o << text;
}

Result run_suite(const Json& suite) {
  if (!suite.is_object() || !suite.contains("steps") || !suite["steps"].is_array())
    throw DescriptorError("steps", "a suite is {\"defaults\": {...}, \"steps\": [{\"command\": ...}, ...]}");
  const Json defaults = suite.value("defaults", Json::object());
  Result r;
  r.table.push_back({"step", "command", "exit", "expect", "ok"});
  Json steps = Json::array();
  bool all_ok = true, refused = false;
  for (std::size_t i = 0; i < suite["steps"].size(); ++i) {
    Json step = defaults;
    step.update(suite["steps"][i]);
    const std::string where = "steps[" + std::to_string(i) + "]";
    if (!step.contains("command") || !step["command"].is_string()) throw DescriptorError(where + ".command", "missing");
    const std::string cmd = step["command"];
    const int expect = step.value("expect", 0);
    const std::string name = step.value("name", cmd);
    Result s;
    try {
      s = run_command(cmd, parse_descriptor(step));
    } catch (const DescriptorError& e) {
      throw DescriptorError(where + "." + e.field(), e.detail());
    } catch (const std::exception& e) {
      s.report = Json{{"error", e.what()}};
      s.exit = kInconclusive;
    }
    const bool ok = s.exit == expect;
    all_ok = all_ok && ok;
    refused = refused || (!ok && s.exit == kInconclusive);
    r.table.push_back({name, cmd, std::to_string(s.exit), std::to_string(expect), ok ? "yes" : "no"});
    steps.push_back(Json{{"name", name}, {"command", cmd}, {"exit", s.exit}, {"expect", expect}, {"ok", ok}, {"report", s.report}});
  }
  r.report = Json{{"steps", steps}, {"verdict", all_ok ? "PASS" : "FAIL"}};
  r.exit = all_ok ? kPass : refused ? kInconclusive : kFail;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with generalized imaginary Verma modules of affine Lie algebras.\n"
               "Exit codes: 0 pass, 1 fail or counterexample, 2 inconclusive, refusal or usage error.\n"
               "AFFIND_THREADS sets the number of worker threads."};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> about{
      {"roots", "list the roots of a window with their classification"},
      {"algebra-check", "antisymmetry, Jacobi and grading of the bracket on a window"},
      {"parabolic", "tag the basis symbols and certify the decomposition"},
      {"induce", "weight spaces and freeness of M_J(N)"},
      {"character", "weight multiplicities, enumeration against partition count"},
      {"invariants", "n_J-invariants of one weight space"},
      {"theorem2", "invariants equal the top on every window weight"},
      {"lemma-heis", "z_N = x_N v + sum x_{N-k} u v is nonzero for N or -N"},
      {"admissible", "surjectivity evidence for cyclic submodules of a Fock module"},
      {"probe-irreducible", "drive every window vector back to the top"},
      {"factorize", "recover N = V (x) W from action tables"}};
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    add_common(sub, f);
    subs[name] = sub;
  }
  std::string suite_path;
  auto* suite = app.add_subcommand("suite", "run the steps of a suite descriptor");
  suite->add_option("file", suite_path, "suite JSON")->required();
  suite->add_option("--format", f.format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
  suite->add_option("--out", f.out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInconclusive;
  }
  try {
    Result r;
    if (suite->parsed()) {
      r = run_suite(read_json(suite_path));
    } else {
      for (const auto& [name, sub] : subs)
        if (sub->parsed()) {
          Json j = layered(sub, f);
          if (j.contains("command")) j.erase("command");
          if (j.contains("expect")) j.erase("expect");
          r = run_command(name, parse_descriptor(j));
        }
    }
    emit(render(r, f.format), f.out);
    return r.exit;
  } catch (const DescriptorError& e) {
    std::cerr << "affind: usage error: " << e.what() << "\n";
  } catch (const Refusal& e) {
    std::cerr << "affind: refused: " << e.what() << "\n";
  } catch (const NotSupported& e) {
    std::cerr << "affind: not supported: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "affind: usage error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "affind: error: " << e.what() << "\n";
  }
  return kInconclusive;
}
