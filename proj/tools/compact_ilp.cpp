#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "compact_ilp/corpus.hpp"
#include "compact_ilp/errors.hpp"
#include "compact_ilp/exact.hpp"
#include "compact_ilp/generate.hpp"
#include "compact_ilp/modelers.hpp"
#include "compact_ilp/program_io.hpp"
#include "compact_ilp/protocols.hpp"
#include "compact_ilp/solve.hpp"

namespace ci = compact_ilp;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ci::UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ci::UsageError("cannot write '" + path + "'");
  out << data;
}

void emit(const Json& j) { std::cout << j.dump() << std::endl; }

/// Terminates the process with the budget exit code if the guarded scope
/// outlives COMPACT_ILP_BUDGET_MS.
class BudgetWatchdog {
 public:
  BudgetWatchdog() {
    const char* env = std::getenv("COMPACT_ILP_BUDGET_MS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long long ms = std::strtoll(env, &end, 10);
    if (*end != '\0' || ms <= 0) throw ci::UsageError("COMPACT_ILP_BUDGET_MS must be a positive integer");
    deadline_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    thread_ = std::thread([this, ms] {
      std::unique_lock lock(mutex_);
      if (!cv_.wait_until(lock, *deadline_, [this] { return done_; })) {
        std::cerr << "error: time budget of " << ms << " ms exceeded" << std::endl;
        std::cout.flush();
        std::_Exit(kExitBudget);
      }
    });
  }
  ~BudgetWatchdog() {
    if (!thread_.joinable()) return;
    {
      std::lock_guard lock(mutex_);
      done_ = true;
    }
    cv_.notify_all();
    thread_.join();
  }
  std::optional<std::chrono::steady_clock::time_point> deadline() const { return deadline_; }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::thread thread_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool done_ = false;
};

Json to_json_list(const std::vector<ci::Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(ci::to_string(v));
  return out;
}

// ---- reduce ----------------------------------------------------------------

struct ReduceArgs {
  std::string input, variant, format = "canonical-json", output, sidecar;
  bool binary = false;
};

int cmd_reduce(const ReduceArgs& a) {
  const std::string text = read_file(a.input);
  ci::IntegerProgram program;
  Json sidecar;
  if (a.variant == "set-cover") {
    const auto inst = std::get<ci::SetCoverInstance>(ci::parse_instance(text, ci::Variant::SetCover));
    program = ci::set_cover_to_ilp(inst, a.binary);
    sidecar["k_source"] = inst.universe_size;
  } else if (a.variant == "wvc-milp" || a.variant == "wvc-binary") {
    const auto inst = std::get<ci::WvcInstance>(ci::parse_instance(text, ci::Variant::Wvc));
    const auto cover = ci::vc_2approx(inst.graph);
    program = a.variant == "wvc-milp" ? ci::wvc_to_milp(inst, cover) : ci::wvc_to_binary_ilp(inst, cover);
    std::vector<ci::BigInt> unit(inst.graph.num_vertices(), ci::BigInt(1));
    sidecar["k_source"] = inst.graph.num_vertices() <= 20 ? ci::min_weight_vertex_cover(inst.graph, unit).str()
                                                          : std::to_string(cover.vertices.size() / 2);
    sidecar["y"] = cover.vertices.size();
  } else {
    throw ci::UsageError("reduce --variant must be set-cover, wvc-milp or wvc-binary");
  }
  const auto stats = ci::compute_delta(program);
  Json meta;
  meta["m"] = program.num_constraints;
  meta["n"] = program.num_vars;
  meta["delta"] = stats.delta_a.str();
  meta["b_inf"] = stats.b_inf_norm.str();
  meta["k_source"] = sidecar["k_source"];
  meta["integral"] = program.integral_count();
  if (sidecar.contains("y")) meta["y"] = sidecar["y"];
  const std::string body = ci::export_program(program, ci::parse_program_format(a.format));
  std::string sidecar_path = a.sidecar;
  if (sidecar_path.empty() && !a.output.empty()) sidecar_path = a.output + ".sidecar.json";
  if (!sidecar_path.empty()) write_file(sidecar_path, meta.dump(1) + "\n");
  if (a.output.empty()) {
    std::cout << body;
    std::cerr << "m=" << meta["m"] << " n=" << meta["n"] << " delta=" << stats.delta_a << std::endl;
  } else {
    write_file(a.output, body);
    Json out;
    out["program"] = a.output;
    out["sidecar"] = meta;
    emit(out);
  }
  return kExitOk;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string input, format = "canonical-json", engine = "milp", certificate, l1_cap, cap;
};

int cmd_solve(const SolveArgs& a) {
  ci::IntegerProgram program = ci::import_program(read_file(a.input), ci::parse_program_format(a.format));
  std::optional<ci::BigInt> l1_cap;
  if (!a.l1_cap.empty()) {
    ci::BigInt v;
    if (!ci::parse_bigint(a.l1_cap, v) || v <= 0) throw ci::UsageError("--l1-cap must be a positive integer");
    l1_cap = v;
  }
  BudgetWatchdog watchdog;
  ci::SolveResult result;
  const std::size_t original_vars = program.num_vars;
  if (a.engine == "lattice") {
    if (program.sense == ci::Sense::LessEq) {
      if (!program.is_standard_without_upper_bounds())
        throw ci::UsageError("lattice engine needs a program without upper bounds");
      std::cerr << "notice: converting to equality form with " << program.num_constraints << " slack variables"
                << std::endl;
      program = ci::to_equality_form(program);
    }
    ci::LatticeOptions options;
    options.l1_cap = l1_cap;
    result = ci::lattice_feasibility(program, options);
  } else if (a.engine == "brute") {
    ci::BigInt cap;
    if (!a.cap.empty()) {
      if (!ci::parse_bigint(a.cap, cap) || cap < 0) throw ci::UsageError("--cap must be a non-negative integer");
    } else if (l1_cap) {
      cap = *l1_cap;
    } else {
      const auto stats = ci::compute_delta(program);
      cap = ci::radius_from_bounds(std::max<std::size_t>(1, program.num_constraints),
                                   std::max(stats.delta_a, ci::BigInt(1)), stats.b_inf_norm)
                .l1_cap;
    }
    result = ci::brute_force_feasibility(program, cap);
  } else if (a.engine == "milp") {
    result = ci::milp_feasibility(program);
  } else {
    throw ci::UsageError("--engine must be brute, lattice or milp");
  }
  Json out;
  out["status"] = ci::to_string(result.status);
  out["engine"] = a.engine;
  out["nodes"] = result.stats.nodes;
  if (result.certificate) {
    std::vector<ci::Rational> cert(result.certificate->begin(),
                                   result.certificate->begin() + static_cast<std::ptrdiff_t>(original_vars));
    out["certificate"] = to_json_list(cert);
    if (!a.certificate.empty()) {
      Json c;
      c["status"] = out["status"];
      c["x"] = out["certificate"];
      write_file(a.certificate, c.dump(1) + "\n");
    }
  }
  emit(out);
  std::cerr << ci::to_string(result.status) << " (" << result.stats.nodes << " nodes)" << std::endl;
  return kExitOk;
}

// ---- protocol --------------------------------------------------------------

struct ProtocolArgs {
  std::string action, input, variant, witness;
  std::size_t max_ell = 24, samples = 256;
  std::uint64_t seed = 1;
  bool witness_given = false;
};

int cmd_protocol(const ProtocolArgs& a) {
  const std::string text = read_file(a.input);
  const ci::ProblemInstance inst =
      a.variant.empty() ? ci::parse_instance(text) : ci::parse_instance(text, ci::parse_variant(a.variant));
  const auto protocol = ci::make_protocol(ci::variant_of(inst));
  BudgetWatchdog watchdog;
  if (a.action == "run") {
    if (!a.witness_given) throw ci::UsageError("protocol run needs --witness <hex>");
    const auto pre = protocol->preprocess(inst);
    const auto verifier = protocol->load(pre.advice);
    const auto bits = ci::BitString::from_hex(a.witness, pre.ell);
    Json out;
    out["protocol"] = protocol->name();
    out["ell"] = pre.ell;
    for (auto& [k, v] : verifier->verify(bits).to_json().items()) out[k] = v;
    emit(out);
    std::cerr << protocol->name() << ": " << out["verdict"].get<std::string>() << std::endl;
    return kExitOk;
  }
  if (a.action == "enumerate") {
    const auto r = ci::enumerate_decide(*protocol, inst, a.max_ell, watchdog.deadline());
    Json out;
    out["protocol"] = protocol->name();
    out["verdict"] = r.yes ? "yes" : "no";
    out["witness"] = r.witness ? Json(r.witness->to_hex()) : Json(nullptr);
    out["ell"] = r.ell;
    out["evaluated"] = r.evaluated;
    emit(out);
    std::cerr << protocol->name() << ": " << (r.yes ? "yes" : "no") << " after " << r.evaluated << " witnesses"
              << std::endl;
    return kExitOk;
  }
  if (a.action == "audit") {
    std::vector<ci::BitString> extra;
    const auto ell = protocol->preprocess(inst).ell;
    if (a.witness_given) {
      extra.push_back(ci::BitString::from_hex(a.witness, ell));
    } else if (ell <= std::min<std::size_t>(a.max_ell, 20)) {
      const auto r = ci::enumerate_decide(*protocol, inst, a.max_ell, watchdog.deadline());
      if (r.witness) extra.push_back(*r.witness);
    }
    const auto report = ci::audit_costs(*protocol, inst, extra, 16, a.samples, a.seed);
    emit(report.to_json());
    std::cerr << protocol->name() << ": ell " << report.ell << " (formula " << report.ell_formula << "), max calls "
              << report.calls << " (budget " << report.call_budget << ") over " << report.witnesses << " witnesses"
              << std::endl;
    for (const auto& f : report.failures) std::cerr << "audit failure: " << f << std::endl;
    return report.ok() ? kExitOk : kExitCheckFailed;
  }
  throw ci::UsageError("protocol action must be run, enumerate or audit");
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string variant, mode = "random", output, manifest;
  std::size_t size = 0, param = 0, extra = 0, max_ell = 20;
  std::uint32_t density = 50;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a) {
  if (!a.manifest.empty()) {
    const auto entries = ci::default_corpus(a.max_ell);
    write_file(a.manifest, ci::write_manifest(entries));
    Json out;
    out["manifest"] = a.manifest;
    out["entries"] = entries.size();
    emit(out);
    return kExitOk;
  }
  if (a.variant.empty()) throw ci::UsageError("gen needs --variant (or --manifest)");
  if (a.density > 100) throw ci::UsageError("--density is a percentage");
  ci::GenSpec spec{ci::parse_variant(a.variant), ci::parse_gen_mode(a.mode), a.size, a.param, a.extra, a.density,
                   a.seed};
  const std::string text = ci::write_instance(ci::generate(spec));
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_file(a.output, text);
    Json out;
    out["instance"] = a.output;
    out["spec"] = ci::spec_to_json(spec);
    emit(out);
  }
  return kExitOk;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string corpus;
  std::size_t max_ell = 24;
};

int cmd_check(const CheckArgs& a) {
  const auto entries = ci::parse_manifest(read_file(a.corpus));
  BudgetWatchdog watchdog;
  ci::CheckOptions options;
  options.max_ell = a.max_ell;
  options.deadline = watchdog.deadline();
  const auto summary = ci::run_check(entries, options);
  if (entries.empty()) std::cerr << "warning: manifest has no entries" << std::endl;
  Json families = Json::object();
  for (const auto& [name, c] : summary.families) {
    families[name] = {{"passed", c.passed}, {"failed", c.failed}};
    std::cerr << name << ": " << c.passed << " passed, " << c.failed << " failed" << std::endl;
  }
  for (const auto& f : summary.failures) std::cerr << "FAIL " << f << std::endl;
  Json out;
  out["verdict"] = summary.ok() ? "pass" : "fail";
  out["total"] = summary.total();
  out["failures"] = summary.failures.size();
  out["families"] = families;
  emit(out);
  return summary.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact integer programs, exact solvers and witness verification protocols"};
  app.require_subcommand(1);

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Model an instance as an integer program");
  r->add_option("instance", reduce.input, "Instance file")->required();
  r->add_option("--variant", reduce.variant, "set-cover | wvc-milp | wvc-binary")->required();
  r->add_flag("--binary", reduce.binary, "Give set-cover variables upper bound 1");
  r->add_option("--format", reduce.format, "canonical-json | lp | mps");
  r->add_option("-o,--output", reduce.output, "Program file (default: stdout)");
  r->add_option("--sidecar", reduce.sidecar, "Sidecar JSON path (default: <output>.sidecar.json)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Decide feasibility of a program");
  s->add_option("program", solve.input, "Program file")->required();
  s->add_option("--format", solve.format, "canonical-json | lp | mps");
  s->add_option("--engine", solve.engine, "brute | lattice | milp");
  s->add_option("--l1-cap", solve.l1_cap, "Override the lattice search radius");
  s->add_option("--cap", solve.cap, "Per-variable box for the brute engine");
  s->add_option("-o,--certificate", solve.certificate, "Certificate JSON path");

  ProtocolArgs proto;
  auto* p = app.add_subcommand("protocol", "Run, enumerate or audit a witness verification protocol");
  p->add_option("action", proto.action, "run | enumerate | audit")->required();
  p->add_option("instance", proto.input, "Instance file")->required();
  p->add_option("--variant", proto.variant, "Expected problem name");
  auto* w = p->add_option("--witness", proto.witness, "Witness bits as hex (run; audit adds it to the sample)");
  p->add_option("--max-ell", proto.max_ell, "Enumeration guard on the witness length");
  p->add_option("--samples", proto.samples, "Random witnesses per audit");
  p->add_option("--seed", proto.seed, "Audit sampling seed");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate an instance or the default corpus manifest");
  g->add_option("--variant", gen.variant, "Problem name");
  g->add_option("--mode", gen.mode, "random | planted | no");
  g->add_option("--size", gen.size, "Vertices, universe, string length or points");
  g->add_option("--param", gen.param, "k or l");
  g->add_option("--extra", gen.extra, "|F|, max weight, r, |T|, alphabet or grid side");
  g->add_option("--density", gen.density, "Edge probability in percent");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("-o,--output", gen.output, "Instance file (default: stdout)");
  g->add_option("--manifest", gen.manifest, "Write the default corpus manifest here");
  g->add_option("--max-ell", gen.max_ell, "Largest witness length admitted to the corpus");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Run the differential contract over a corpus manifest");
  c->add_option("--corpus", check.corpus, "Manifest JSON")->required();
  c->add_option("--max-ell", check.max_ell, "Enumeration guard on the witness length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (r->parsed()) return cmd_reduce(reduce);
    if (s->parsed()) return cmd_solve(solve);
    if (p->parsed()) {
      proto.witness_given = w->count() > 0;
      return cmd_protocol(proto);
    }
    if (g->parsed()) return cmd_gen(gen);
    if (c->parsed()) return cmd_check(check);
  } catch (const ci::BudgetError& e) {
    std::cerr << "budget: " << e.what() << std::endl;
    return kExitBudget;
  } catch (const ci::ParseError& e) {
    std::cerr << "parse error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const ci::InvariantError& e) {
    std::cerr << "invalid input: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const ci::UsageError& e) {
    std::cerr << "usage: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitCheckFailed;
  }
  return kExitUsage;
}
