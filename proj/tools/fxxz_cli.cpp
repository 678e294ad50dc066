// Copyright 2026 The fxxz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// fxxz: command-line front end for the oracle, circuit builders, simulator,
// router and mitigation.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fxxz/abc.hpp"
#include "fxxz/domainwall.hpp"
#include "fxxz/experiment.hpp"
#include "fxxz/hardrod.hpp"
#include "fxxz/mitigation.hpp"
#include "fxxz/pipeline.hpp"
#include "fxxz/routing.hpp"
#include "fxxz/sim.hpp"
#include "fxxz/verify.hpp"

#ifndef FXXZ_DATA_DIR
#define FXXZ_DATA_DIR "data"
#endif

using nlohmann::json;
using namespace fxxz;
namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;

struct Globals {
  std::uint64_t seed = 42;
  bool seed_set = false;
  std::string out_dir = ".";
  std::string format;  // empty: from the output extension, else json
};
Globals g;

struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolve(const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(g.out_dir) / path).string();
}

bool want_csv(const std::string& out, bool csv_default = false) {
  if (!g.format.empty()) return g.format == "csv";
  if (!out.empty()) return fs::path(out).extension() == ".csv";
  return csv_default;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  const std::string p = resolve(path);
  if (fs::path(p).has_parent_path()) fs::create_directories(fs::path(p).parent_path());
  std::ofstream f(p);
  if (!f) throw ValidationError("cannot write " + p);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  std::cerr << "wrote " << p << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read " + path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Circuit load_circuit(const std::string& path) { return circuit_from_json(read_file(path)); }

Circuit compiled(const Circuit& c) {
  for (const auto& gate : c.gates())
    if (!gate.is_elementary()) return compile(c);
  return c;
}

json census_json(const GateCensus& c) {
  return {{"rz", c.rz()},
          {"rz_non_clifford", c.rz_nonclifford},
          {"rz_clifford", c.rz_clifford},
          {"rx90", c.rx90},
          {"x", c.x},
          {"cnot", c.cnot},
          {"single_qubit_clifford", c.single_qubit_clifford()},
          {"total", c.total()},
          {"depth", c.depth}};
}

std::string census_csv(const GateCensus& c) {
  return fmt::format("rz,rz_non_clifford,rz_clifford,rx90,x,cnot,single_qubit_clifford,total,depth\n{},{},{},{},{},{},{},{},{}\n",
                     c.rz(), c.rz_nonclifford, c.rz_clifford, c.rx90, c.x, c.cnot, c.single_qubit_clifford(),
                     c.total(), c.depth);
}

json kinds_json(const Circuit& c) {
  json j = json::object();
  for (const auto& [k, n] : kind_counts(c)) j[kind_name(k)] = n;
  return j;
}

std::string dump(const json& j) { return j.dump(2); }

// Physical register size and readout order of a circuit file, optionally
// overridden by a routing report.
struct Readout {
  int n_phys = 0;
  std::vector<int> order;
};

Readout readout_for(const Circuit& c, const std::string& report, int n_phys) {
  Readout r;
  if (!report.empty()) {
    json j;
    try {
      j = json::parse(read_file(report));
      r.order = j.at("readout_order").get<std::vector<int>>();
      r.n_phys = j.value("n_phys", 0);
    } catch (const json::exception& e) {
      throw ValidationError("bad routing report " + report + ": " + e.what());
    }
  } else if (c.has_register("phys")) {
    r.n_phys = c.reg("phys").size;
  }
  if (n_phys > 0) r.n_phys = n_phys;
  if (r.n_phys <= 0) throw ValidationError("cannot tell the physical register size; pass --n-phys");
  return r;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ------------------------------------------------------------- oracle

struct EigenOpts {
  int n = 0;
  std::vector<int> modes, walls;
  std::string out;
};

void cmd_eigenstate(const EigenOpts& o) {
  const DomainWallConfig dw{o.walls, static_cast<int>(o.modes.size())};
  dw.validate(o.n);
  const MomentumSet ms{o.modes, o.n + 1 - dw.magnons - dw.count()};
  ms.validate();
  const Amplitudes psi = folded_eigenstate(ms, dw, ChainSpec{o.n});
  json arr = json::array();
  for (const auto& [b, a] : psi) arr.push_back({{"bits", b}, {"re", a.real()}, {"im", a.imag()}});
  double q1 = 0, q2 = 0;
  for (const auto& [b, a] : psi) {
    q1 += std::norm(a) * charge_q1(b);
    q2 += std::norm(a) * charge_q2(b);
  }
  std::cerr << fmt::format("label {}  dimension {}  E {:.10f}  Q1 {:.6f}  Q2 {:.6f}\n",
                           fragment_label(psi.begin()->first), binomial(ms.n0, dw.magnons), energy_of(ms), q1, q2);
  emit(o.out, dump(arr));
}

struct FragmentOpts {
  int n = 0;
  std::string out;
};

void cmd_fragments(const FragmentOpts& o) {
  const auto labels = all_fragment_labels(o.n);
  if (want_csv(o.out, true)) {
    std::string s = "label,dimension,Q1,Q2,D,M\n";
    for (const auto& l : labels) {
      const LabelInfo info = parse_label(l);
      s += fmt::format("{},{},{},{},{},{}\n", l, enumerate_fragment(l).size(), charge_q1(l), charge_q2(l),
                       info.walls.count(), info.magnons);
    }
    emit(o.out, s);
  } else {
    json arr = json::array();
    for (const auto& l : labels) {
      const LabelInfo info = parse_label(l);
      arr.push_back({{"label", l},
                     {"dimension", enumerate_fragment(l).size()},
                     {"Q1", charge_q1(l)},
                     {"Q2", charge_q2(l)},
                     {"D", info.walls.count()},
                     {"M", info.magnons}});
    }
    emit(o.out, dump(arr));
  }
}

// ------------------------------------------------------------- builders

struct AbcOpts {
  int n0 = 0;
  std::vector<int> modes;
  std::string dump_circuit;
};

void cmd_abc(const AbcOpts& o) {
  const MomentumSet ms{o.modes, o.n0};
  ms.validate();
  const AbcCircuit abc = build_abc(ms);
  const auto out = from_dense(run_gates(abc.circuit.gates(), abc.circuit.initial_bits()), o.n0);
  const double f = std::norm(overlap(normalized(out), normalized(xx_open_eigenstate(ms))));
  json rep = {{"n0", o.n0},
              {"modes", o.modes},
              {"gates", kinds_json(abc.circuit)},
              {"compiled", census_json(census(compile(abc.circuit)))},
              {"boundary_infidelity", abc.boundary.infidelity},
              {"boundary_extra_layers", abc.boundary.extra_layers},
              {"fidelity", f}};
  std::cout << dump(rep) << "\n";
  if (!o.dump_circuit.empty()) emit(o.dump_circuit, to_json(abc.circuit, 2));
  if (f < 1 - 1e-8) throw ToleranceFailure(fmt::format("fidelity {:.3e} below 1 - 1e-8", f));
}

struct U0Opts {
  int n = 0, m = 0;
  bool trim = false;
  std::string out;
};

void cmd_u0(const U0Opts& o) {
  const U0Layout layout{o.n, o.m};
  layout.validate();
  const Circuit c = build_u0(layout, o.trim);
  json rep = {{"n", o.n}, {"m", o.m}, {"trim", o.trim}, {"qubits", c.num_qubits()}, {"gates", kinds_json(c)},
              {"compiled", census_json(census(compile(c)))}};
  std::cout << dump(rep) << "\n";
  if (!o.out.empty()) emit(o.out, to_json(c, 2));
}

struct VdOpts {
  int n = 0, d = 0;
  std::vector<int> walls;
  bool d2 = false;
  std::string out, report;
};

void cmd_vd(const VdOpts& o) {
  if (static_cast<int>(o.walls.size()) != o.d)
    throw ValidationError(fmt::format("--d {} but {} wall positions given", o.d, o.walls.size()));
  const Circuit c = o.d2 ? build_vd_d2(o.n, o.walls) : build_vd(VdLayout{o.n, o.d}, o.walls);
  json rep = {{"n", o.n}, {"d", o.d}, {"walls", o.walls}, {"d2_simplified", o.d2}, {"qubits", c.num_qubits()},
              {"gates", kinds_json(c)}, {"compiled", census_json(census(compile(c)))}};
  if (!o.d2 && o.d % 2 == 0) {
    const VdBounds b = vd_gate_bounds(o.n, o.d);
    rep["bounds"] = {{"cnot", b.cnot}, {"toffoli", b.toffoli}, {"cswap", b.cswap}};
  }
  if (o.report.empty())
    std::cout << dump(rep) << "\n";
  else
    emit(o.report, dump(rep));
  emit(o.out.empty() ? "vd.json" : o.out, to_json(c, 2));
}

// ------------------------------------------------------------- pipeline

struct PipeOpts {
  int n = 0;
  std::vector<int> modes, walls;
  bool d2 = false;
  bool uncompiled = false;
};

PipelineConfig config_of(const PipeOpts& o) {
  PipelineConfig cfg{o.n, o.modes, o.walls, o.d2, {}};
  cfg.validate();
  return cfg;
}

void cmd_prepare(const PipeOpts& o) {
  const PipelineConfig cfg = config_of(o);
  const Pipeline p = build_pipeline(cfg);
  const Circuit c = compile(p.circuit);
  const GateCensus cs = census(c);
  emit("circuit.json", to_json(o.uncompiled ? p.circuit : c, 2));
  emit("census.csv", census_csv(cs));

  json rep = {{"n", cfg.n_sites},         {"modes", cfg.modes},         {"walls", cfg.walls},
              {"n0", cfg.n0()},           {"qubits", c.num_qubits()},   {"census", census_json(cs)},
              {"boundary_infidelity", p.boundary_infidelity}};
  bool ok = true;
  if (c.num_qubits() <= kMaxStatevectorQubits) {
    const Amplitudes full = run_sparse(c);
    Amplitudes phys;
    double leak = 0;
    for (const auto& [b, a] : full) {
      if (b.substr(cfg.n_sites) == p.ancilla_final)
        phys[with_boundaries(b.substr(0, cfg.n_sites))] += a;
      else
        leak += std::norm(a);
    }
    const double f = std::norm(overlap(phys, normalized(pipeline_target(cfg))));
    double q1 = 0, q2 = 0;
    for (const auto& [b, a] : phys) {
      q1 += std::norm(a) * charge_q1(b);
      q2 += std::norm(a) * charge_q2(b);
    }
    rep["fidelity"] = f;
    rep["ancilla_leak"] = leak;
    rep["observables"] = {{"H", expectation_h(phys)}, {"Q1", q1}, {"Q2", q2}};
    rep["energy_expected"] = energy_of(cfg.momentum_set());
    ok = f >= 1 - 1e-8;
  }
  emit("prepare.json", dump(rep));
  if (!ok) throw ToleranceFailure("pipeline fidelity below 1 - 1e-8");
}

// ------------------------------------------------------------- verify

struct VerifyOpts {
  std::vector<int> sizes = {5, 6};
  std::vector<int> modes, walls;
  int corrupt_n = 0;
  std::string out;
};

void cmd_verify(const VerifyOpts& o) {
  std::vector<CheckEntry> all;
  for (int n : o.sizes) {
    if (n < 1 || n + 2 > 12) throw ValidationError("verify needs 1 <= N and N + 2 <= 12");
    for (auto& e : verify_fragments(n)) all.push_back(e);
    for (auto& e : verify_eigenstates(n)) all.push_back(e);
  }
  if (o.corrupt_n > 0) all.push_back(check_eigenstate(o.corrupt_n, o.modes, o.walls, 1e-10, true));
  int failed = 0;
  json arr = json::array();
  for (const auto& e : all) {
    failed += !e.pass;
    arr.push_back({{"suite", e.suite}, {"name", e.name}, {"pass", e.pass}, {"residual", e.residual},
                   {"tolerance", e.tolerance}, {"detail", e.detail}});
  }
  json rep = {{"checks", arr.size()}, {"failed", failed}, {"entries", arr}};
  if (want_csv(o.out)) {
    std::string s = "suite,name,pass,residual,tolerance,detail\n";
    for (const auto& e : all)
      s += fmt::format("{},{},{},{:.3e},{:.1e},\"{}\"\n", e.suite, e.name, e.pass ? 1 : 0, e.residual, e.tolerance, e.detail);
    emit(o.out, s);
  } else {
    emit(o.out, dump(rep));
  }
  std::cerr << fmt::format("{} checks, {} failed\n", all.size(), failed);
  if (failed) throw ToleranceFailure(fmt::format("{} invariant checks failed", failed));
}

// ------------------------------------------------------------- simulate

struct SimOpts {
  std::string circuit, backend = "density", observables = "H,Q1,Q2", out, readout;
  double lambda = 0.0, lambda1 = 0.0;
  int n_phys = 0, matched = 0;
};

void cmd_simulate(const SimOpts& o) {
  const Circuit c = compiled(load_circuit(o.circuit));
  const Readout r = readout_for(c, o.readout, o.n_phys);
  NoiseModel noise = parse_backend(o.backend, o.lambda);
  if (g.seed_set && o.backend.find(":seed") == std::string::npos) noise.seed = g.seed;
  noise.lambda1 = o.lambda1;
  noise.matched_channels = o.matched;
  NoisyOptions opt;
  opt.n_phys = r.n_phys;
  opt.readout = r.order;
  for (const auto& name : split_names(o.observables)) opt.observables.push_back(parse_observable(name));
  if (opt.observables.empty()) throw ValidationError("no observables given");
  const NoisyResult res = run_noisy(c, noise, opt);
  if (want_csv(o.out, true)) {
    std::string s = "observable,value,stderr\n";
    for (size_t k = 0; k < opt.observables.size(); ++k)
      s += fmt::format("{},{:.10g},{:.3g}\n", opt.observables[k].name, res.observables[k].value, res.observables[k].stderr_);
    emit(o.out, s);
  } else {
    json arr = json::array();
    for (size_t k = 0; k < opt.observables.size(); ++k)
      arr.push_back({{"observable", opt.observables[k].name}, {"value", res.observables[k].value},
                     {"stderr", res.observables[k].stderr_}});
    emit(o.out, dump({{"observables", arr}, {"lambda", o.lambda}, {"backend", o.backend},
                      {"trajectories", res.trajectories}, {"channels", res.channels}}));
  }
}

// ------------------------------------------------------------- route

struct RouteOpts {
  std::string circuit, graph, out, report;
  std::vector<int> layout;
  bool spread = false;
};

void cmd_route(const RouteOpts& o) {
  const Circuit c = compiled(load_circuit(o.circuit));
  const CouplingGraph graph = load_coupling(o.graph);
  for (const auto& w : graph.warnings) std::cerr << "warning: " << w << "\n";
  const RoutedCircuit r = route(c, graph, o.layout, !o.spread);
  const Circuit rc = compile(r.circuit);
  emit(o.out.empty() ? "routed.json" : o.out, to_json(rc, 2));
  json rep = {{"graph", graph.name},
              {"physical", r.physical},
              {"initial_layout", r.initial_layout},
              {"final_layout", r.final_layout},
              {"readout_order", r.readout_order()},
              {"swaps", r.swaps},
              {"n_phys", c.has_register("phys") ? c.reg("phys").size : 0},
              {"census_before", census_json(census(c))},
              {"census_after", census_json(census(rc))}};
  emit(o.report.empty() ? "perm.json" : o.report, dump(rep));
}

// ------------------------------------------------------------- mitigate

struct MitigateOpts {
  std::string circuit, backend = "density", observable = "H", out, readout, rule = "cosine";
  double lambda = 0.0;
  int keep = 50, train = 32, n_phys = 0, training_trajectories = 0;
};

void cmd_mitigate(const MitigateOpts& o) {
  const Circuit c = compiled(load_circuit(o.circuit));
  const Readout r = readout_for(c, o.readout, o.n_phys);
  NoiseModel noise = parse_backend(o.backend, o.lambda);
  NoisyOptions opt;
  opt.n_phys = r.n_phys;
  opt.readout = r.order;
  for (const auto& name : split_names(o.observable)) opt.observables.push_back(parse_observable(name));
  CdrOptions cdr;
  cdr.keep = o.keep;
  cdr.count = o.train;
  cdr.seed = g.seed_set ? g.seed : 7;
  cdr.rule = parse_replacement_rule(o.rule);
  cdr.training_trajectories = o.training_trajectories;
  const CdrResult res = run_cdr(c, noise, opt, cdr);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  json arr = json::array();
  for (const auto& ob : res.observables) {
    json samples = json::array();
    for (const auto& s : ob.samples) samples.push_back({{"circuit", s.circuit_id}, {"noisy", s.noisy}, {"exact", s.exact}});
    arr.push_back({{"observable", ob.name},
                   {"offset", ob.offset},
                   {"noisy", ob.noisy.value},
                   {"noisy_stderr", ob.noisy.stderr_},
                   {"mitigated", ob.mitigated},
                   {"model", {{"a", ob.model.a}, {"b", ob.model.b}, {"residual_rms", ob.model.residual_rms},
                              {"samples", ob.model.n_samples}}},
                   {"training", samples}});
  }
  emit(o.out, dump({{"lambda", o.lambda}, {"backend", o.backend}, {"keep", res.keep}, {"train", o.train},
                    {"seed", cdr.seed}, {"replacement_rule", o.rule}, {"observables", arr},
                    {"warnings", res.warnings}}));
}

// ------------------------------------------------------------- census

struct CensusOpts {
  std::string circuit, out;
};

void cmd_census(const CensusOpts& o) {
  const Circuit raw = load_circuit(o.circuit);
  const GateCensus cs = census(compiled(raw));
  if (want_csv(o.out))
    emit(o.out, census_csv(cs));
  else
    emit(o.out, dump({{"qubits", raw.num_qubits()}, {"gates", kinds_json(raw)}, {"compiled", census_json(cs)}}));
}

// ------------------------------------------------------------- table

struct TableOpts {
  std::string graph = FXXZ_DATA_DIR "/sycamore23.json", out;
  double lambda = 3e-3;
  int trajectories = 10000, training_trajectories = 1000, train = 32, keep = 50;
  std::vector<int> sizes = {5, 6};
  bool no_mitigation = false;
};

void cmd_reproduce_table(const TableOpts& o) {
  const CouplingGraph graph = load_coupling(o.graph);
  std::string s =
      "N,connectivity,observable,noiseless,noisy,noisy_stderr,noisy_rel_error,mitigated,mitigated_rel_error,"
      "error_reduction,fidelity,fidelity_stderr,qubits,rz,rx90,x,cnot,depth\n";
  int misses = 0;
  for (int n : o.sizes) {
    for (bool routed : {false, true}) {
      ExperimentSpec spec;
      spec.pipeline = reference_pipeline(n);
      spec.routed = routed;
      spec.graph = graph;
      spec.noise.lambda2 = o.lambda;
      spec.noise.seed = g.seed;
      const int qubits = prepare_circuit(spec.pipeline, routed ? &graph : nullptr).simulated.num_qubits();
      if (qubits > 11) {
        spec.noise.backend = Backend::Trajectories;
        spec.noise.trajectories = o.trajectories;
      }
      spec.mitigate = !o.no_mitigation;
      spec.cdr.keep = o.keep;
      spec.cdr.count = o.train;
      spec.cdr.seed = g.seed_set ? g.seed : 7;
      spec.cdr.training_trajectories = o.training_trajectories;
      const ExperimentResult r = run_experiment(spec);
      std::cerr << fmt::format("N={} {} done in {:.1f}s\n", n, routed ? "nn" : "all-to-all", r.seconds);
      for (const auto& row : r.rows) {
        const double red = row.noisy_error() / std::max(row.mitigated_error(), 1e-300);
        if (spec.mitigate && red < 3) ++misses;
        s += fmt::format("{},{},{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.2f},{:.4f},{:.4f},{},{},{},{},{},{}\n", n,
                         routed ? "nn" : "all-to-all", row.name, row.exact, row.noisy.value, row.noisy.stderr_,
                         row.noisy_error(), row.mitigated, row.mitigated_error(), spec.mitigate ? red : 1.0,
                         r.fidelity.value, r.fidelity.stderr_, r.qubits, r.census.rz(), r.census.rx90, r.census.x,
                         r.census.cnot, r.census.depth);
      }
    }
  }
  emit(o.out.empty() ? "table.csv" : o.out, s);
  if (misses) throw ToleranceFailure(fmt::format("{} mitigated rows reduce the error by less than 3x", misses));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folded XXZ eigenstates: oracle, circuits, simulation, routing and mitigation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option_function<std::uint64_t>("--seed", [](std::uint64_t s) { g.seed = s, g.seed_set = true; }, "Random seed");
  app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  EigenOpts eo;
  auto* eig = app.add_subcommand("eigenstate", "Exact eigenstate amplitudes from the Bethe ansatz");
  eig->add_option("--n", eo.n, "Bulk sites")->required();
  eig->add_option("--modes", eo.modes, "Momentum integers")->delimiter(',');
  eig->add_option("--walls", eo.walls, "Domain-wall positions")->delimiter(',');
  eig->add_option("--out", eo.out, "Amplitude dump (JSON)");

  FragmentOpts fo;
  auto* frag = app.add_subcommand("fragments", "Fragment labels and dimensions");
  frag->add_option("--n", fo.n, "Bulk sites")->required();
  frag->add_option("--out", fo.out, "Report path");

  AbcOpts ao;
  auto* abc = app.add_subcommand("abc", "Free-fermion eigenstate circuit");
  abc->add_option("--n0", ao.n0, "Sites")->required();
  abc->add_option("--modes", ao.modes, "Momentum integers")->delimiter(',')->required();
  abc->add_option("--dump-circuit", ao.dump_circuit, "Circuit JSON path");

  U0Opts uo;
  auto* u0 = app.add_subcommand("u0", "Hard-rod deformation circuit");
  u0->add_option("--n", uo.n, "Physical sites")->required();
  u0->add_option("--m", uo.m, "Magnons")->required();
  u0->add_flag("--trim", uo.trim, "Drop swaps that never fire");
  u0->add_option("--out", uo.out, "Circuit JSON path");

  VdOpts vo;
  auto* vd = app.add_subcommand("vd", "Domain-wall insertion circuit");
  vd->add_option("--n", vo.n, "Bulk sites")->required();
  vd->add_option("--d", vo.d, "Number of walls")->required();
  vd->add_option("--walls", vo.walls, "Wall positions")->delimiter(',');
  vd->add_flag("--d2-simplified", vo.d2, "Two-wall, one-magnon circuit");
  vd->add_option("--out", vo.out, "Circuit JSON path (default vd.json)");
  vd->add_option("--report", vo.report, "Census report path (default stdout)");

  PipeOpts po;
  auto* prep = app.add_subcommand("prepare", "Build, compile and check a full eigenstate pipeline");
  prep->add_option("--n", po.n, "Bulk sites")->required();
  prep->add_option("--modes", po.modes, "Momentum integers")->delimiter(',');
  prep->add_option("--walls", po.walls, "Wall positions")->delimiter(',');
  prep->add_flag("--d2-simplified", po.d2, "Use the two-wall circuit");
  prep->add_flag("--uncompiled", po.uncompiled, "Write the circuit before compilation");

  VerifyOpts veo;
  auto* ver = app.add_subcommand("verify", "Run the oracle invariant suites");
  ver->add_option("--n", veo.sizes, "Bulk sizes")->delimiter(',')->capture_default_str();
  ver->add_option("--corrupt", veo.corrupt_n, "Add a corrupted eigenstate of this size (negative control)");
  ver->add_option("--modes", veo.modes, "Modes for the corrupted eigenstate")->delimiter(',');
  ver->add_option("--walls", veo.walls, "Walls for the corrupted eigenstate")->delimiter(',');
  ver->add_option("--out", veo.out, "Report path");

  SimOpts so;
  auto* sim = app.add_subcommand("simulate", "Noisy simulation of a circuit");
  sim->add_option("--circuit", so.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--noise-lambda", so.lambda, "Two-qubit depolarizing rate")->capture_default_str();
  sim->add_option("--noise-lambda1", so.lambda1, "Single-qubit depolarizing rate")->capture_default_str();
  sim->add_option("--backend", so.backend, "density or traj:<count>[:seed<s>]")->capture_default_str();
  sim->add_option("--observables", so.observables, "H, Q1, Q2 or Pauli sums, comma separated")->capture_default_str();
  sim->add_option("--matched-channels", so.matched, "Total two-qubit channels spread over the circuit");
  sim->add_option("--readout", so.readout, "Routing report with the readout order")->check(CLI::ExistingFile);
  sim->add_option("--n-phys", so.n_phys, "Physical register size");
  sim->add_option("--out", so.out, "Results path");

  RouteOpts ro;
  auto* rt = app.add_subcommand("route", "Insert swaps for a coupling graph");
  rt->add_option("--circuit", ro.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  rt->add_option("--graph", ro.graph, "Coupling graph JSON")->required();
  rt->add_option("--layout", ro.layout, "Initial vertex of each qubit")->delimiter(',');
  rt->add_flag("--spread", ro.spread, "Allow paths through unplaced vertices");
  rt->add_option("--out", ro.out, "Routed circuit path (default routed.json)");
  rt->add_option("--report", ro.report, "Permutation report path (default perm.json)");

  MitigateOpts mo;
  auto* mit = app.add_subcommand("mitigate", "Clifford data regression");
  mit->add_option("--circuit", mo.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  mit->add_option("--noise-lambda", mo.lambda, "Two-qubit depolarizing rate")->capture_default_str();
  mit->add_option("--backend", mo.backend, "density or traj:<count>[:seed<s>]")->capture_default_str();
  mit->add_option("--keep", mo.keep, "Non-Clifford gates kept per training circuit")->capture_default_str();
  mit->add_option("--train", mo.train, "Training circuits")->capture_default_str();
  mit->add_option("--training-trajectories", mo.training_trajectories, "Trajectories per training circuit");
  mit->add_option("--observable", mo.observable, "Observables, comma separated")->capture_default_str();
  mit->add_option("--replacement-rule", mo.rule, "cosine or nearest")->capture_default_str();
  mit->add_option("--readout", mo.readout, "Routing report with the readout order")->check(CLI::ExistingFile);
  mit->add_option("--n-phys", mo.n_phys, "Physical register size");
  mit->add_option("--out", mo.out, "Report path");

  CensusOpts co;
  auto* cen = app.add_subcommand("census", "Compiled gate counts of a circuit");
  cen->add_option("--circuit", co.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  cen->add_option("--out", co.out, "Report path");

  TableOpts to;
  auto* tab = app.add_subcommand("reproduce-table", "Noiseless, noisy and mitigated observables for N = 5, 6");
  tab->add_option("--graph", to.graph, "Coupling graph for the nearest-neighbour rows")->capture_default_str();
  tab->add_option("--noise-lambda", to.lambda, "Two-qubit depolarizing rate")->capture_default_str();
  tab->add_option("--n", to.sizes, "Sizes")->delimiter(',')->capture_default_str();
  tab->add_option("--trajectories", to.trajectories, "Trajectories above 11 qubits")->capture_default_str();
  tab->add_option("--training-trajectories", to.training_trajectories, "Trajectories per training circuit")
      ->capture_default_str();
  tab->add_option("--train", to.train, "Training circuits")->capture_default_str();
  tab->add_option("--keep", to.keep, "Non-Clifford gates kept")->capture_default_str();
  tab->add_flag("--no-mitigation", to.no_mitigation, "Skip mitigation");
  tab->add_option("--out", to.out, "CSV path (default table.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*eig) cmd_eigenstate(eo);
    if (*frag) cmd_fragments(fo);
    if (*abc) cmd_abc(ao);
    if (*u0) cmd_u0(uo);
    if (*vd) cmd_vd(vo);
    if (*prep) cmd_prepare(po);
    if (*ver) cmd_verify(veo);
    if (*sim) cmd_simulate(so);
    if (*rt) cmd_route(ro);
    if (*mit) cmd_mitigate(mo);
    if (*cen) cmd_census(co);
    if (*tab) cmd_reproduce_table(to);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ToleranceFailure& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
