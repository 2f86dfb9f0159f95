// Copyright 2026 The pifotree authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: simulate, embed, compile, check.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pifotree/pifotree.hpp"

namespace {

using namespace pifotree;

constexpr int kExitError = 1;
constexpr int kExitNoEmbedding = 2;
constexpr int kExitIllFormed = 3;

// A topology given inline ("[*, [*, *]]") or as a file holding one.
Topo load_topology(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::string text;
    std::istringstream is(read_file(arg));
    std::string line;
    while (std::getline(is, line)) {
      const auto hash = line.find('#');
      text += line.substr(0, hash) + "\n";
    }
    return parse_topo(detail::trim(text));
  }
  return parse_topo(arg);
}

struct SimulateArgs {
  std::string trace;
  std::string policy;
  std::string line_rate;
  std::string out_csv;
  std::string out_gantt;
};

int run_simulate(const SimulateArgs& a) {
  const Rational rate = Rational::parse(a.line_rate);
  if (rate.is_zero()) throw ContractError("--line-rate must be positive");
  PolicyFile policy;
  try {
    policy = parse_policy(read_file(a.policy));
  } catch (const ParseError& e) {
    throw ParseError(a.policy + ": " + e.what());
  }
  std::vector<TraceRecord> trace;
  try {
    trace = parse_trace(read_file(a.trace));
  } catch (const ParseError& e) {
    throw ParseError(a.trace + ": " + e.what());
  }
  const auto records = run_simulation(policy, trace, rate);
  write_file(a.out_csv, departures_csv(records));
  if (!a.out_gantt.empty()) emit_gantt(records, a.out_gantt);
  return 0;
}

struct EmbedArgs {
  std::string source;
  std::size_t dary = 0;
  std::string target_topo;
};

int run_embed(const EmbedArgs& a) {
  const Topo source = load_topology(a.source);
  if (a.dary > 0) {
    const DaryEmbedding r = embed_into_dary(source, a.dary);
    std::cout << serialize(r.embedding) << "# height " << r.height << "\n";
    return 0;
  }
  const Topo target = load_topology(a.target_topo);
  const auto e = embed_into_arbitrary(source, target);
  if (!e) {
    std::cerr << "pifotree: no embedding of " << to_string(source) << " into "
              << to_string(target) << "\n";
    return kExitNoEmbedding;
  }
  std::cout << serialize(*e) << "# height " << height(target) << "\n";
  return 0;
}

struct CompileArgs {
  std::string policy;
  std::size_t dary = 2;
  std::string out;
};

int run_compile(const CompileArgs& a) {
  PolicyFile policy;
  try {
    policy = parse_policy(read_file(a.policy));
  } catch (const ParseError& e) {
    throw ParseError(a.policy + ": " + e.what());
  }
  if (policy.compiled) {
    throw ContractError(a.policy + " is already compiled");
  }
  const std::string text = serialize(compile_policy(policy, a.dary));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return 0;
}

int run_check(const std::string& dump) {
  const PifoTree q = parse_tree_dump(read_file(dump));
  std::cout << check_report(q);
  return q.is_well_formed() ? 0 : kExitIllFormed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PIFO tree scheduling toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a policy against a packet trace");
  simulate->add_option("--trace", sim.trace, "Trace CSV (arrival_s,flow,size[,id])")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--policy", sim.policy, "Policy file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--line-rate", sim.line_rate, "Pops per second, e.g. 4 or 5/2")
      ->required();
  simulate->add_option("--out-csv", sim.out_csv, "Departure records output")->required();
  simulate->add_option("--out-gantt", sim.out_gantt, "SVG chart output");

  EmbedArgs emb;
  auto* embed = app.add_subcommand("embed", "Embed a topology into another");
  embed->add_option("--source", emb.source, "Topology literal or file")->required();
  auto* dary_opt = embed->add_option("--target-dary", emb.dary,
                                     "Arity d of a complete target of minimal height")
                       ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  auto* topo_opt = embed->add_option("--target-topo", emb.target_topo,
                                     "Target topology literal or file");
  dary_opt->excludes(topo_opt);
  embed->callback([&] {
    if (dary_opt->count() == 0 && topo_opt->count() == 0) {
      throw CLI::RequiredError("--target-dary or --target-topo");
    }
  });

  CompileArgs comp;
  auto* compile = app.add_subcommand("compile", "Compile a policy onto a d-ary topology");
  compile->add_option("--policy", comp.policy, "Policy file")
      ->required()
      ->check(CLI::ExistingFile);
  compile->add_option("--target-dary", comp.dary, "Target arity")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  compile->add_option("--out", comp.out, "Output file (default: stdout)");

  std::string dump;
  auto* check = app.add_subcommand("check", "Report on a JSON tree dump");
  check->add_option("--tree-dump", dump, "JSON tree dump")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return run_simulate(sim);
    if (*embed) return run_embed(emb);
    if (*compile) return run_compile(comp);
    if (*check) return run_check(dump);
  } catch (const std::exception& e) {
    std::cerr << "pifotree: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
