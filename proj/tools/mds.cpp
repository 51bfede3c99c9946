#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mds/core.hpp"
#include "mds/dbtd.hpp"
#include "mds/oracle.hpp"
#include "mds/pipeline.hpp"
#include "mds/reductions.hpp"
#include "mds/treedecomp.hpp"

using namespace mds;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMismatch = 2, kParse = 3, kCap = 4 };

struct RunConfig {
  std::string input;
  std::string td;
  std::uint64_t limit = 0;
  bool count = false;
  bool stats = false;
  bool check = false;
  std::uint64_t seed = 0;
  bool dedupe = false;
  std::string format = "names";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_hypergraph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'c') continue;
    return line.rfind("p hg", 0) == 0;
  }
  return false;
}

// Graph for the td subcommands: a .gr graph, or the incidence graph of a hypergraph.
Graph load_any_graph(const std::string& path) {
  std::string text = read_file(path);
  if (is_hypergraph_text(text)) return incidence_graph(parse_hypergraph(text));
  return parse_graph(text);
}

std::optional<TreeDecomposition> load_td(const RunConfig& cfg) {
  if (cfg.td.empty()) return std::nullopt;
  return parse_td(read_file(cfg.td));
}

// Collects, counts or prints solutions and keeps them for --check.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::function<std::string(int)> label) : cfg_(cfg), label_(std::move(label)) {}

  bool operator()(const std::vector<int>& s) {
    ++count_;
    if (cfg_.check) seen_.push_back(s);
    if (!cfg_.count) {
      std::string line;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) line += ' ';
        line += label_(s[k]);
      }
      std::fwrite(line.data(), 1, line.size(), stdout);
      std::fputc('\n', stdout);
    }
    return true;
  }

  std::uint64_t count() const { return count_; }
  const SetFamily& seen() const { return seen_; }

 private:
  const RunConfig& cfg_;
  std::function<std::string(int)> label_;
  std::uint64_t count_ = 0;
  SetFamily seen_;
};

int finish(const RunConfig& cfg, const Sink& sink, const RunResult& r, const std::function<SetFamily()>& oracle) {
  if (cfg.count) std::printf("%llu\n", static_cast<unsigned long long>(sink.count()));
  if (cfg.stats) {
    std::printf("# width %d\n# effective_width %d\n# augmented %zu\n# trie_bytes %zu\n# prep_ms %.3f\n", r.width,
                r.effective_width, r.augmented, r.trie_bytes, r.prep_ms);
    if (!r.fast_path) std::fputs(format_delay(r.engine.delay).c_str(), stdout);
  }
  if (!cfg.check) return kOk;
  std::set<std::vector<int>> distinct(sink.seen().begin(), sink.seen().end());
  if (distinct.size() != sink.seen().size()) {
    std::fprintf(stderr, "check: duplicate solutions emitted\n");
    return kMismatch;
  }
  SetFamily expected = oracle();
  if (cfg.limit && sink.count() == cfg.limit) {
    for (const auto& s : distinct)
      if (!std::binary_search(expected.begin(), expected.end(), s)) {
        std::fprintf(stderr, "check: emitted set is not a solution\n");
        return kMismatch;
      }
  } else if (canonical(sink.seen()) != expected) {
    std::fprintf(stderr, "check: %zu emitted, oracle has %zu\n", sink.seen().size(), expected.size());
    return kMismatch;
  }
  std::fprintf(stderr, "check: ok (%zu solutions)\n", expected.size());
  return kOk;
}

PipelineOptions pipeline_options(const RunConfig& cfg, const std::optional<TreeDecomposition>& td) {
  PipelineOptions o;
  o.td = td ? &*td : nullptr;
  o.seed = cfg.seed;
  o.limit = cfg.limit;
  o.stats = cfg.stats;
  return o;
}

int cmd_dominating_sets(const RunConfig& cfg) {
  Graph g = parse_graph(read_file(cfg.input));
  auto td = load_td(cfg);
  Sink sink(cfg, [&](int v) { return cfg.format == "ids" ? std::to_string(v + 1) : g.name(v); });
  RunResult r = enumerate_dominating_sets(g, std::ref(sink), pipeline_options(cfg, td));
  return finish(cfg, sink, r, [&] { return brute_minimal_dominating_sets(g); });
}

Hypergraph load_hypergraph(const RunConfig& cfg) {
  Hypergraph h = parse_hypergraph(read_file(cfg.input));
  return cfg.dedupe ? dedupe_edges(h) : h;
}

int cmd_hitting_sets(const RunConfig& cfg) {
  Hypergraph h = load_hypergraph(cfg);
  auto td = load_td(cfg);
  Sink sink(cfg, [&](int v) { return cfg.format == "ids" ? std::to_string(v + 1) : h.name(v); });
  RunResult r = enumerate_hitting_sets(h, std::ref(sink), pipeline_options(cfg, td));
  return finish(cfg, sink, r, [&] { return brute_minimal_transversals(h); });
}

int cmd_edge_covers(const RunConfig& cfg) {
  Hypergraph h = load_hypergraph(cfg);
  auto td = load_td(cfg);
  Sink sink(cfg, [&](int e) { return cfg.format == "ids" ? std::to_string(e + 1) : "e" + std::to_string(e); });
  RunResult r = enumerate_edge_covers(h, std::ref(sink), pipeline_options(cfg, td));
  return finish(cfg, sink, r, [&] { return brute_minimal_edge_covers(h); });
}

int cmd_td(const std::string& action, const RunConfig& cfg) {
  Graph g = load_any_graph(cfg.input);
  if (action == "build") {
    std::fputs(write_td(min_fill_td(g, cfg.seed)).c_str(), stdout);
    return kOk;
  }
  auto td = load_td(cfg);
  TreeDecomposition t = td ? *td : min_fill_td(g, cfg.seed);
  if (action == "validate") {
    if (!td) throw UsageError("td validate needs --td");
    ValidationReport rep = validate_td(g, t);
    if (!rep.ok()) {
      for (const auto& p : rep.problems) std::printf("invalid: %s\n", p.c_str());
      return kMismatch;
    }
    std::printf("valid width %d\n", t.width());
    return kOk;
  }
  ValidationReport rep = validate_td(g, t);
  if (!rep.ok()) throw ParseError("invalid tree decomposition: " + rep.problems.front());
  NiceTreeDecomposition nice = make_nice(t, g);
  if (action == "niceify") {
    std::fputs(dump_nice(nice, g).c_str(), stdout);
    return kOk;
  }
  NiceDBTD d = transform_to_dbjt(nice, g);
  std::fputs(dump_dbtd(d, g).c_str(), stdout);
  return kOk;
}

struct BenchConfig {
  std::string family = "path";
  std::vector<int> sizes{16, 32, 64};
  int k = 2;
  double keep = 0.8;
  std::uint64_t limit = 10000;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchConfig& b) {
  std::puts("n,m,w,effw,prep_ms,trie_bytes,solutions,max_gap,mean_gap");
  for (int n : b.sizes) {
    std::mt19937_64 rng(b.seed + static_cast<std::uint64_t>(n));
    Graph g;
    std::optional<TreeDecomposition> td;
    if (b.family == "path") {
      g = path_graph(n);
    } else if (b.family == "cycle") {
      g = cycle_graph(n);
    } else if (b.family == "ktree") {
      auto gt = partial_ktree(n, b.k, b.keep, rng);
      g = std::move(gt.graph);
      td = std::move(gt.td);
    } else {
      throw UsageError("unknown family " + b.family);
    }
    PipelineOptions o;
    o.td = td ? &*td : nullptr;
    o.limit = b.limit;
    o.stats = true;
    std::uint64_t solutions = 0;
    RunResult r = enumerate_dominating_sets(
        g,
        [&](const std::vector<int>&) {
          ++solutions;
          return true;
        },
        o);
    std::printf("%d,%zu,%d,%d,%.3f,%zu,%llu,%llu,%.2f\n", n, g.edge_count(), r.width, r.effective_width, r.prep_ms,
                r.trie_bytes, static_cast<unsigned long long>(solutions),
                static_cast<unsigned long long>(r.engine.delay.max_gap), r.engine.delay.mean_gap);
  }
  return kOk;
}

void add_run_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "Input file")->required();
  sub->add_option("--td", cfg.td, "Tree decomposition (.td)");
  sub->add_option("--limit", cfg.limit, "Stop after K solutions");
  sub->add_flag("--count", cfg.count, "Print only the number of solutions");
  sub->add_flag("--stats", cfg.stats, "Print width, memory and delay statistics");
  sub->add_flag("--check", cfg.check, "Compare against the brute-force oracle");
  sub->add_option("--seed", cfg.seed, "Min-fill tie-breaking seed");
  sub->add_flag("--dedupe", cfg.dedupe, "Drop duplicate hyperedges");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"names", "ids"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate minimal hitting sets, edge covers and dominating sets of bounded-treewidth inputs"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* hs = app.add_subcommand("hitting-sets", "Minimal transversals of a hypergraph");
  auto* ds = app.add_subcommand("dominating-sets", "Minimal dominating sets of a graph");
  auto* ec = app.add_subcommand("edge-covers", "Minimal edge covers of a hypergraph");
  for (auto* s : {hs, ds, ec}) add_run_flags(s, cfg);

  auto* td = app.add_subcommand("td", "Tree decomposition utilities");
  td->require_subcommand(1);
  std::string td_action;
  for (const char* a : {"validate", "build", "niceify", "dbtd"}) {
    auto* s = td->add_subcommand(a);
    s->add_option("--input", cfg.input, "Graph (.gr) or hypergraph")->required();
    s->add_option("--td", cfg.td, "Tree decomposition (.td)");
    s->add_option("--seed", cfg.seed, "Min-fill tie-breaking seed");
    s->callback([&td_action, a] { td_action = a; });
  }

  BenchConfig bench;
  auto* bn = app.add_subcommand("bench", "Delay and memory report on generated instances");
  bn->add_option("--family", bench.family, "path, cycle or ktree")->check(CLI::IsMember({"path", "cycle", "ktree"}));
  bn->add_option("--sizes", bench.sizes, "Instance sizes")->delimiter(',');
  bn->add_option("--k", bench.k, "Width of the partial k-trees");
  bn->add_option("--keep", bench.keep, "Edge keep probability of the partial k-trees");
  bn->add_option("--limit", bench.limit, "Solutions per instance");
  bn->add_option("--seed", bench.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (hs->parsed()) return cmd_hitting_sets(cfg);
    if (ds->parsed()) return cmd_dominating_sets(cfg);
    if (ec->parsed()) return cmd_edge_covers(cfg);
    if (td->parsed()) return cmd_td(td_action, cfg);
    if (bn->parsed()) return cmd_bench(bench);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParse;
  } catch (const CapError& e) {
    std::fprintf(stderr, "cap exceeded: %s\n", e.what());
    return kCap;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kParse;
  }
  return kUsage;
}
