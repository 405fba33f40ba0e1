// treembed: graph-metric embedding toolbox.
// Subcommands: gen, sssp, domseq, tree, oracle {build,query,eval},
// ramsey, bench, scaling. Every randomized command takes --seed and is
// byte-reproducible; wall-clock timings go to a sidecar file so primary
// outputs stay deterministic.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "treembed/errors.hpp"
#include "treembed/generators.hpp"
#include "treembed/graph.hpp"
#include "treembed/oracle.hpp"
#include "treembed/ramsey.hpp"
#include "treembed/sssp.hpp"

using namespace treembed;

namespace {

constexpr const char* kCsvHeader = "# treembed csv v1\n";

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<int64_t> parse_dims(const std::string& spec) {
  std::vector<int64_t> dims;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      dims.push_back(std::stoll(part));
    } catch (const std::exception&) {
      throw ArgError("bad --dims component: " + part);
    }
  }
  return dims;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ArgError("bad list component: " + part);
    }
  }
  return out;
}

struct GraphSpec {
  std::string family = "grid";
  std::string dims = "100x100";
  int64_t n = 10000, m = 100000, diameter = 1000, max_w = 1000;
  bool weighted = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--family", family, "grid|powerlaw|slim|random")
        ->check(CLI::IsMember({"grid", "powerlaw", "slim", "random"}));
    cmd->add_option("--dims", dims, "grid extents, e.g. 100x100");
    cmd->add_option("--n", n, "vertex count");
    cmd->add_option("--m", m, "edge count target");
    cmd->add_option("--diameter", diameter, "slim backbone length");
    cmd->add_option("--max-w", max_w, "random family max weight");
    cmd->add_flag("--weighted", weighted, "uniform weights in [1,1000]");
  }

  Graph build(uint64_t seed) const {
    Graph g;
    if (family == "grid") {
      g = gen_grid(parse_dims(dims), weighted, seed);
    } else if (family == "powerlaw") {
      g = gen_power_law(n, m, seed);
      if (weighted) g = with_random_weights(g, mix_seed(seed, 0x57));
    } else if (family == "slim") {
      g = gen_slim(n, m, diameter, seed);
      if (weighted) g = with_random_weights(g, mix_seed(seed, 0x57));
    } else {
      g = gen_random_connected(n, m, max_w, seed);
    }
    return g;
  }
};

std::string describe(const GraphSpec& s) {
  if (s.family == "grid") return s.family + ":" + s.dims;
  std::ostringstream os;
  os << s.family << ":n=" << s.n << ";m=" << s.m;
  if (s.family == "slim") os << ";d=" << s.diameter;
  return os.str();
}

WeightMode parse_mode(const std::string& s) {
  if (s == "level") return WeightMode::kLevel;
  if (s == "actual") return WeightMode::kActual;
  throw ArgError("bad --mode: " + s);
}

DomseqMode parse_domseq_mode(const std::string& s) {
  if (s == "exact") return DomseqMode::kExact;
  if (s == "approx") return DomseqMode::kApprox;
  throw ArgError("bad --domseq: " + s);
}

}  // namespace

static int run(int argc, char** argv) {
  CLI::App app{"graph-metric embedding toolbox"};
  app.require_subcommand(1);

  // gen ------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  GraphSpec gen_spec;
  gen_spec.add_options(gen);
  uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--seed", gen_seed)->required();
  gen->add_option("--out", gen_out)->required();
  gen->callback([&] {
    Graph g = gen_spec.build(gen_seed);
    std::string text = "# treembed graph family=" + describe(gen_spec) +
                       " seed=" + std::to_string(gen_seed) + "\n" +
                       write_graph(g);
    write_text(gen_out, text);
  });

  // sssp -----------------------------------------------------------------
  auto* sssp = app.add_subcommand("sssp", "approximate SSSP vs exact");
  std::string sssp_graph, sssp_out;
  int32_t sssp_source = 0;
  double sssp_eps = 0.0;
  sssp->add_option("--graph", sssp_graph)->required();
  sssp->add_option("--source", sssp_source)->required();
  sssp->add_option("--eps", sssp_eps,
                   "refine until within (1-eps) of exact; 0 = single pass");
  sssp->add_option("--out", sssp_out)->required();
  sssp->callback([&] {
    Graph g = load_graph(sssp_graph);
    std::vector<int64_t> approx;
    if (sssp_eps > 0.0) {
      approx = refine_gabow(g, sssp_source, sssp_eps);
    } else {
      int k = 1;
      __int128 bound = g.n;
      while (bound < g.max_weight()) {
        bound *= g.n;
        ++k;
      }
      approx = approx_sssp(g, sssp_source, k).d;
    }
    ExactDistances ex = dijkstra_exact(g, sssp_source);
    std::string csv = kCsvHeader;
    csv += "vertex,approx_d,exact_d,ratio\n";
    for (int32_t v = 0; v < g.n; ++v) {
      if (ex.d[v] == kInfDist) {
        csv += std::to_string(v) + ",inf,inf,1.000000\n";
        continue;
      }
      double ratio = ex.d[v] == 0
                         ? 1.0
                         : static_cast<double>(approx[v]) /
                               static_cast<double>(ex.d[v]);
      csv += std::to_string(v) + "," + std::to_string(approx[v]) + "," +
             std::to_string(ex.d[v]) + "," + fmt_double(ratio) + "\n";
    }
    write_text(sssp_out, csv);
  });

  // domseq ---------------------------------------------------------------
  auto* dom = app.add_subcommand("domseq", "dominance sequences");
  std::string dom_graph, dom_out, dom_mode = "exact";
  uint64_t dom_seed = 0;
  dom->add_option("--graph", dom_graph)->required();
  dom->add_option("--seed", dom_seed)->required();
  dom->add_option("--mode", dom_mode)->check(CLI::IsMember({"exact", "approx"}));
  dom->add_option("--out", dom_out)->required();
  dom->callback([&] {
    Graph g = load_graph(dom_graph);
    Permutation pi = random_permutation(g.n, dom_seed);
    DomSeqs seqs = dom_mode == "exact" ? build_domseq_exact(g, pi)
                                       : build_domseq_approx(g, pi);
    std::string csv = kCsvHeader;
    csv += "vertex,rank_in_list,dominator,stored_distance\n";
    for (int32_t x = 0; x < g.n; ++x)
      for (size_t j = 0; j < seqs[x].size(); ++j)
        csv += std::to_string(x) + "," + std::to_string(j + 1) + "," +
               std::to_string(seqs[x][j].p) + "," +
               std::to_string(seqs[x][j].dist) + "\n";
    write_text(dom_out, csv);
  });

  // tree -----------------------------------------------------------------
  auto* tree = app.add_subcommand("tree", "build a single FRT tree file");
  std::string tree_graph, tree_out, tree_mode = "level",
              tree_domseq = "exact";
  uint64_t tree_seed = 0;
  tree->add_option("--graph", tree_graph)->required();
  tree->add_option("--seed", tree_seed)->required();
  tree->add_option("--mode", tree_mode)->check(CLI::IsMember({"level", "actual"}));
  tree->add_option("--domseq", tree_domseq)
      ->check(CLI::IsMember({"exact", "approx"}));
  tree->add_option("--out", tree_out)->required();
  tree->callback([&] {
    Graph g = load_graph(tree_graph);
    DistanceOracle o = build_oracle(g, 1, parse_mode(tree_mode),
                                    parse_domseq_mode(tree_domseq), tree_seed);
    save_oracle(o, tree_out);
  });

  // oracle ---------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "multi-tree distance oracle");
  oracle->require_subcommand(1);

  auto* ob = oracle->add_subcommand("build", "build and serialize");
  std::string ob_graph, ob_out, ob_mode = "actual", ob_domseq = "exact";
  uint64_t ob_seed = 0;
  int ob_trees = 32, ob_threads = 1;
  ob->add_option("--graph", ob_graph)->required();
  ob->add_option("--trees", ob_trees);
  ob->add_option("--seed", ob_seed)->required();
  ob->add_option("--mode", ob_mode)->check(CLI::IsMember({"level", "actual"}));
  ob->add_option("--domseq", ob_domseq)
      ->check(CLI::IsMember({"exact", "approx"}));
  ob->add_option("--threads", ob_threads);
  ob->add_option("--out", ob_out)->required();
  ob->callback([&] {
    Graph g = load_graph(ob_graph);
    DistanceOracle o =
        build_oracle(g, ob_trees, parse_mode(ob_mode),
                     parse_domseq_mode(ob_domseq), ob_seed, ob_threads);
    save_oracle(o, ob_out);
  });

  auto* oq = oracle->add_subcommand("query", "query pair distances");
  std::string oq_oracle, oq_pairs, oq_out;
  int32_t oq_u = -1, oq_v = -1;
  oq->add_option("--oracle", oq_oracle)->required();
  oq->add_option("--u", oq_u);
  oq->add_option("--v", oq_v);
  oq->add_option("--pairs", oq_pairs, "file with 'u v' lines");
  oq->add_option("--out", oq_out, "CSV path (default stdout)");
  oq->callback([&] {
    DistanceOracle o = load_oracle(oq_oracle);
    std::vector<std::pair<int32_t, int32_t>> pairs;
    if (!oq_pairs.empty()) {
      std::ifstream in(oq_pairs);
      if (!in) throw IoError("cannot open pairs file: " + oq_pairs);
      int64_t u, v;
      while (in >> u >> v) pairs.emplace_back(u, v);
    } else {
      if (oq_u < 0 || oq_v < 0)
        throw ArgError("need --u/--v or --pairs");
      pairs.emplace_back(oq_u, oq_v);
    }
    std::string csv = kCsvHeader;
    csv += "u,v,distance\n";
    for (auto [u, v] : pairs)
      csv += std::to_string(u) + "," + std::to_string(v) + "," +
             fmt_double(o.query(u, v)) + "\n";
    if (oq_out.empty())
      std::cout << csv;
    else
      write_text(oq_out, csv);
  });

  auto* oe = oracle->add_subcommand("eval", "stretch statistics");
  std::string oe_oracle, oe_graph, oe_out;
  int64_t oe_pairs = 10000;
  uint64_t oe_seed = 0;
  bool oe_per_pair = false;
  oe->add_option("--oracle", oe_oracle)->required();
  oe->add_option("--graph", oe_graph)->required();
  oe->add_option("--pairs", oe_pairs);
  oe->add_option("--seed", oe_seed)->required();
  oe->add_flag("--per-pair", oe_per_pair, "emit one row per sampled pair");
  oe->add_option("--out", oe_out)->required();
  oe->callback([&] {
    DistanceOracle o = load_oracle(oe_oracle);
    Graph g = load_graph(oe_graph);
    StretchReport rep = eval_stretch(o, g, oe_pairs, oe_seed, oe_per_pair);
    std::string csv = kCsvHeader;
    csv += "pairs,evaluated,skipped,avg_stretch,worst_stretch,geomean_stretch\n";
    csv += std::to_string(rep.requested) + "," +
           std::to_string(rep.evaluated) + "," + std::to_string(rep.skipped) +
           "," + fmt_double(rep.avg) + "," + fmt_double(rep.worst) + "," +
           fmt_double(rep.geomean) + "\n";
    if (oe_per_pair) {
      csv += "u,v,d_g,d_t,stretch\n";
      for (const auto& row : rep.rows) {
        if (row.d_g == kInfDist) {
          csv += std::to_string(row.u) + "," + std::to_string(row.v) +
                 ",inf,inf,inf\n";
          continue;
        }
        csv += std::to_string(row.u) + "," + std::to_string(row.v) + "," +
               std::to_string(row.d_g) + "," + fmt_double(row.d_t) + "," +
               fmt_double(row.stretch) + "\n";
      }
    }
    write_text(oe_out, csv);
  });

  // ramsey ---------------------------------------------------------------
  auto* ram = app.add_subcommand("ramsey", "padding probability estimate");
  std::string ram_graph, ram_out;
  int ram_a = 3;
  int64_t ram_trials = 20000;
  uint64_t ram_seed = 0;
  bool ram_statement = false;
  ram->add_option("--graph", ram_graph)->required();
  ram->add_option("--a", ram_a);
  ram->add_option("--trials", ram_trials);
  ram->add_option("--seed", ram_seed)->required();
  ram->add_flag("--statement-form", ram_statement,
                "pad with radius 2^-i * diameter (no beta factor)");
  ram->add_option("--out", ram_out)->required();
  ram->callback([&] {
    Graph g = load_graph(ram_graph);
    MetricView mv = MetricView::from_graph(g);
    PaddingEstimate est =
        estimate_padding(mv, ram_a, ram_trials, ram_seed, !ram_statement);
    std::string csv = kCsvHeader;
    csv += "vertex,success_freq,stderr,bound\n";
    for (int32_t x = 0; x < mv.n; ++x)
      csv += std::to_string(x) + "," + fmt_double(est.freq[x]) + "," +
             fmt_double(est.se[x]) + "," + fmt_double(est.bound) + "\n";
    write_text(ram_out, csv);
  });

  // bench ----------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "stretch sweep over tree counts");
  GraphSpec bench_spec;
  bench_spec.add_options(bench);
  std::string bench_trees = "1,2,4,8,16,32", bench_out,
              bench_mode = "actual", bench_domseq = "exact";
  int64_t bench_pairs = 10000;
  uint64_t bench_seed = 0;
  int bench_threads = 1;
  bench->add_option("--trees", bench_trees, "ascending counts, e.g. 1,2,4");
  bench->add_option("--pairs", bench_pairs);
  bench->add_option("--seed", bench_seed)->required();
  bench->add_option("--mode", bench_mode)
      ->check(CLI::IsMember({"level", "actual"}));
  bench->add_option("--domseq", bench_domseq)
      ->check(CLI::IsMember({"exact", "approx"}));
  bench->add_option("--threads", bench_threads);
  bench->add_option("--out", bench_out)->required();
  bench->callback([&] {
    std::vector<int> ks = parse_int_list(bench_trees);
    if (ks.empty()) throw ArgError("empty --trees list");
    auto t0 = std::chrono::steady_clock::now();
    Graph g = bench_spec.build(bench_seed);
    DistanceOracle o = build_oracle(
        g, ks.back(), parse_mode(bench_mode),
        parse_domseq_mode(bench_domseq), mix_seed(bench_seed, 1), bench_threads);
    auto t1 = std::chrono::steady_clock::now();
    auto reports =
        eval_stretch_sweep(o, g, ks, bench_pairs, mix_seed(bench_seed, 2));
    auto t2 = std::chrono::steady_clock::now();
    std::string csv = kCsvHeader;
    csv += "graph,mode,domseq,k,pairs,evaluated,skipped,avg_stretch,"
           "worst_stretch,geomean_stretch,build_ops\n";
    for (size_t i = 0; i < ks.size(); ++i) {
      const auto& rep = reports[i];
      csv += describe(bench_spec) + "," + bench_mode + "," + bench_domseq +
             "," + std::to_string(ks[i]) + "," +
             std::to_string(rep.requested) + "," +
             std::to_string(rep.evaluated) + "," +
             std::to_string(rep.skipped) + "," + fmt_double(rep.avg) + "," +
             fmt_double(rep.worst) + "," + fmt_double(rep.geomean) + "," +
             std::to_string(o.build_stats.total()) + "\n";
    }
    write_text(bench_out, csv);
    double build_s = std::chrono::duration<double>(t1 - t0).count();
    double eval_s = std::chrono::duration<double>(t2 - t1).count();
    write_text(bench_out + ".time.csv",
               std::string(kCsvHeader) + "stage,seconds\nbuild," +
                   fmt_double(build_s) + "\neval," + fmt_double(eval_s) +
                   "\n");
  });

  // scaling --------------------------------------------------------------
  auto* scal = app.add_subcommand(
      "scaling", "operation-count scaling of the approximate sequences");
  std::string scal_sizes = "4096,8192,16384,32768,65536", scal_out;
  int scal_density = 8;
  int64_t scal_maxw = 1000000;
  uint64_t scal_seed = 0;
  scal->add_option("--sizes", scal_sizes, "ascending vertex counts");
  scal->add_option("--density", scal_density, "edges per vertex");
  scal->add_option("--max-w", scal_maxw);
  scal->add_option("--seed", scal_seed)->required();
  scal->add_option("--out", scal_out)->required();
  scal->callback([&] {
    std::vector<int> sizes = parse_int_list(scal_sizes);
    if (sizes.empty()) throw ArgError("empty --sizes list");
    for (size_t i = 1; i < sizes.size(); ++i)
      if (sizes[i] <= sizes[i - 1]) throw ArgError("sizes must ascend");
    std::string csv = kCsvHeader;
    csv += "n,m,ops,ops_per_mlogn\n";
    for (int n : sizes) {
      Graph g = gen_random_connected(n, static_cast<int64_t>(n) * scal_density,
                                     scal_maxw, mix_seed(scal_seed, n));
      Permutation pi = random_permutation(g.n, mix_seed(scal_seed, n, 7));
      BucketTree::Stats stats;
      build_domseq_approx(g, pi, &stats);
      double norm = static_cast<double>(stats.total()) /
                    (static_cast<double>(g.m()) *
                     std::log2(static_cast<double>(n)));
      csv += std::to_string(n) + "," + std::to_string(g.m()) + "," +
             std::to_string(stats.total()) + "," + fmt_double(norm) + "\n";
    }
    write_text(scal_out, csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // map CLI parse failures to exit code 2
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ArgError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
