#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "treeembed.hpp"

using namespace treeembed;

namespace {

constexpr int kFound = 0;
constexpr int kUsage = 2;
constexpr int kNotFound = 3;
constexpr int kBudget = 4;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Tree load_tree(const std::string& path) { return parse_tree(slurp(path)); }
Graph load_graph(const std::string& path) { return parse_edge_list(slurp(path)); }

struct EmbedArgs {
  std::string tree, graph, method = "auto", constants;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
};

int run_embed(const EmbedArgs& a) {
  Tree t = load_tree(a.tree);
  Graph g = load_graph(a.graph);
  Constants c;
  if (!a.constants.empty()) c = read_constants(a.constants);
  if (c.m == 0) c.m = t.edge_count();
  validate(c);
  Json out;
  bool found = false, budget_hit = false;
  if (a.method == "greedy") {
    auto o = greedy_embed(t, g);
    out = embedding_json(o);
    out["method"] = "greedy";
    found = o.success();
  } else if (a.method == "theorem1") {
    auto r = theorem1_embed(t, g, c);
    out = to_json(r);
    found = r.success();
  } else if (a.method == "theorem2") {
    auto r = theorem2_embed(t, g, c, a.seed);
    out = to_json(r);
    found = r.success();
  } else if (a.method == "brute") {
    auto r = brute_force_embed(t, g, a.budget);
    out = to_json(r);
    out["method"] = "brute";
    found = r.verdict == SearchVerdict::Found;
    budget_hit = r.verdict == SearchVerdict::BudgetExceeded;
  } else {
    auto r = theorem2_embed(t, g, c, a.seed);
    if (r.success()) {
      out = to_json(r);
      found = true;
    } else {
      auto b = brute_force_embed(t, g, a.budget);
      out = to_json(b);
      out["method"] = "brute";
      out["pipeline_branch"] = r.branch;
      found = b.verdict == SearchVerdict::Found;
      budget_hit = b.verdict == SearchVerdict::BudgetExceeded;
    }
  }
  std::cout << dump(out);
  return found ? kFound : budget_hit ? kBudget : kNotFound;
}

int run_check(const std::string& tree, const std::string& graph, const std::string& embedding) {
  Tree t = load_tree(tree);
  Graph g = load_graph(graph);
  Embedding f = parse_embedding_json(slurp(embedding));
  auto r = validate_embedding(t, g, f);
  std::cout << dump(to_json(r));
  return r.complete_and_valid() ? kFound : kNotFound;
}

struct DenseArgs {
  std::string graph, mode = "seed", search = "peeling";
  std::size_t m = 0, bound = 0;
  std::string alpha = "1/5";
};

int run_detect(const DenseArgs& a) {
  Graph g = load_graph(a.graph);
  Rational alpha = parse_rational(a.alpha);
  SearchMode search = a.search == "exact" ? SearchMode::Exact : SearchMode::Peeling;
  if (a.mode == "sparse-check") {
    std::cout << dump(to_json(is_locally_sparse(g, a.m, search)));
    return kFound;
  }
  if (a.mode == "densest") {
    std::cout << dump(to_json(densest_small_subgraph(g, a.bound ? a.bound : a.m + 1, search)));
    return kFound;
  }
  if (a.mode == "decompose") {
    std::cout << dump(to_json(dense_decomposition(g, a.m, alpha)));
    return kFound;
  }
  auto s = find_dense_seed(g, a.m, alpha);
  Json out = to_json(s);
  if (s.witness) {
    auto w = expand(*s.witness, g);
    out["expanded"] = to_json(w);
    auto chk = check_witness(g, w);
    out["check"] = {{"ok", chk.ok(true)}, {"failures", chk.failures}};
  }
  std::cout << dump(out);
  return s.witness ? kFound : kNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree embedding toolkit"};
  app.require_subcommand(1);

  EmbedArgs ea;
  auto* embed = app.add_subcommand("embed", "Embed a tree into a host graph");
  embed->add_option("--tree", ea.tree, "Tree file")->required();
  embed->add_option("--graph", ea.graph, "Host edge-list file")->required();
  embed->add_option("--method", ea.method, "auto|theorem1|theorem2|greedy|brute")
      ->check(CLI::IsMember({"auto", "theorem1", "theorem2", "greedy", "brute"}));
  embed->add_option("--constants", ea.constants, "key=value constants file");
  embed->add_option("--seed", ea.seed, "Random seed");
  embed->add_option("--budget", ea.budget, "Node budget for exhaustive search");

  std::string ct, cg, ce;
  auto* check = app.add_subcommand("check", "Validate an embedding JSON");
  check->add_option("--tree", ct, "Tree file")->required();
  check->add_option("--graph", cg, "Host edge-list file")->required();
  check->add_option("--embedding", ce, "Embedding JSON file")->required();

  std::size_t scan_m = 3, scan_hosts = 1000, scan_order = 9;
  std::uint64_t scan_seed = 0, scan_budget = 1'000'000;
  unsigned scan_threads = 0;
  auto* scan = app.add_subcommand("scan", "Exhaustive small-case scan of the degree conjecture");
  scan->add_option("--m", scan_m, "Tree size in edges (1..6)");
  scan->add_option("--hosts", scan_hosts, "Number of sampled hosts");
  scan->add_option("--seed", scan_seed, "Sampler seed");
  scan->add_option("--max-order", scan_order, "Largest host order");
  scan->add_option("--budget", scan_budget, "Node budget per pair");
  scan->add_option("--threads", scan_threads, "Worker threads (0: all cores)");

  std::vector<std::string> extremal;
  std::vector<std::uint64_t> random_host, random_tree_args;
  auto* gen = app.add_subcommand("gen", "Generate instances");
  auto* gx = gen->add_option("--extremal", extremal, "k twin|bip")->expected(2);
  auto* gr = gen->add_option("--random", random_host, "n delta Delta seed")->expected(4);
  auto* gt = gen->add_option("--random-tree", random_tree_args, "n seed")->expected(2);
  gx->excludes(gr)->excludes(gt);
  gr->excludes(gt);

  std::string at;
  auto* analyze = app.add_subcommand("analyze-tree", "Separator, stable set and leaf profile");
  analyze->add_option("--tree", at, "Tree file")->required();

  DenseArgs da;
  auto* detect = app.add_subcommand("detect-dense", "Dense spots, decompositions and sparsity checks");
  detect->add_option("--graph", da.graph, "Host edge-list file")->required();
  detect->add_option("--m", da.m, "Tree size m")->required();
  detect->add_option("--alpha", da.alpha, "alpha as a rational or decimal");
  detect->add_option("--mode", da.mode, "seed|decompose|sparse-check|densest")
      ->check(CLI::IsMember({"seed", "decompose", "sparse-check", "densest"}));
  detect->add_option("--search", da.search, "exact|peeling")->check(CLI::IsMember({"exact", "peeling"}));
  detect->add_option("--bound", da.bound, "Subgraph size bound for densest (default m+1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*embed) return run_embed(ea);
    if (*check) return run_check(ct, cg, ce);
    if (*scan) {
      ScanOptions opt;
      opt.host_count = scan_hosts;
      opt.max_host_order = scan_order;
      opt.budget = scan_budget;
      opt.threads = scan_threads;
      auto r = scan_conjecture(scan_m, scan_seed, opt);
      std::cout << dump(to_json(r));
      return r.counterexamples.empty() ? kFound : kNotFound;
    }
    if (*gen) {
      if (!extremal.empty()) {
        auto k = static_cast<std::size_t>(std::stoul(extremal[0]));
        if (extremal[1] != "twin" && extremal[1] != "bip") throw InputError("extremal kind must be twin or bip");
        auto e = gen_extremal(k, extremal[1] == "twin" ? ExtremalKind::TwinCliques : ExtremalKind::Bipartite);
        std::cout << dump(to_json(e));
      } else if (!random_host.empty()) {
        std::cout << format_edge_list(gen_random_host(random_host[0], random_host[1], random_host[2], random_host[3]));
      } else if (!random_tree_args.empty()) {
        Rng rng(random_tree_args[1]);
        std::cout << format_tree(random_tree(random_tree_args[0], rng));
      } else {
        throw InputError("gen needs --extremal, --random or --random-tree");
      }
      return kFound;
    }
    if (*analyze) {
      std::cout << dump(analyze_tree_json(load_tree(at)));
      return kFound;
    }
    if (*detect) return run_detect(da);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
