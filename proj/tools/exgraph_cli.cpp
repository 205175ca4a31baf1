// exgraph: command-line front end for the extremal-graph toolkit.
// Every run writes result.json plus manifest.json into --out-dir; a
// manifest can be replayed byte-identically with `exgraph rerun`.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "exgraph/constants.hpp"
#include "exgraph/constructor.hpp"
#include "exgraph/forbidden.hpp"
#include "exgraph/generators.hpp"
#include "exgraph/graph_io.hpp"
#include "exgraph/lemmas.hpp"
#include "exgraph/rng.hpp"
#include "exgraph/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace exg;

namespace {

constexpr const char* kVersion = "exgraph 1.0.0";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Accumulated state for one subcommand run; emit() writes the artifacts.
struct Run {
  std::string out_dir = ".";
  std::vector<std::string> stored_argv;  // subcommand + flags, out-dir excluded
  std::uint64_t seed = 0;
  json input_hashes = json::object();
  json result;
  std::string summary;
  int exit_code = 0;

  std::string hash_input(const std::string& path) {
    const std::string text = slurp(path);
    input_hashes[path] = fnv1a_hex(text);
    return text;
  }

  void emit() {
    fs::create_directories(out_dir);
    spit(fs::path(out_dir) / "result.json", result.dump(2) + "\n");
    json manifest{{"kind", "run_manifest"},
                  {"version", kVersion},
                  {"subcommand", stored_argv.empty() ? "" : stored_argv[0]},
                  {"argv", stored_argv},
                  {"seed", seed},
                  {"input_hashes", input_hashes},
                  {"outcome", {{"exit_code", exit_code}, {"summary", summary}}}};
    spit(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    std::cout << result.dump(2) << "\n";
  }

  void write_artifact(const std::string& name, const std::string& text) {
    fs::create_directories(out_dir);
    spit(fs::path(out_dir) / name, text);
  }
};

json witness_json(const Witness& w) {
  json j{{"pattern", pattern_name(w.pattern)}};
  if (!w.side_a.empty() || !w.side_b.empty()) {
    j["side_a"] = w.side_a;
    j["side_b"] = w.side_b;
  }
  if (!w.cycle.empty()) j["cycle"] = w.cycle;
  if (w.theta_x >= 0) {
    j["theta_x"] = w.theta_x;
    j["theta_y"] = w.theta_y;
    j["theta_paths"] = w.theta_paths;
  }
  return j;
}

json record_json(const ExtremalRecord& r, const std::string& witness_file) {
  return json{{"kind", "extremal_record"}, {"bipartite", r.bipartite},
              {"m", r.m},                  {"n", r.n},
              {"value", r.value},          {"exact", r.exact},
              {"family_hash", fnv1a_hex(r.family.to_json())},
              {"witness_file", witness_file}};
}

FamilySpec load_family(Run& run, const std::string& path) {
  return FamilySpec::from_json(run.hash_input(path));
}

Graph load_graph(Run& run, const std::string& path) { return read_graph(run.hash_input(path)); }

SmoothnessParams smooth_defaults() { return {1.5, 1.0, 1.0, 1.0, 0.5}; }

// ---- verify-lemma trial suites -------------------------------------------

Graph connected_instance(std::uint64_t seed, int n, int d, MindegModel model) {
  for (int attempt = 0;; ++attempt) {
    Graph g = random_mindeg_graph(n, d, Rng::derive(seed, 900 + attempt), model);
    if (is_connected(g)) return g;
    if (attempt > 50) throw std::runtime_error("no connected instance after 50 attempts");
  }
}

bool trial_expansion(std::uint64_t s) {
  const int n = 24 + static_cast<int>(s % 17);
  const int d = 4 + static_cast<int>(s % 3);
  Graph g = connected_instance(s, n, d, MindegModel::gnp_repair);
  SmoothnessParams p = smooth_defaults();
  const double delta = 0.5;  // 0.5*sqrt(n) stays below the planted degree
  auto dc = derive_constants(p.alpha, p.beta, p.rho, delta);
  const double thr = dc.mu * n;
  auto out = expansion_cert(g, 0, delta, p);
  auto ld = bfs_layers(g, 0);
  auto size_at = [&](int j) {
    return j < static_cast<int>(ld.layers.size()) ? static_cast<int>(ld.layers[j].size()) : 0;
  };
  if (auto* cert = std::get_if<ExpansionCert>(&out)) {
    return cert->j0 <= dc.ell0 && size_at(cert->j0) == cert->size_j0 &&
           size_at(cert->j0 + 1) == cert->size_j1 && cert->size_j0 >= thr - 1e-9 &&
           cert->size_j1 >= thr - 1e-9;
  }
  for (int j = 0; j <= dc.ell0; ++j)
    if (size_at(j) >= thr - 1e-9 && size_at(j + 1) >= thr - 1e-9) return false;
  return true;
}

bool trial_reach(std::uint64_t s) {
  const int n = 20 + static_cast<int>(s % 21);
  const int d = 3 + static_cast<int>(s % 3);
  Graph g = connected_instance(s, n, d, MindegModel::gnp_repair);
  const int ell_max = 3, cap = 2 + static_cast<int>(s % 3);
  PathFamily pf = robust_reach(g, 0, ell_max, cap, 0);
  if (!pf.validate(g, false)) return false;
  for (int v = 0; v < n; ++v)
    if (v != pf.root && pf.usage[v] > cap) return false;
  if (!pf.maximal) return true;
  // independent confirmation: no augmenting vertex within ell_max of the
  // root once saturated vertices are removed
  VertexSet blocked(n);
  for (int v = 0; v < n; ++v)
    if (v != pf.root && pf.usage[v] >= cap) blocked.set(v);
  VertexSet in_s = VertexSet::of(n, pf.endpoints);
  std::vector<int> dist(n, -1);
  std::vector<int> queue{pf.root};
  dist[pf.root] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int x = queue[h];
    if (dist[x] == ell_max) continue;
    bool fail = false;
    g.for_neighbors(x, [&](int w) {
      if (dist[w] >= 0 || blocked.test(w)) return;
      dist[w] = dist[x] + 1;
      if (!in_s.test(w)) fail = true;
      queue.push_back(w);
    });
    if (fail) return false;
  }
  return true;
}

bool trial_bipartize(std::uint64_t s) {
  const int n = 10 + static_cast<int>(s % 51);
  const int d = 2 + static_cast<int>(s % 4);
  Graph g = connected_instance(s, n, d, MindegModel::gnp_repair);
  auto r = bipartize(g);
  if (!is_connected(r.h) || !two_color(r.h)) return false;
  for (int v = 0; v < n; ++v)
    if (2 * r.h.degree(v) < g.degree(v)) return false;
  return true;
}

bool trial_diameter(std::uint64_t s) {
  const int n = 12 + static_cast<int>(s % 37);
  const int d = 3 + static_cast<int>(s % 5);
  Graph g = connected_instance(s, n, d, MindegModel::gnp_repair);
  auto diam = diameter(g);
  return diam && *diam <= 3.0 * n / d;
}

bool trial_c2l(std::uint64_t s) {
  const int qs[] = {2, 3, 4};
  const PrimePower pp = PrimePower::parse(qs[s % 3]);
  Graph g = incidence_graph(pp);
  const int ell = 2, d = pp.q + 1;
  auto ball = c2l_ball(g, 0, ell, d);
  if (ball.ball_size < ball.threshold) return false;
  PathFamily pf = c2l_reach(g, 0, ell, d, Rng::derive(s, 33));
  if (!pf.validate(g, false)) return false;
  const long long usage_cap = static_cast<long long>(
      std::ceil(std::pow(static_cast<double>(d) / (2 * ell), ell - 1) - 1e-9));
  for (int v = 0; v < g.order(); ++v)
    if (v != pf.root && pf.usage[v] > usage_cap) return false;
  for (int z : pf.endpoints)
    if (static_cast<int>(pf.paths.at(z).size()) - 1 != ell) return false;
  return true;
}

bool trial_prop61(std::uint64_t s) {
  const int t = 2 + static_cast<int>(s % 2);
  const int ell = 2 + static_cast<int>((s / 2) % 2);
  const int m = 10, n = 10;
  auto res = random_theta_free(m, n, t, ell, Rng::derive(s, 61));
  if (find_theta(res.g, t, ell)) return false;
  const double q = ell / 2;
  if (ell % 2 == 1) {
    const double expo = -static_cast<double>(t) * q / (2 * t * q + t - 1);
    const double closed = std::pow(m, expo) * std::pow(n, expo);
    if (std::fabs(res.report.p - std::min(1.0, closed)) > 1e-9) return false;
  } else if (res.report.p < 1.0) {
    const double lhs = std::pow(m, t * (q - 1) + 1) * std::pow(n, t * q + 1) *
                       std::pow(res.report.p, 2 * t * q);
    const double rhs = static_cast<double>(m) * n * res.report.p;
    if (lhs > rhs * (1 + 1e-6)) return false;
  }
  return res.report.edges_after >= 0;
}

int run_lemma_suite(Run& run, const std::string& lemma, int trials, std::uint64_t seed, int jobs) {
  bool (*trial)(std::uint64_t) = nullptr;
  if (lemma == "2.2") trial = trial_expansion;
  else if (lemma == "2.3") trial = trial_reach;
  else if (lemma == "2.4") trial = trial_bipartize;
  else if (lemma == "2.5") trial = trial_diameter;
  else if (lemma == "3.2") trial = trial_c2l;
  else if (lemma == "prop6.1") trial = trial_prop61;
  else throw std::invalid_argument("unknown lemma id " + lemma);

  std::vector<char> ok(trials, 0);
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) ok[i] = trial(Rng::derive(seed, static_cast<std::uint64_t>(i)));
  };
  jobs = std::max(1, jobs);
  if (jobs == 1 || trials < 2) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (trials + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(work, std::min(trials, j * chunk), std::min(trials, (j + 1) * chunk));
    for (auto& th : pool) th.join();
  }
  int passed = 0;
  std::vector<int> failed;
  for (int i = 0; i < trials; ++i) {
    if (ok[i]) ++passed;
    else failed.push_back(i);
  }
  run.result = json{{"kind", "lemma_suite"}, {"lemma", lemma},   {"trials", trials},
                    {"passed", passed},      {"failed", failed}, {"seed", seed}};
  run.summary = std::to_string(passed) + "/" + std::to_string(trials) + " pass";
  return passed == trials ? 0 : 2;
}

// ---- dispatcher ----------------------------------------------------------

int run_argv(const std::vector<std::string>& args);

int dispatch(Run& run, CLI::App& app, std::vector<std::string> args) {
  // smoothness flags shared by several subcommands
  struct Common {
    double alpha = 1.5, beta = 1.0, rho = 1.0, bigc = 1.0, rho0 = 0.5, delta = 1.0;
    void attach(CLI::App* cmd) {
      cmd->add_option("--alpha", alpha);
      cmd->add_option("--beta", beta);
      cmd->add_option("--rho", rho);
      cmd->add_option("--bigc", bigc);
      cmd->add_option("--rho0", rho0);
      cmd->add_option("--delta", delta);
    }
    SmoothnessParams params() const { return {alpha, beta, rho, bigc, rho0}; }
  };

  app.require_subcommand(1);

  // constants
  auto* c_const = app.add_subcommand("constants", "derived thresholds from smoothness parameters");
  Common const_common;
  const_common.attach(c_const);
  bool const_c2l = false;
  int const_ell = 2;
  c_const->add_flag("--c2l", const_c2l);
  c_const->add_option("--ell", const_ell);

  // zarankiewicz / turan
  auto* c_zar = app.add_subcommand("zarankiewicz", "exact bipartite extremal number");
  int zm = 1, zn = 1;
  std::string zar_family;
  bool zar_heur = false, zar_table = false;
  int zar_cap = 16, zar_restarts = 32;
  c_zar->add_option("--m", zm)->required();
  c_zar->add_option("--n", zn)->required();
  c_zar->add_option("--family", zar_family)->required();
  c_zar->add_flag("--heuristic", zar_heur);
  c_zar->add_flag("--table", zar_table);
  c_zar->add_option("--exact-cap", zar_cap);
  c_zar->add_option("--restarts", zar_restarts);
  c_zar->add_option("--seed", run.seed);

  auto* c_tur = app.add_subcommand("turan", "exact Turan number");
  int tn = 1;
  std::string tur_family;
  bool tur_heur = false;
  int tur_cap = 10;
  c_tur->add_option("--n", tn)->required();
  c_tur->add_option("--family", tur_family)->required();
  c_tur->add_flag("--heuristic", tur_heur);
  c_tur->add_option("--exact-cap", tur_cap);
  c_tur->add_option("--seed", run.seed);

  // check-free / spectrum
  auto* c_free = app.add_subcommand("check-free", "forbidden-family scan");
  std::string free_input, free_family;
  c_free->add_option("--input", free_input)->required();
  c_free->add_option("--family", free_family)->required();

  auto* c_spec = app.add_subcommand("spectrum", "cycle lengths present");
  std::string spec_input;
  int spec_max = 16;
  c_spec->add_option("--input", spec_input)->required();
  c_spec->add_option("--max-len", spec_max);

  // lemma engines
  auto* c_bip = app.add_subcommand("bipartize", "max-cut spanning bipartite subgraph");
  std::string bip_input;
  c_bip->add_option("--input", bip_input)->required();

  auto* c_exp = app.add_subcommand("expansion", "two-layer expansion certificate");
  std::string exp_input;
  int exp_u = 0;
  Common exp_common;
  exp_common.attach(c_exp);
  c_exp->add_option("--input", exp_input)->required();
  c_exp->add_option("--u", exp_u);

  auto* c_reach = app.add_subcommand("reach", "robust reachability family");
  std::string reach_input;
  int reach_u = 0, reach_ell = 3, reach_cap = 2, reach_target = 0;
  bool reach_single = false;
  c_reach->add_option("--input", reach_input)->required();
  c_reach->add_option("--u", reach_u);
  c_reach->add_option("--ell-max", reach_ell);
  c_reach->add_option("--cap", reach_cap);
  c_reach->add_option("--target", reach_target);
  c_reach->add_flag("--one-at-a-time", reach_single);

  auto* c_c2l = app.add_subcommand("c2l-reach", "layered family for C_2l-free bipartite graphs");
  std::string c2l_input;
  int c2l_u = 0, c2l_ell = 2, c2l_d = 0;
  c_c2l->add_option("--input", c2l_input)->required();
  c_c2l->add_option("--u", c2l_u);
  c_c2l->add_option("--ell", c2l_ell);
  c_c2l->add_option("--d", c2l_d);
  c_c2l->add_option("--seed", run.seed);

  // constructor
  auto* c_cycle = app.add_subcommand("find-odd-cycle", "odd cycle through a same-side edge");
  std::string cyc_input, cyc_mode = "general";
  ConstructorConfig cyc_cfg;
  Common cyc_common;
  cyc_common.attach(c_cycle);
  c_cycle->add_option("--input", cyc_input)->required();
  c_cycle->add_option("--k", cyc_cfg.k)->required();
  c_cycle->add_option("--mode", cyc_mode)->check(CLI::IsMember({"general", "c2l"}));
  c_cycle->add_option("--ell", cyc_cfg.ell);
  c_cycle->add_option("--seed", run.seed);
  c_cycle->add_flag("--fidelity", cyc_cfg.enforce_fidelity);
  c_cycle->add_flag("--try-all-edges", cyc_cfg.try_all_same_side_edges);
  c_cycle->add_option("--reach-ell-max", cyc_cfg.reach_ell_max);
  c_cycle->add_option("--reach-cap", cyc_cfg.reach_cap);
  c_cycle->add_option("--split-min-frac", cyc_cfg.split_min_frac);
  c_cycle->add_option("--core-min-degree", cyc_cfg.core_min_degree);

  auto* c_peel = app.add_subcommand("peel", "degree-threshold peeling");
  std::string peel_input;
  double peel_delta = 1.0, peel_alpha = 1.5;
  c_peel->add_option("--input", peel_input)->required();
  c_peel->add_option("--delta", peel_delta);
  c_peel->add_option("--alpha", peel_alpha);

  // construct
  auto* c_gen = app.add_subcommand("construct", "extremal and random generators");
  c_gen->require_subcommand(1);
  auto* g_inc = c_gen->add_subcommand("incidence", "PG(2,q) point-line incidence graph");
  auto* g_pol = c_gen->add_subcommand("polarity", "polarity graph of PG(2,q)");
  int gen_q = 2;
  g_inc->add_option("--q", gen_q)->required();
  g_pol->add_option("--q", gen_q)->required();
  auto* g_theta = c_gen->add_subcommand("theta-free", "first-moment theta-free bipartite graph");
  int th_m = 12, th_n = 12, th_t = 2, th_ell = 2;
  g_theta->add_option("--m", th_m)->required();
  g_theta->add_option("--n", th_n)->required();
  g_theta->add_option("--t", th_t)->required();
  g_theta->add_option("--ell", th_ell)->required();
  g_theta->add_option("--seed", run.seed);
  auto* g_mindeg = c_gen->add_subcommand("mindeg", "random graph with min degree >= d");
  int md_n = 10, md_d = 2;
  std::string md_model = "gnp-repair";
  g_mindeg->add_option("--n", md_n)->required();
  g_mindeg->add_option("--d", md_d)->required();
  g_mindeg->add_option("--model", md_model)->check(CLI::IsMember({"matchings", "gnp-repair"}));
  g_mindeg->add_option("--seed", run.seed);

  // verify-lemma
  auto* c_lemma = app.add_subcommand("verify-lemma", "invariant suite over generated instances");
  std::string lemma_id;
  int lemma_trials = 100, lemma_jobs = 1;
  c_lemma->add_option("lemma", lemma_id)->required();
  c_lemma->add_option("--trials", lemma_trials);
  c_lemma->add_option("--seed", run.seed);
  c_lemma->add_option("--jobs", lemma_jobs);

  // rerun
  auto* c_rerun = app.add_subcommand("rerun", "replay a run manifest");
  std::string rerun_manifest;
  c_rerun->add_option("--manifest", rerun_manifest)->required();

  app.parse(std::move(args));

  if (c_rerun->parsed()) {
    json m = json::parse(slurp(rerun_manifest));
    for (auto& [path, hash] : m.at("input_hashes").items())
      if (fnv1a_hex(slurp(path)) != hash.get<std::string>())
        throw std::invalid_argument("input " + path + " changed since the manifest was written");
    std::vector<std::string> replay = m.at("argv").get<std::vector<std::string>>();
    replay.push_back("--out-dir");
    replay.push_back(run.out_dir);
    return run_argv(replay);
  }

  if (c_const->parsed()) {
    DerivedConstants dc = const_c2l
                              ? derive_constants_c2l(const_ell, const_common.delta)
                              : derive_constants(const_common.alpha, const_common.beta,
                                                 const_common.rho, const_common.delta);
    run.result = json::parse(dc.to_json());
    run.summary = "k0=" + std::to_string(dc.k0);
    return 0;
  }

  if (c_zar->parsed() || c_tur->parsed()) {
    const bool bip = c_zar->parsed();
    FamilySpec fam = load_family(run, bip ? zar_family : tur_family);
    SearchOptions opt;
    opt.heuristic = bip ? zar_heur : tur_heur;
    opt.seed = run.seed;
    opt.exact_cap_bipartite = zar_cap;
    opt.exact_cap_turan = tur_cap;
    opt.heuristic_restarts = zar_restarts;
    auto solve = [&](int m, int n) {
      const char* cache_dir = std::getenv("EXTREMAL_CACHE_DIR");
      std::string key = std::string(bip ? "z" : "ex") + "_" + std::to_string(m) + "_" +
                        std::to_string(n) + "_" + fnv1a_hex(fam.to_json()) +
                        (opt.heuristic ? "_h" + std::to_string(opt.seed) : "_x") + ".json";
      if (cache_dir) {
        fs::path hit = fs::path(cache_dir) / key;
        if (fs::exists(hit)) {
          json j = json::parse(slurp(hit.string()));
          ExtremalRecord r;
          r.bipartite = bip;
          r.m = m;
          r.n = n;
          r.family = fam;
          r.value = j.at("value").get<int>();
          r.exact = j.at("exact").get<bool>();
          r.witness = read_graph(j.at("witness").get<std::string>());
          return r;
        }
      }
      ExtremalRecord r = bip ? exg::zarankiewicz(m, n, fam, opt) : exg::turan(n, fam, opt);
      if (cache_dir) {
        fs::create_directories(cache_dir);
        spit(fs::path(cache_dir) / key,
             json{{"value", r.value}, {"exact", r.exact}, {"witness", write_graph(r.witness)}}.dump());
      }
      return r;
    };
    if (bip && zar_table) {
      std::ostringstream csv;
      csv << "m,n,family-hash,value,exact,witness-file\n";
      json rows = json::array();
      for (int mm = 1; mm <= zm; ++mm)
        for (int nn = mm; nn <= zn; ++nn) {
          ExtremalRecord r = solve(mm, nn);
          std::string wf = "witness_" + std::to_string(mm) + "_" + std::to_string(nn) + ".txt";
          run.write_artifact(wf, write_graph(r.witness));
          csv << mm << "," << nn << "," << fnv1a_hex(fam.to_json()) << "," << r.value << ","
              << (r.exact ? "true" : "false") << "," << wf << "\n";
          rows.push_back(record_json(r, wf));
        }
      run.write_artifact("z-table.csv", csv.str());
      run.result = json{{"kind", "extremal_table"}, {"rows", rows}, {"csv", "z-table.csv"}};
      run.summary = "table up to " + std::to_string(zm) + "x" + std::to_string(zn);
      return 0;
    }
    ExtremalRecord r = solve(bip ? zm : tn, bip ? zn : tn);
    run.write_artifact("witness.txt", write_graph(r.witness));
    run.result = record_json(r, "witness.txt");
    run.summary = "value=" + std::to_string(r.value);
    return 0;
  }

  if (c_free->parsed()) {
    Graph g = load_graph(run, free_input);
    FamilySpec fam = load_family(run, free_family);
    auto res = is_family_free(g, fam);
    run.result = json{{"kind", "freeness"}, {"free", res.free}};
    if (res.witness) run.result["witness"] = witness_json(*res.witness);
    run.summary = res.free ? "free" : "witness found";
    return 0;
  }

  if (c_spec->parsed()) {
    Graph g = load_graph(run, spec_input);
    auto lens = cycle_spectrum(g, spec_max);
    auto gi = girth(g);
    run.result = json{{"kind", "cycle_spectrum"}, {"max_len", spec_max}, {"lengths", lens}};
    run.result["girth"] = gi ? json(*gi) : json(nullptr);
    run.summary = std::to_string(lens.size()) + " lengths";
    return 0;
  }

  if (c_bip->parsed()) {
    Graph g = load_graph(run, bip_input);
    auto r = bipartize(g);
    run.write_artifact("h.txt", write_graph(r.h));
    run.result = json{{"kind", "bipartize"},
                      {"left", r.parts.left.to_vector()},
                      {"right", r.parts.right.to_vector()},
                      {"cut_history", r.cut_history},
                      {"h_file", "h.txt"}};
    run.summary = "cut=" + std::to_string(r.h.edge_count());
    return 0;
  }

  if (c_exp->parsed()) {
    Graph g = load_graph(run, exp_input);
    auto out = expansion_cert(g, exp_u, exp_common.delta, exp_common.params());
    if (auto* fr = std::get_if<FailureReport>(&out)) {
      run.result = json::parse(fr->to_json());
      run.summary = "failure: " + fr->step;
      return 2;
    }
    run.result = json::parse(std::get<ExpansionCert>(out).to_json());
    run.summary = "j0=" + std::to_string(std::get<ExpansionCert>(out).j0);
    return 0;
  }

  if (c_reach->parsed()) {
    Graph g = load_graph(run, reach_input);
    PathFamily pf = robust_reach(g, reach_u, reach_ell, reach_cap, reach_target, !reach_single);
    run.result = json::parse(pf.to_json());
    run.summary = std::to_string(pf.endpoints.size()) + " endpoints";
    return 0;
  }

  if (c_c2l->parsed()) {
    Graph g = load_graph(run, c2l_input);
    const int d = c2l_d > 0 ? c2l_d : g.min_degree();
    PathFamily pf = c2l_reach(g, c2l_u, c2l_ell, d, run.seed);
    run.result = json::parse(pf.to_json());
    run.summary = std::to_string(pf.endpoints.size()) + " endpoints";
    return 0;
  }

  if (c_cycle->parsed()) {
    Graph g = load_graph(run, cyc_input);
    cyc_cfg.mode = cyc_mode == "c2l" ? ConstructorConfig::Mode::c2l : ConstructorConfig::Mode::general;
    cyc_cfg.smooth = cyc_common.params();
    cyc_cfg.delta = cyc_common.delta;
    cyc_cfg.seed = run.seed;
    auto out = find_odd_cycle(g, cyc_cfg);
    if (auto* cw = std::get_if<CycleWitness>(&out)) {
      run.result = json::parse(cw->to_json());
      run.summary = "cycle of length " + std::to_string(cw->vertices.size());
      return 0;
    }
    if (auto* bc = std::get_if<BipartiteCert>(&out)) {
      run.result = json::parse(bc->to_json());
      run.summary = "bipartite";
      return 1;
    }
    const auto& fr = std::get<FailureReport>(out);
    run.result = json::parse(fr.to_json());
    run.summary = "failure: " + fr.step;
    return 2;
  }

  if (c_peel->parsed()) {
    Graph g = load_graph(run, peel_input);
    PeelReport rep = peel_bipartize(g, peel_delta, peel_alpha);
    run.write_artifact("h.txt", write_graph(rep.h));
    run.result = json::parse(rep.to_json());
    run.result["h_file"] = "h.txt";
    run.summary = "removed " + std::to_string(rep.removed.size());
    return 0;
  }

  if (c_gen->parsed()) {
    if (g_inc->parsed() || g_pol->parsed()) {
      PrimePower pp = PrimePower::parse(gen_q);
      Graph g = g_inc->parsed() ? incidence_graph(pp) : polarity_graph(pp);
      run.write_artifact("graph.txt", write_graph(g));
      run.result = json{{"kind", g_inc->parsed() ? "incidence" : "polarity"},
                        {"q", pp.q},
                        {"order", g.order()},
                        {"edges", g.edge_count()},
                        {"graph_file", "graph.txt"}};
      run.summary = std::to_string(g.edge_count()) + " edges";
      return 0;
    }
    if (g_theta->parsed()) {
      auto res = random_theta_free(th_m, th_n, th_t, th_ell, run.seed);
      run.write_artifact("graph.txt", write_graph(res.g));
      run.result = json::parse(res.report.to_json());
      run.result["graph_file"] = "graph.txt";
      run.summary = std::to_string(res.report.edges_after) + " edges after deletion";
      return 0;
    }
    Graph g = random_mindeg_graph(md_n, md_d, run.seed,
                                  md_model == "matchings" ? MindegModel::matchings
                                                          : MindegModel::gnp_repair);
    run.write_artifact("graph.txt", write_graph(g));
    run.result = json{{"kind", "mindeg"},      {"n", md_n},
                      {"d", md_d},             {"model", md_model},
                      {"edges", g.edge_count()}, {"graph_file", "graph.txt"}};
    run.summary = std::to_string(g.edge_count()) + " edges";
    return 0;
  }

  if (c_lemma->parsed()) return run_lemma_suite(run, lemma_id, lemma_trials, run.seed, lemma_jobs);

  throw std::invalid_argument("no subcommand");
}

int run_argv(const std::vector<std::string>& args) {
  Run run;
  std::vector<std::string> filtered;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out-dir") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--out-dir needs a value");
      run.out_dir = args[++i];
      continue;
    }
    filtered.push_back(args[i]);
  }
  run.stored_argv = filtered;

  CLI::App app{"extremal graph toolkit"};
  app.allow_extras(false);
  // CLI11 parses reversed argv without the program name
  std::vector<std::string> rev(filtered.rbegin(), filtered.rend());
  try {
    run.exit_code = dispatch(run, app, rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
  if (filtered.empty() || filtered[0] != "rerun") run.emit();
  return run.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_argv(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
