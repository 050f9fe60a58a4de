// Command-line surface: generate test families, analyze spectra, run the
// coloring / independent-set pipelines, replay the randomized property
// suites, and sweep benchmark grids into CSV.
//
// Exit codes: 0 success, 1 error, 2 output valid but coverage target missed.

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcol/errors.hpp"
#include "tcol/graph.hpp"
#include "tcol/json_io.hpp"
#include "tcol/pseudo.hpp"
#include "tcol/relaxation.hpp"
#include "tcol/rng.hpp"
#include "tcol/rounding.hpp"
#include "tcol/spectral.hpp"

using namespace tcol;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << text;
}

int fail_json(const std::exception& e, const std::string& type) {
  ordered_json j;
  j["error"] = e.what();
  j["type"] = type;
  std::cerr << j.dump() << '\n';
  return 1;
}

// "2..5" (inclusive range), "0.1,0.2,0.4" (list) or a single value.
std::vector<double> parse_sweep(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    double lo = std::stod(s.substr(0, dots));
    double hi = std::stod(s.substr(dots + 2));
    for (double v = lo; v <= hi + 1e-9; v += 1.0) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

struct CommonOpts {
  std::string input, out;
  double eps = 0.1, delta = 0.0;
  std::string mode = "auto";
  std::uint64_t seed = 1;
  int rounds = 0, samples = 0;
  double tol = 1e-7;
  int max_iters = 200000;
  int cap = 0;  // 0 = pick automatically
  bool allow_sdp_miss = false;
  std::string dump_solution;
  std::string transcript_path;
  std::string format = "json";
};

std::string render_report_text(const RoundingReport& rep) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << rep.mode << " n=" << rep.n << " d=" << rep.d << " backend=" << rep.backend
     << " eps=" << rep.eps << " delta=" << rep.delta << " lambda=" << rep.lambda
     << " r=" << rep.r << '\n'
     << "covered " << rep.achieved << " / " << rep.n << " (target " << rep.target << ", "
     << (rep.target_met ? "met" : "missed") << (rep.degenerate_target ? ", degenerate" : "")
     << ")\n"
     << "valid=" << (rep.valid ? "yes" : "no")
     << " global_correlation=" << rep.global_correlation
     << " local_correlation=" << rep.local_correlation << " (cap " << rep.local_correlation_cap
     << ")\n"
     << "conditioning: rounds=" << rep.conditioning_rounds
     << " samples=" << rep.conditioning_samples << " target=" << rep.conditioning_target
     << '\n';
  return os.str();
}

void add_pipeline_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--input,-i", o.input, "graph file (edge list or DIMACS .col)")->required();
  cmd->add_option("--out,-o", o.out, "report path ('-' = stdout)");
  cmd->add_option("--eps", o.eps, "slack parameter in (0,1)");
  cmd->add_option("--delta", o.delta, "uncolored / missing-mass fraction");
  cmd->add_option("--mode", o.mode, "exact | sdp | auto (exact when n <= 15)");
  cmd->add_option("--seed", o.seed, "conditioning seed");
  cmd->add_option("--rounds", o.rounds, "conditioning rounds per sequence (0 = auto)");
  cmd->add_option("--samples", o.samples, "sampled conditioning sequences (0 = auto)");
  cmd->add_option("--tol", o.tol, "solver residual tolerance");
  cmd->add_option("--max-iters", o.max_iters, "solver iteration cap");
  cmd->add_option("--cap", o.cap, "exact-mode enumeration cap override");
  cmd->add_flag("--allow-sdp-miss", o.allow_sdp_miss,
                "exit 0 when an sdp-mode run is valid but misses the coverage target");
  cmd->add_option("--dump-solution", o.dump_solution, "write the sdp solution dump here");
  cmd->add_option("--transcript", o.transcript_path, "write the conditioning transcript here");
  cmd->add_option("--format", o.format, "json | text");
}

PipelineConfig pipeline_config(const CommonOpts& o, int n) {
  PipelineConfig cfg;
  if (o.mode == "exact")
    cfg.mode = BackendMode::exact;
  else if (o.mode == "sdp")
    cfg.mode = BackendMode::sdp;
  else if (o.mode == "auto")
    cfg.mode = n <= 15 ? BackendMode::exact : BackendMode::sdp;
  else
    throw PreconditionError("unknown mode: " + o.mode);
  cfg.seed = o.seed;
  cfg.rounds = o.rounds;
  cfg.samples = o.samples;
  cfg.enumeration_cap = o.cap > 0 ? o.cap : 20;  // exponential-guard default
  cfg.solver.tolerance = o.tol;
  cfg.solver.max_iterations = o.max_iters;
  return cfg;
}

int run_pipeline(const CommonOpts& o, bool coloring) {
  Graph g = load_graph_file(o.input);
  PipelineConfig cfg = pipeline_config(o, g.n);
  RoundingReport rep = coloring ? solve_3coloring(g, o.eps, o.delta, cfg)
                                : solve_max_is(g, o.eps, o.delta, cfg);
  if (o.format == "text")
    write_text(o.out, render_report_text(rep));
  else
    write_text(o.out, report_to_json(rep).dump(2) + "\n");
  if (!o.transcript_path.empty())
    write_text(o.transcript_path, transcript_to_json(rep.transcript).dump(2) + "\n");
  if (!o.dump_solution.empty() && cfg.mode == BackendMode::sdp) {
    // re-derive a solution dump from a fresh solve so the dump matches the
    // unconditioned problem
    RelaxationProblem prob = coloring ? build_coloring_relaxation(g, o.delta)
                                      : build_is_relaxation(g, o.delta);
    SolveResult res = solve(prob, cfg.solver);
    if (res.distribution)
      write_text(o.dump_solution, solution_to_json(*res.distribution).dump(2) + "\n");
  }
  if (!rep.valid) return 1;
  if (rep.target_met) return 0;
  if (o.allow_sdp_miss && cfg.mode == BackendMode::sdp) return 0;
  return 2;
}

// ---- generate -------------------------------------------------------------

int cmd_generate(const std::string& family, int k, int m, int t, int copies, double delta,
                 std::uint64_t seed, const std::vector<std::string>& inputs,
                 const std::string& out, const std::string& sidecar) {
  Graph g;
  ordered_json params;
  if (family == "multipartite") {
    g = complete_multipartite(k, m);
    params = {{"k", k}, {"m", m}};
  } else if (family == "blowup") {
    Graph base = inputs.empty() ? complete_multipartite(k, m) : load_graph_file(inputs[0]);
    g = blow_up(base, t);
    params = {{"t", t}, {"base_n", base.n}};
  } else if (family == "union") {
    std::vector<Graph> parts;
    if (!inputs.empty())
      for (const auto& p : inputs) parts.push_back(load_graph_file(p));
    else
      for (int c = 0; c < copies; ++c) parts.push_back(complete_multipartite(k, m));
    g = disjoint_union(parts);
    params = {{"components", static_cast<int>(parts.size())}};
  } else if (family == "perturbed") {
    Graph base = inputs.empty() ? complete_multipartite(k, m) : load_graph_file(inputs[0]);
    g = perturb_almost_colorable(base, delta, seed);
    params = {{"delta", delta}, {"seed", seed}};
  } else {
    throw PreconditionError("unknown family: " + family);
  }

  std::ostringstream body;
  write_graph(g, body);
  write_text(out, body.str());

  if (!sidecar.empty()) {
    Spectrum s = random_walk_spectrum(g);
    ordered_json j;
    j["family"] = family;
    j["params"] = std::move(params);
    j["n"] = g.n;
    j["d"] = g.degree;
    j["spectrum"] = spectrum_summary_json(s);
    j["threshold_rank_at_0.1"] = threshold_rank(s, 0.1);
    write_text(sidecar, j.dump(2) + "\n");
  }
  return 0;
}

// ---- analyze --------------------------------------------------------------

int cmd_analyze(const std::string& input, double eps, const std::string& out) {
  Graph g = load_graph_file(input);
  Spectrum s = random_walk_spectrum(g);
  ordered_json j;
  j["n"] = g.n;
  j["d"] = g.degree;
  j["edges"] = g.edge_count();
  j["spectrum"] = spectrum_summary_json(s);
  j["eps"] = eps;
  j["threshold_rank"] = threshold_rank(s, eps);
  j["lambda"] = eps / 100.0;
  j["threshold_rank_at_lambda"] = threshold_rank(s, eps / 100.0);
  write_text(out, j.dump(2) + "\n");
  return 0;
}

// ---- verify -----------------------------------------------------------------

// Re-reads a report from disk and re-checks its output against the graph:
// coloring validity / set independence, and the sizes the report claims.
int cmd_verify(const std::string& graph_path, const std::string& report_path,
               const std::string& out_path) {
  Graph g = load_graph_file(graph_path);
  std::ifstream in(report_path);
  if (!in) throw ParseError("cannot open report file: " + report_path);
  ordered_json rep = ordered_json::parse(in);

  ordered_json out;
  out["report"] = report_path;
  bool ok = true;
  std::string mode = rep.at("mode").get<std::string>();
  if (mode == "coloring") {
    PartialColoring c;
    c.assignment = rep.at("coloring").get<std::vector<int>>();
    ColoringVerdict v = verify_partial_coloring(g, c);
    ok = v.valid;
    out["valid"] = v.valid;
    out["colored_count"] = v.colored_count;
    double achieved = rep.at("achieved").get<double>();
    std::size_t s_size = rep.at("sets").at("S").size();
    if (static_cast<double>(s_size) != achieved || v.colored_count != static_cast<int>(s_size)) {
      ok = false;
      out["size_mismatch"] = true;
    }
  } else if (mode == "independent_set") {
    std::vector<int> s = rep.at("independent_set").get<std::vector<int>>();
    std::vector<char> in_s(g.n, 0);
    for (int u : s) {
      if (u < 0 || u >= g.n) throw ParseError("vertex out of range in report");
      in_s[u] = 1;
    }
    bool independent = true;
    for (const auto& [a, b] : g.edges)
      if (in_s[a] && in_s[b]) independent = false;
    ok = independent && static_cast<double>(s.size()) == rep.at("achieved").get<double>();
    out["independent"] = independent;
    out["size"] = s.size();
  } else {
    throw ParseError("unknown report mode: " + mode);
  }
  out["pass"] = ok;
  write_text(out_path, out.dump(2) + "\n");
  return ok ? 0 : 1;
}

// ---- lemma-check ----------------------------------------------------------

int check_corr_lb(long trials, std::uint64_t seed, ordered_json& out) {
  Rng rng(seed);
  long done = 0, stated_misses = 0;
  double worst_margin = 1e300, worst_stated = 1e300;
  while (done < trials) {
    double gamma = rng.next_in(1e-9, 0.25 - 1e-9);
    double eta = rng.next_in(1e-9, 0.25 - 1e-9);
    // draw a simplex point over {uncolored, 3 colors} and keep it when it
    // satisfies the preconditions
    auto draw = [&](std::vector<double>& p) {
      double e1 = -std::log(rng.next_double() + 1e-300);
      double e2 = -std::log(rng.next_double() + 1e-300);
      double e3 = -std::log(rng.next_double() + 1e-300);
      double e4 = -std::log(rng.next_double() + 1e-300);
      double s = e1 + e2 + e3 + e4;
      p = {e1 / s, e2 / s, e3 / s, e4 / s};
      if (p[0] > eta) return false;
      for (int c = 1; c <= 3; ++c)
        if (p[c] > 0.5 + gamma) return false;
      return true;
    };
    std::vector<double> px, py;
    if (!draw(px) || !draw(py)) continue;
    ++done;
    auto res = correlation_lower_bound(px, py, gamma, eta);
    worst_margin = std::min(worst_margin, res.value - res.corrected_bound);
    worst_stated = std::min(worst_stated, res.value - res.bound);
    if (!res.holds) ++stated_misses;
    // pass/fail runs against the provable constant 1/4 - eta - gamma; the
    // stated constant 1/4 - eta/2 - gamma overshoots the true minimum
    // (1/2 - gamma - eta)^2 on part of the precondition box and its miss
    // count is reported for transparency
    if (!res.holds_corrected) {
      out["violation"] = {{"px", px}, {"py", py}, {"gamma", gamma}, {"eta", eta},
                          {"value", res.value}, {"corrected_bound", res.corrected_bound}};
      return 1;
    }
  }
  out["trials"] = done;
  out["worst_margin"] = worst_margin;
  out["stated_bound_misses"] = stated_misses;
  out["stated_bound_worst_margin"] = worst_stated;
  return 0;
}

int check_local_global(long trials, std::uint64_t seed, ordered_json& out) {
  Rng rng(seed);
  double worst_margin = 1e300;
  for (long t = 0; t < trials; ++t) {
    int n = 8 + static_cast<int>(rng.next_below(9));
    int d = 3 + static_cast<int>(rng.next_below(4));
    if ((n * d) % 2 != 0) d += 1;
    Graph g = random_regular(n, d, rng.next_u64());
    int k = 1 + static_cast<int>(rng.next_below(n));
    SymmetricMatrix m(n);
    std::vector<double> z(static_cast<std::size_t>(n) * k);
    for (auto& x : z) x = rng.next_normal();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int c = 0; c < k; ++c) s += z[i * k + c] * z[j * k + c];
        m.set(i, j, s);
      }
    double tr = m.trace();
    if (tr <= 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, m(i, j) * (n / tr));
    double lambda = rng.next_in(0.01, 0.9);
    int r = threshold_rank(random_walk_spectrum(g), lambda);
    auto res = local_to_global_check(m, g, lambda, r);
    worst_margin = std::min(worst_margin, res.bound - res.edge_average);
    if (!res.holds) {
      out["violation"] = {{"n", n}, {"d", d}, {"lambda", lambda}, {"r", r},
                          {"lhs", res.edge_average}, {"rhs", res.bound}};
      return 1;
    }
  }
  out["trials"] = trials;
  out["worst_margin"] = worst_margin;
  return 0;
}

int check_pinsker(long trials, std::uint64_t seed, ordered_json& out) {
  Rng rng(seed);
  double worst_margin = 1e300;
  for (long t = 0; t < trials; ++t) {
    int q = 4;
    std::vector<std::vector<int>> cells;
    std::vector<double> w;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        cells.push_back({a, b});
        w.push_back(rng.next_double());
      }
    ExactDistribution d(q, std::move(cells), std::move(w));
    auto pr = pinsker_gap(d, 0, 1);
    double mi = mutual_information(d, 0, 1);
    double margin = 2.0 * mi + 1e-9 - pr.l1_distance * pr.l1_distance;
    worst_margin = std::min(worst_margin, margin);
    if (!pr.holds || margin < 0.0) {
      out["violation"] = {{"l1", pr.l1_distance}, {"bound", pr.bound}, {"mi", mi}};
      return 1;
    }
  }
  out["trials"] = trials;
  out["worst_margin"] = worst_margin;
  return 0;
}

int check_conditioning(long trials, std::uint64_t seed, ordered_json& out) {
  // statistical check of the conditioning bound log(q)/(l-1) on uniform
  // colorings of K_{m,m,m}
  long samples = std::max<long>(trials, 200);
  ordered_json runs = ordered_json::array();
  for (int m : {2, 3, 4}) {
    Graph g = complete_multipartite(3, m);
    ExactDistribution d = exact_coloring_distribution(g, 0.0);
    for (int ell : {3, 4, 5}) {
      ConditioningOptions opt;
      opt.max_prefix = ell;
      opt.samples = static_cast<int>(samples);
      opt.target = -1.0;
      opt.seed = seed + m * 10 + ell;
      auto [best, tr] = conditioning_loop(d, opt);
      double best_mean = 1e300, best_se = 0.0;
      for (int k = 0; k <= ell; ++k) {
        double mean = 0.0;
        for (const auto& s : tr.sequences) mean += s.correlation_by_prefix[k];
        mean /= tr.sequences.size();
        double var = 0.0;
        for (const auto& s : tr.sequences) {
          double dlt = s.correlation_by_prefix[k] - mean;
          var += dlt * dlt;
        }
        var /= tr.sequences.size() > 1 ? tr.sequences.size() - 1 : 1;
        double se = std::sqrt(var / tr.sequences.size());
        if (mean < best_mean) {
          best_mean = mean;
          best_se = se;
        }
      }
      double bound = std::log(4.0) / (ell - 1);
      runs.push_back({{"m", m}, {"l", ell}, {"min_mean", best_mean},
                      {"bound", bound}, {"slack_3se", 3.0 * best_se}});
      if (best_mean > bound + 3.0 * best_se) {
        out["violation"] = runs.back();
        return 1;
      }
    }
  }
  out["runs"] = std::move(runs);
  return 0;
}

int check_four_color(ordered_json& out) {
  FourColorReport rep = four_color_counterexample();
  out["px"] = rep.px;
  out["py"] = rep.py;
  out["correlation"] = rep.correlation;
  out["max_marginal"] = rep.max_marginal;
  return rep.correlation == 0.0 && rep.max_marginal <= 0.5 ? 0 : 1;
}

int cmd_lemma_check(const std::string& which, long trials, std::uint64_t seed,
                    const std::string& out_path) {
  ordered_json out;
  out["check"] = which;
  int rc;
  if (which == "corr-lb")
    rc = check_corr_lb(trials, seed, out);
  else if (which == "local-global")
    rc = check_local_global(trials, seed, out);
  else if (which == "pinsker")
    rc = check_pinsker(trials, seed, out);
  else if (which == "conditioning")
    rc = check_conditioning(trials, seed, out);
  else if (which == "four-color")
    rc = check_four_color(out);
  else
    throw PreconditionError("unknown check: " + which);
  out["pass"] = rc == 0;
  write_text(out_path, out.dump(2) + "\n");
  return rc;
}

// ---- bench ----------------------------------------------------------------

struct BenchRow {
  std::string family;
  int n = 0, r = 0;
  double eps = 0.0, delta = 0.0;
  std::string mode;
  double coverage = 0.0;
  bool valid = false;
  long wall_ms = 0;
  std::uint64_t seed = 0;
  bool failed = false;
};

std::string csv_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

BenchRow bench_one(const std::string& family, int m, double eps, double delta,
                   const std::string& mode, std::uint64_t seed, bool mis_task) {
  BenchRow row;
  row.family = family + "(" + std::to_string(m) + ")";
  row.eps = eps;
  row.delta = delta;
  row.mode = mode;
  row.seed = seed;
  auto start = std::chrono::steady_clock::now();
  try {
    Graph g;
    if (family == "multipartite")
      g = complete_multipartite(3, m);
    else if (family == "union2")
      g = disjoint_union({complete_multipartite(3, m), complete_multipartite(3, m)});
    else if (family == "blowup-c4")
      g = blow_up(complete_multipartite(2, 2), m);
    else if (family == "bipartite")
      g = complete_multipartite(2, m);
    else
      throw PreconditionError("unknown bench family: " + family);
    row.n = g.n;
    double lambda = mis_task ? std::pow(eps, 5) / 100.0 : eps / 100.0;
    row.r = threshold_rank(random_walk_spectrum(g), lambda);

    CommonOpts o;
    o.eps = eps;
    o.delta = delta;
    o.mode = mode;
    o.seed = seed;
    PipelineConfig cfg = pipeline_config(o, g.n);
    RoundingReport rep =
        mis_task ? solve_max_is(g, eps, delta, cfg) : solve_3coloring(g, eps, delta, cfg);
    row.coverage = rep.achieved / g.n;
    row.valid = rep.valid;
  } catch (const std::exception&) {
    row.failed = true;
  }
  row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

int cmd_bench(const std::string& family, const std::string& m_sweep, const std::string& eps_sweep,
              double delta, const std::string& mode, std::uint64_t seed, bool mis_task, int jobs,
              const std::string& out_path) {
  std::vector<double> ms = parse_sweep(m_sweep);
  std::vector<double> epss = parse_sweep(eps_sweep);
  if (epss.empty()) epss.push_back(0.1);

  struct Spec {
    int m;
    double eps;
  };
  std::vector<Spec> specs;
  if (!family.empty())
    for (double m : ms)
      for (double e : epss) specs.push_back({static_cast<int>(m), e});

  std::vector<BenchRow> rows(specs.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i)
      rows[i] = bench_one(family, specs[i].m, specs[i].eps, delta, mode, seed, mis_task);
  } else {
    std::vector<std::future<BenchRow>> futures;
    futures.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i)
      futures.push_back(std::async(std::launch::async, [&, i] {
        return bench_one(family, specs[i].m, specs[i].eps, delta, mode, seed, mis_task);
      }));
    for (std::size_t i = 0; i < specs.size(); ++i) rows[i] = futures[i].get();
  }

  std::ostringstream csv;
  csv << "family,n,r,eps,delta,mode,coverage_fraction,valid,wall_ms,seed\n";
  for (const BenchRow& r : rows)
    csv << r.family << ',' << r.n << ',' << r.r << ',' << csv_double(r.eps) << ','
        << csv_double(r.delta) << ',' << r.mode << ',' << csv_double(r.coverage) << ','
        << (r.valid ? "true" : "false") << ',' << r.wall_ms << ',' << r.seed << '\n';
  write_text(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-coloring and independent sets on low threshold rank graphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a test-family graph file");
  std::string gen_family = "multipartite", gen_out = "-", gen_sidecar;
  int gen_k = 3, gen_m = 2, gen_t = 2, gen_copies = 2;
  double gen_delta = 0.1;
  std::uint64_t gen_seed = 1;
  std::vector<std::string> gen_inputs;
  gen->add_option("--family", gen_family, "multipartite | blowup | union | perturbed")
      ->required();
  gen->add_option("--k", gen_k, "number of parts");
  gen->add_option("--m", gen_m, "part size");
  gen->add_option("--t", gen_t, "blow-up factor");
  gen->add_option("--copies", gen_copies, "union copies of multipartite(k,m)");
  gen->add_option("--delta", gen_delta, "perturbation fraction");
  gen->add_option("--seed", gen_seed, "perturbation seed");
  gen->add_option("--input", gen_inputs, "base graph file(s)");
  gen->add_option("--out,-o", gen_out, "output graph path");
  gen->add_option("--sidecar", gen_sidecar, "JSON sidecar path");

  // analyze
  auto* ana = app.add_subcommand("analyze", "spectrum summary and threshold rank");
  std::string ana_input, ana_out = "-";
  double ana_eps = 0.1;
  ana->add_option("--input,-i", ana_input)->required();
  ana->add_option("--eps", ana_eps);
  ana->add_option("--out,-o", ana_out);

  // color / mis
  auto* col = app.add_subcommand("color", "3-coloring pipeline");
  CommonOpts col_opts;
  add_pipeline_flags(col, col_opts);
  auto* mis = app.add_subcommand("mis", "independent-set pipeline");
  CommonOpts mis_opts;
  add_pipeline_flags(mis, mis_opts);

  // verify
  auto* ver = app.add_subcommand("verify", "re-verify a written report against its graph");
  std::string ver_graph, ver_report, ver_out = "-";
  ver->add_option("--input,-i", ver_graph, "graph file")->required();
  ver->add_option("--report,-r", ver_report, "report JSON")->required();
  ver->add_option("--out,-o", ver_out);

  // lemma-check
  auto* lem = app.add_subcommand("lemma-check", "randomized property suites");
  std::string lem_which, lem_out = "-";
  long lem_trials = 10000;
  std::uint64_t lem_seed = 1;
  lem->add_option("--which", lem_which,
                  "corr-lb | local-global | pinsker | conditioning | four-color")
      ->required();
  lem->add_option("--trials", lem_trials);
  lem->add_option("--seed", lem_seed);
  lem->add_option("--out,-o", lem_out);

  // bench
  auto* ben = app.add_subcommand("bench", "coverage sweeps to CSV");
  std::string ben_family, ben_m = "2..4", ben_eps = "0.1", ben_mode = "exact", ben_out = "-";
  std::string ben_task = "color";
  double ben_delta = 0.0;
  std::uint64_t ben_seed = 1;
  int ben_jobs = 1;
  ben->add_option("--family", ben_family, "multipartite | union2 | blowup-c4 | bipartite");
  ben->add_option("--m", ben_m, "part-size sweep, e.g. 2..5 or 2,4");
  ben->add_option("--eps", ben_eps, "eps sweep, e.g. 0.1,0.2");
  ben->add_option("--delta", ben_delta);
  ben->add_option("--mode", ben_mode);
  ben->add_option("--task", ben_task, "color | mis");
  ben->add_option("--seed", ben_seed);
  ben->add_option("--jobs", ben_jobs, "parallel rows");
  ben->add_option("--out,-o", ben_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints help/usage text
    return rc == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_family, gen_k, gen_m, gen_t, gen_copies, gen_delta, gen_seed,
                          gen_inputs, gen_out, gen_sidecar);
    if (ana->parsed()) return cmd_analyze(ana_input, ana_eps, ana_out);
    if (col->parsed()) return run_pipeline(col_opts, true);
    if (mis->parsed()) return run_pipeline(mis_opts, false);
    if (ver->parsed()) return cmd_verify(ver_graph, ver_report, ver_out);
    if (lem->parsed()) return cmd_lemma_check(lem_which, lem_trials, lem_seed, lem_out);
    if (ben->parsed())
      return cmd_bench(ben_family, ben_m, ben_eps, ben_delta, ben_mode, ben_seed,
                       ben_task == "mis", ben_jobs, ben_out);
  } catch (const ParseError& e) {
    return fail_json(e, "parse_error");
  } catch (const InfeasibleError& e) {
    return fail_json(e, "infeasible");
  } catch (const CapExceededError& e) {
    return fail_json(e, "cap_exceeded");
  } catch (const BackendInconsistencyError& e) {
    return fail_json(e, "backend_inconsistency");
  } catch (const std::exception& e) {
    return fail_json(e, "error");
  }
  return 1;
}
