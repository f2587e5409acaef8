// Command line front end: instance generation, single solves, benchmark
// tables, and oracle verification.

#include "mobb/mobb.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

mobb::instance load_instance(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return mobb::parse(ss.str());
}

void write_file(fs::path const& path, std::string const& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

struct generate_opts {
  std::string cls = "knapsack";
  int n = 50, m = 1, l = 10, q = 2;
  int count = 20;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

std::string instance_stem(generate_opts const& o, int k) {
  std::ostringstream name;
  if (o.cls == "knapsack")
    name << "knapsack_m" << o.m << "_n" << o.n;
  else if (o.cls == "assignment")
    name << "assignment_l" << o.l;
  else
    name << "facility_l" << o.l << "_q" << o.q;
  name << "_" << k;
  return name.str();
}

mobb::instance generate_one(generate_opts const& o, std::uint64_t seed) {
  if (o.cls == "knapsack") return mobb::gen_knapsack(o.n, o.m, seed);
  if (o.cls == "assignment") return mobb::gen_assignment(o.l, seed);
  if (o.cls == "facility_location") return mobb::gen_facility_location(o.l, o.q, seed);
  throw CLI::ValidationError("--class must be knapsack, assignment, or facility_location");
}

int cmd_generate(generate_opts const& o) {
  fs::create_directories(o.out_dir);
  std::ostringstream manifest;
  manifest << "# class " << o.cls << " count " << o.count << " base_seed " << o.seed << "\n";
  for (int k = 0; k < o.count; ++k) {
    std::uint64_t const seed = o.seed + static_cast<std::uint64_t>(k);
    auto inst = generate_one(o, seed);
    auto name = instance_stem(o, k) + ".boilp";
    write_file(fs::path(o.out_dir) / name, mobb::serialize(inst));
    manifest << name << " seed " << seed << "\n";
  }
  write_file(fs::path(o.out_dir) / "manifest.txt", manifest.str());
  std::cout << "wrote " << o.count << " instance(s) and manifest to " << o.out_dir << "\n";
  return 0;
}

mobb::budget make_budget(std::uint64_t nodes, double seconds) {
  mobb::budget b;
  if (nodes > 0) b.max_nodes = nodes;
  if (seconds > 0) b.max_seconds = seconds;
  return b;
}

template <typename S>
mobb::solve_result<S> run_solve(mobb::instance const& inst, mobb::strategy const& strat,
                                mobb::budget const& bud = {}) {
  if constexpr (std::is_same_v<S, mobb::rat>)
    return mobb::solve_exact(inst, strat, bud);
  else
    return mobb::solve<S>(inst, strat, bud);
}

template <typename S>
int solve_and_report(mobb::instance const& inst, std::string const& version,
                     mobb::strategy const& strat, mobb::budget const& bud,
                     std::string const& format, bool verify, std::string const& log_path) {
  auto res = run_solve<S>(inst, strat, bud);

  if (!log_path.empty()) {
    std::ofstream log(log_path);
    for (auto const& ev : res.stats.events) {
      json j;
      switch (ev.k) {
        case mobb::run_event::kind::fathomed_infeasible: j["event"] = "fathom_infeasible"; break;
        case mobb::run_event::kind::fathomed_optimality: j["event"] = "fathom_optimality"; break;
        case mobb::run_event::kind::fathomed_dominance: j["event"] = "fathom_dominance"; break;
        case mobb::run_event::kind::branched: j["event"] = "branch"; break;
        case mobb::run_event::kind::ws_trigger: j["event"] = "ws_trigger"; break;
        case mobb::run_event::kind::awt_trigger: j["event"] = "awt_trigger"; break;
      }
      j["iter"] = ev.iteration;
      j["node"] = ev.node_id;
      if (ev.k == mobb::run_event::kind::branched) j["var"] = ev.a;
      if (ev.k == mobb::run_event::kind::ws_trigger ||
          ev.k == mobb::run_event::kind::awt_trigger)
        j["outcome"] = ev.outcome == 0 ? "solved" : (ev.outcome == 1 ? "cache_hit" : "skipped");
      j["cuts"] = ev.cuts_applied;
      log << j.dump() << "\n";
    }
  }

  if (res.stats.root_infeasible) {
    std::cout << "infeasible instance (root relaxation infeasible)\n";
    return 0;
  }
  if (res.stats.schedule_fallback)
    std::cerr << "warning: generic class tag, scalarization schedule falls back to the "
                 "knapsack table\n";

  if (format == "csv") {
    std::cout << "z1,z2\n";
    for (auto const& [img, sol] : res.frontier) std::cout << img.z1 << "," << img.z2 << "\n";
  } else if (format == "jsonl") {
    for (auto const& [img, sol] : res.frontier) {
      json j;
      j["type"] = "frontier_point";
      j["z1"] = img.z1;
      j["z2"] = img.z2;
      std::string bits(sol.assignment.size(), '0');
      for (std::size_t i = 0; i < sol.assignment.size(); ++i)
        if (sol.assignment[i]) bits[i] = '1';
      j["x"] = bits;
      std::cout << j.dump() << "\n";
    }
    json j;
    j["type"] = "stats";
    j["version"] = version;
    j["nodes"] = res.stats.nodes_explored;
    j["ips"] = res.stats.ips_solved;
    j["time_s"] = res.stats.wall_seconds;
    j["complete"] = res.stats.complete;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "frontier (" << res.frontier.size() << " points):\n";
    for (auto const& [img, sol] : res.frontier)
      std::cout << "  (" << img.z1 << ", " << img.z2 << ")\n";
    std::cout << "version: " << version << "\n";
    std::cout << "nodes: " << res.stats.nodes_explored
              << "  ips: " << res.stats.ips_solved << "  time (s): " << std::fixed
              << std::setprecision(3) << res.stats.wall_seconds << "\n";
    if (!res.stats.complete) std::cout << "warning: budget exceeded, result incomplete\n";
  }

  if (verify) {
    auto oracle = mobb::brute_force_frontier(inst);
    std::vector<mobb::ipoint2> got;
    for (auto const& [img, sol] : res.frontier) got.push_back(img);
    bool const match = got == oracle.frontier;
    std::cout << "oracle: " << (match ? "match" : "MISMATCH") << "\n";
    if (!match) return 1;
  }
  return 0;
}

int cmd_bench(std::string const& cls, std::vector<int> const& sizes, int m, int q_ratio_q,
              std::vector<std::string> const& versions, int count, std::uint64_t seed,
              std::string const& out_dir, mobb::budget const& bud, int jobs, bool exact,
              bool plot) {
  fs::create_directories(out_dir);
  for (auto const& v : versions)
    if (!mobb::parse_version(v))
      throw CLI::ValidationError("unknown version '" + v + "'; known: " +
                                 mobb::version_grid_names());

  struct series_point {
    int size;
    std::vector<double> nodes, time_s;
  };
  std::vector<series_point> series;

  for (int size : sizes) {
    std::vector<mobb::instance> instances;
    generate_opts g;
    g.cls = cls;
    g.count = count;
    for (int k = 0; k < count; ++k) {
      std::uint64_t const s = seed + static_cast<std::uint64_t>(k);
      if (cls == "knapsack")
        instances.push_back(mobb::gen_knapsack(size, m, s));
      else if (cls == "assignment")
        instances.push_back(mobb::gen_assignment(size, s));
      else if (cls == "facility_location")
        instances.push_back(mobb::gen_facility_location(size, q_ratio_q > 0 ? q_ratio_q
                                                                            : std::max(1, size / 5),
                                                        s));
      else
        throw CLI::ValidationError("--class must be knapsack, assignment, or facility_location");
    }

    auto res = mobb::run_bench(instances, versions, bud, jobs, exact);

    std::ostringstream name;
    name << cls << "_";
    if (cls == "knapsack") name << "m" << m << "_";
    name << "n" << instances.front().n << ".csv";
    std::ofstream csv(fs::path(out_dir) / name.str());
    mobb::write_bench_csv(csv, res);
    std::cout << "wrote " << (fs::path(out_dir) / name.str()).string() << "\n";

    series_point sp;
    sp.size = instances.front().n;
    for (auto const& row : res.rows) {
      sp.nodes.push_back(row.nodes);
      sp.time_s.push_back(row.time_s);
    }
    series.push_back(std::move(sp));
  }

  if (plot && series.size() > 1) {
    auto write_svg = [&](std::string const& metric, auto getter) {
      double maxv = 1e-9;
      for (auto const& sp : series)
        for (double v : getter(sp)) maxv = std::max(maxv, v);
      int const W = 640, H = 420, ML = 60, MB = 40;
      std::ostringstream svg;
      svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
          << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
      int const x0 = series.front().size, x1 = series.back().size;
      auto X = [&](int s) {
        return ML + (W - ML - 20) * (s - x0) / std::max(1, x1 - x0);
      };
      auto Y = [&](double v) { return H - MB - (H - MB - 20) * v / maxv; };
      char const* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
      for (std::size_t vi = 0; vi < versions.size(); ++vi) {
        svg << "<polyline fill='none' stroke='" << colors[vi % 8] << "' points='";
        for (auto const& sp : series) svg << X(sp.size) << "," << Y(getter(sp)[vi]) << " ";
        svg << "'/>\n<text x='" << W - 120 << "' y='" << 30 + 16 * vi << "' fill='"
            << colors[vi % 8] << "'>" << versions[vi] << "</text>\n";
      }
      svg << "<text x='" << W / 2 << "' y='" << H - 8 << "'>variables</text>\n";
      svg << "<text x='12' y='16'>" << metric << "</text>\n</svg>\n";
      write_file(fs::path(out_dir) / (cls + "_" + metric + ".svg"), svg.str());
    };
    write_svg("nodes", [](series_point const& sp) { return sp.nodes; });
    write_svg("time", [](series_point const& sp) { return sp.time_s; });
    std::cout << "wrote plots to " << out_dir << "\n";
  }
  return 0;
}

int cmd_verify(std::string const& path, std::vector<std::string> const& versions,
               bool exact) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (auto const& e : fs::directory_iterator(path))
      if (e.path().extension() == ".boilp") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }

  int failures = 0;
  for (auto const& f : files) {
    auto inst = load_instance(f.string());
    std::vector<mobb::ipoint2> oracle;
    try {
      oracle = mobb::brute_force_frontier(inst).frontier;
    } catch (mobb::oracle_guard_error const& e) {
      std::cout << f.filename().string() << ": skip (" << e.what() << ")\n";
      continue;
    }
    bool ok = true;
    std::string first_bad;
    for (auto const& v : versions) {
      auto strat = mobb::parse_version(v);
      if (!strat) throw CLI::ValidationError("unknown version '" + v + "'");
      std::vector<mobb::ipoint2> got;
      if (exact) {
        auto r = run_solve<mobb::rat>(inst, *strat);
        for (auto const& [img, sol] : r.frontier) got.push_back(img);
      } else {
        auto r = run_solve<double>(inst, *strat);
        for (auto const& [img, sol] : r.frontier) got.push_back(img);
      }
      if (got != oracle) {
        ok = false;
        first_bad = v;
        std::ostringstream diff;
        diff << "  oracle:";
        for (auto const& p : oracle) diff << " (" << p.z1 << "," << p.z2 << ")";
        diff << "\n  " << v << ":";
        for (auto const& p : got) diff << " (" << p.z1 << "," << p.z2 << ")";
        std::cout << f.filename().string() << ": fail (" << v << ")\n" << diff.str() << "\n";
        break;
      }
    }
    if (ok) std::cout << f.filename().string() << ": pass\n";
    else ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-objective 0/1 branch and bound solver"};
  app.require_subcommand(1);

  // generate
  generate_opts gen;
  auto* g = app.add_subcommand("generate", "write random instances to a directory");
  g->add_option("--class", gen.cls, "knapsack|assignment|facility_location")
      ->default_val("knapsack");
  g->add_option("--n", gen.n, "knapsack variable count");
  g->add_option("--m", gen.m, "knapsack constraint count (1..3)");
  g->add_option("--l", gen.l, "assignment side length / facility customers");
  g->add_option("--q", gen.q, "facility count");
  g->add_option("--count", gen.count, "instances to generate");
  g->add_option("--seed", gen.seed, "base seed; instance k uses seed+k");
  g->add_option("--out", gen.out_dir, "output directory")->required();

  // solve
  std::string solve_file, solve_version = "BB", solve_format = "text", solve_log;
  bool solve_verify = false, use_float = false, use_exact = false;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  auto* s = app.add_subcommand("solve", "solve one instance file");
  s->add_option("file", solve_file, "instance file (.boilp)")->required();
  s->add_option("--version", solve_version, "version label (see --help for grid)");
  s->add_option("--format", solve_format, "text|csv|jsonl")->default_val("text");
  s->add_flag("--verify", solve_verify, "compare against the exhaustive oracle");
  s->add_option("--log", solve_log, "write a JSON-lines event log to this file");
  s->add_option("--budget-nodes", budget_nodes, "node budget (0 = unlimited)");
  s->add_option("--budget-seconds", budget_seconds, "wall time budget (0 = unlimited)");
  s->add_flag("--float", use_float, "floating-point mode (benchmarking)");
  s->add_flag("--exact", use_exact, "exact rational mode (default)");

  // bench
  std::string bench_cls = "knapsack", bench_out = "bench";
  std::vector<int> bench_sizes;
  std::vector<std::string> bench_versions;
  int bench_m = 1, bench_q = 0, bench_count = 20, bench_jobs = 1;
  std::uint64_t bench_seed = 1;
  bool bench_plot = false, bench_float = false, bench_exact = false;
  std::uint64_t bench_budget_nodes = 0;
  double bench_budget_seconds = 0;
  auto* b = app.add_subcommand("bench", "benchmark versions over a size grid");
  b->add_option("--class", bench_cls, "knapsack|assignment|facility_location")
      ->default_val("knapsack");
  b->add_option("--n,--sizes", bench_sizes, "size grid (n, l, or l per class)")->required();
  b->add_option("--m", bench_m, "knapsack constraint count");
  b->add_option("--q", bench_q, "facility count (0 = 20% of customers)");
  b->add_option("--versions", bench_versions, "version labels")->required();
  b->add_option("--count", bench_count, "instances per size");
  b->add_option("--seed", bench_seed, "base seed");
  b->add_option("--out", bench_out, "output directory");
  b->add_option("--budget-nodes", bench_budget_nodes, "per-run node budget");
  b->add_option("--budget-seconds", bench_budget_seconds, "per-run time budget");
  b->add_option("--jobs", bench_jobs, "parallel runs (1 = serial, timing-faithful)");
  b->add_flag("--plot", bench_plot, "emit SVG plots (nodes and time vs size)");
  b->add_flag("--float", bench_float, "floating-point mode");
  b->add_flag("--exact", bench_exact, "exact rational mode (default)");

  // verify
  std::string verify_path;
  std::vector<std::string> verify_versions;
  bool verify_float = false, verify_exact = false;
  auto* v = app.add_subcommand("verify", "check versions against the oracle");
  v->add_option("path", verify_path, "instance file or directory")->required();
  v->add_option("--versions", verify_versions, "version labels (default: all 22)");
  v->add_flag("--float", verify_float, "floating-point mode");
  v->add_flag("--exact", verify_exact, "exact rational mode (default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_generate(gen);
    if (*s) {
      auto strat = mobb::parse_version(solve_version);
      if (!strat) {
        std::cerr << "unknown version '" << solve_version << "'\nknown versions: "
                  << mobb::version_grid_names() << "\n";
        return 2;
      }
      auto inst = load_instance(solve_file);
      auto bud = make_budget(budget_nodes, budget_seconds);
      if (use_float && use_exact) throw CLI::ValidationError("--float conflicts with --exact");
      return use_float ? solve_and_report<double>(inst, solve_version, *strat, bud,
                                                  solve_format, solve_verify, solve_log)
                       : solve_and_report<mobb::rat>(inst, solve_version, *strat, bud,
                                                     solve_format, solve_verify, solve_log);
    }
    if (*b) {
      auto bud = make_budget(bench_budget_nodes, bench_budget_seconds);
      return cmd_bench(bench_cls, bench_sizes, bench_m, bench_q, bench_versions, bench_count,
                       bench_seed, bench_out, bud, bench_jobs, !bench_float, bench_plot);
    }
    if (*v) {
      auto versions = verify_versions;
      if (versions.empty())
        for (auto const& vl : mobb::version_grid()) versions.push_back(vl.name);
      return cmd_verify(verify_path, versions, !verify_float);
    }
  } catch (mobb::parse_error const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (CLI::Error const& e) {
    return app.exit(e);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
