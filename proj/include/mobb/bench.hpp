#ifndef MOBB_BENCH_HPP_
#define MOBB_BENCH_HPP_

#include "mobb/generators.hpp"
#include "mobb/search.hpp"
#include "mobb/versions.hpp"

#include <future>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mobb {

struct bench_row {
  std::string version;
  double nodes = 0.0;
  double time_s = 0.0;
  double ips = 0.0;
  int excluded = 0;  // runs over budget, excluded from the means
};

struct bench_result {
  std::vector<bench_row> rows;
  int instances = 0;
};

// Run every requested version on the same seed-pinned instances so node
// counts are paired across versions. jobs > 1 parallelizes over runs; the
// aggregation order is deterministic either way.
inline bench_result run_bench(std::vector<instance> const& instances,
                              std::vector<std::string> const& versions, budget const& bud,
                              int jobs, bool exact = true) {
  bench_result out;
  out.instances = static_cast<int>(instances.size());

  struct cell {
    double nodes = 0, time_s = 0, ips = 0;
    bool complete = true;
  };
  std::vector<std::vector<cell>> table(versions.size(),
                                       std::vector<cell>(instances.size()));

  auto run_one = [&](std::size_t vi, std::size_t ii) {
    auto strat = parse_version(versions[vi]);
    if (!strat) throw std::invalid_argument("unknown version label: " + versions[vi]);
    cell c;
    if (exact) {
      auto r = solve_exact(instances[ii], *strat, bud);
      c.nodes = static_cast<double>(r.stats.nodes_explored);
      c.time_s = r.stats.wall_seconds;
      c.ips = static_cast<double>(r.stats.ips_solved);
      c.complete = r.stats.complete;
    } else {
      auto r = solve<double>(instances[ii], *strat, bud);
      c.nodes = static_cast<double>(r.stats.nodes_explored);
      c.time_s = r.stats.wall_seconds;
      c.ips = static_cast<double>(r.stats.ips_solved);
      c.complete = r.stats.complete;
    }
    table[vi][ii] = c;
  };

  if (jobs <= 1) {
    for (std::size_t vi = 0; vi < versions.size(); ++vi)
      for (std::size_t ii = 0; ii < instances.size(); ++ii) run_one(vi, ii);
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t vi = 0; vi < versions.size(); ++vi)
      for (std::size_t ii = 0; ii < instances.size(); ++ii) work.emplace_back(vi, ii);
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
      for (;;) {
        std::size_t w;
        {
          std::lock_guard<std::mutex> lk(mu);
          if (next >= work.size()) return;
          w = next++;
        }
        run_one(work[w].first, work[w].second);
      }
    };
    std::vector<std::future<void>> pool;
    for (int t = 0; t < jobs; ++t) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }

  for (std::size_t vi = 0; vi < versions.size(); ++vi) {
    bench_row row;
    row.version = versions[vi];
    int counted = 0;
    for (auto const& c : table[vi]) {
      if (!c.complete) {
        ++row.excluded;
        continue;
      }
      row.nodes += c.nodes;
      row.time_s += c.time_s;
      row.ips += c.ips;
      ++counted;
    }
    if (counted > 0) {
      row.nodes /= counted;
      row.time_s /= counted;
      row.ips /= counted;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// CSV with the paper tables' exact column header. Budget-hit runs are noted
// in comment lines after the rows.
inline void write_bench_csv(std::ostream& os, bench_result const& res) {
  os << "version,nodes,time (s),solved IPs\n";
  for (auto const& r : res.rows) {
    std::ostringstream line;
    line << r.version << "," << std::fixed << std::setprecision(1) << r.nodes << ","
         << std::setprecision(3) << r.time_s << "," << std::setprecision(1) << r.ips;
    os << line.str() << "\n";
  }
  for (auto const& r : res.rows)
    if (r.excluded > 0)
      os << "# note: " << r.version << ": " << r.excluded << "/" << res.instances
         << " runs exceeded the budget and were excluded from the means\n";
}

}  // namespace mobb

#endif  // MOBB_BENCH_HPP_
