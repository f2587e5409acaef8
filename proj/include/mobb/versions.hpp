#ifndef MOBB_VERSIONS_HPP_
#define MOBB_VERSIONS_HPP_

#include "mobb/search.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mobb {

// The closed benchmark grid: BB, BS1, BS2, WS, M1.a.b and M2.a.b.g with
// a in 1..3, b in 1..2, g in 1..2 -- 22 labels total. b selects the gap
// strategy (1 local, 2 total); g controls AWT lower-bound integration.
struct version_label {
  std::string name;
  strategy strat;
};

inline std::vector<version_label> const& version_grid() {
  static std::vector<version_label> const grid = [] {
    std::vector<version_label> g;
    auto order_of = [](int beta) {
      return beta == 1 ? node_order::max_lhg : node_order::max_thg;
    };
    g.push_back({"BB", strategy{node_order::depth_first, scalarization_mode::none, 1,
                                awt_cut_mode::integrate}});
    g.push_back({"BS1", strategy{node_order::max_lhg, scalarization_mode::none, 1,
                                 awt_cut_mode::integrate}});
    g.push_back({"BS2", strategy{node_order::max_thg, scalarization_mode::none, 1,
                                 awt_cut_mode::integrate}});
    g.push_back({"WS", strategy{node_order::depth_first, scalarization_mode::ws_only, 1,
                                awt_cut_mode::integrate}});
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 2; ++b)
        g.push_back({"M1." + std::to_string(a) + "." + std::to_string(b),
                     strategy{order_of(b), scalarization_mode::ws_only, a,
                              awt_cut_mode::integrate}});
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int c = 1; c <= 2; ++c)
          g.push_back({"M2." + std::to_string(a) + "." + std::to_string(b) + "." +
                           std::to_string(c),
                       strategy{order_of(b), scalarization_mode::ws_plus_awt, a,
                                c == 1 ? awt_cut_mode::integrate : awt_cut_mode::skip}});
    return g;
  }();
  return grid;
}

inline std::optional<strategy> parse_version(std::string_view name) {
  for (auto const& v : version_grid())
    if (v.name == name) return v.strat;
  return std::nullopt;
}

inline std::string version_grid_names() {
  std::string out;
  for (auto const& v : version_grid()) {
    if (!out.empty()) out += ", ";
    out += v.name;
  }
  return out;
}

}  // namespace mobb

#endif  // MOBB_VERSIONS_HPP_
