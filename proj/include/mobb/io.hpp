#ifndef MOBB_IO_HPP_
#define MOBB_IO_HPP_

#include "mobb/instance.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobb {

struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, std::string const& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

namespace io_detail {

inline std::vector<std::string> tokens(std::string const& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

inline std::int64_t to_i64(std::string const& t, int line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw parse_error(line, "expected integer, got '" + t + "'");
  return v;
}

inline std::uint64_t to_u64(std::string const& t, int line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw parse_error(line, "expected unsigned integer, got '" + t + "'");
  return v;
}

}  // namespace io_detail

// Line-oriented instance format:
//   BOILP 1
//   sense min|max
//   n <int>
//   class <tag> [params...]
//   obj1 <n ints>       (original-sense coefficients)
//   obj2 <n ints>
//   le|eq <n ints> <rhs>   (one line per constraint)
//   seed <uint>            (optional)
inline std::string serialize(instance const& inst) {
  std::ostringstream out;
  out << "BOILP 1\n";
  out << "sense " << (inst.sense == objective_sense::max ? "max" : "min") << "\n";
  out << "n " << inst.n << "\n";
  out << "class ";
  switch (inst.tag.kind) {
    case problem_class::knapsack: out << "knapsack " << inst.tag.m; break;
    case problem_class::assignment: out << "assignment " << inst.tag.l; break;
    case problem_class::facility_location:
      out << "facility_location " << inst.tag.l << " " << inst.tag.q;
      break;
    case problem_class::generic: out << "generic"; break;
  }
  out << "\n";
  std::int64_t const flip = inst.sense == objective_sense::max ? -1 : 1;
  for (int k = 0; k < 2; ++k) {
    out << "obj" << (k + 1);
    for (auto c : inst.obj[k]) out << " " << flip * c;
    out << "\n";
  }
  for (auto const& row : inst.rows) {
    out << (row.rel == relation::le ? "le" : "eq");
    for (auto c : row.coeffs) out << " " << c;
    out << " " << row.rhs << "\n";
  }
  if (inst.seed) out << "seed " << *inst.seed << "\n";
  return out.str();
}

inline instance parse(std::string const& text) {
  using namespace io_detail;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::vector<std::string>& toks) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      toks = tokens(line);
      if (!toks.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> t;
  if (!next_line(t)) throw parse_error(1, "empty document");
  if (t.size() != 2 || t[0] != "BOILP" || t[1] != "1")
    throw parse_error(lineno, "expected header 'BOILP 1'");

  instance inst;
  if (!next_line(t) || t.size() != 2 || t[0] != "sense")
    throw parse_error(lineno, "expected 'sense min|max'");
  if (t[1] == "min")
    inst.sense = objective_sense::min;
  else if (t[1] == "max")
    inst.sense = objective_sense::max;
  else
    throw parse_error(lineno, "sense must be 'min' or 'max'");

  if (!next_line(t) || t.size() != 2 || t[0] != "n")
    throw parse_error(lineno, "expected 'n <int>'");
  std::int64_t n64 = to_i64(t[1], lineno);
  if (n64 < 1 || n64 > 1'000'000) throw parse_error(lineno, "n out of range");
  inst.n = static_cast<int>(n64);

  if (!next_line(t) || t.size() < 2 || t[0] != "class")
    throw parse_error(lineno, "expected 'class <tag> [params...]'");
  if (t[1] == "knapsack") {
    if (t.size() != 3) throw parse_error(lineno, "knapsack tag needs one parameter m");
    inst.tag = class_tag{problem_class::knapsack, static_cast<int>(to_i64(t[2], lineno)), 0, 0};
  } else if (t[1] == "assignment") {
    if (t.size() != 3) throw parse_error(lineno, "assignment tag needs one parameter l");
    inst.tag = class_tag{problem_class::assignment, 0, static_cast<int>(to_i64(t[2], lineno)), 0};
  } else if (t[1] == "facility_location") {
    if (t.size() != 4) throw parse_error(lineno, "facility_location tag needs parameters l q");
    inst.tag = class_tag{problem_class::facility_location, 0,
                         static_cast<int>(to_i64(t[2], lineno)),
                         static_cast<int>(to_i64(t[3], lineno))};
  } else if (t[1] == "generic") {
    if (t.size() != 2) throw parse_error(lineno, "generic tag takes no parameters");
    inst.tag = class_tag{};
  } else {
    throw parse_error(lineno, "unknown class tag '" + t[1] + "'");
  }

  std::int64_t const flip = inst.sense == objective_sense::max ? -1 : 1;
  for (int k = 0; k < 2; ++k) {
    std::string const key = "obj" + std::to_string(k + 1);
    if (!next_line(t) || t.empty() || t[0] != key)
      throw parse_error(lineno, "expected '" + key + " <" + std::to_string(inst.n) + " ints>'");
    if (static_cast<int>(t.size()) != inst.n + 1)
      throw parse_error(lineno, key + " needs exactly n coefficients");
    inst.obj[k].resize(inst.n);
    for (int j = 0; j < inst.n; ++j) inst.obj[k][j] = flip * to_i64(t[j + 1], lineno);
  }

  while (next_line(t)) {
    if (t[0] == "seed") {
      if (t.size() != 2) throw parse_error(lineno, "seed needs one value");
      inst.seed = to_u64(t[1], lineno);
      if (next_line(t)) throw parse_error(lineno, "unexpected content after seed line");
      break;
    }
    if (t[0] != "le" && t[0] != "eq")
      throw parse_error(lineno, "expected constraint 'le|eq', 'seed', or end of file");
    if (static_cast<int>(t.size()) != inst.n + 2)
      throw parse_error(lineno, "constraint needs n coefficients and a right-hand side");
    constraint_row row;
    row.rel = t[0] == "le" ? relation::le : relation::eq;
    row.coeffs.resize(inst.n);
    for (int j = 0; j < inst.n; ++j) row.coeffs[j] = to_i64(t[j + 1], lineno);
    row.rhs = to_i64(t[inst.n + 1], lineno);
    inst.rows.push_back(std::move(row));
  }

  // A non-generic tag promises its class structure.
  auto structure_error = [&](std::string const& what) { return parse_error(lineno, what); };
  switch (inst.tag.kind) {
    case problem_class::knapsack:
      if (inst.tag.m < 1 || static_cast<int>(inst.rows.size()) != inst.tag.m)
        throw structure_error("knapsack tag m does not match the constraint count");
      for (auto const& r : inst.rows)
        if (r.rel != relation::le)
          throw structure_error("knapsack instances have only le constraints");
      break;
    case problem_class::assignment: {
      int const l = inst.tag.l;
      if (l < 2 || inst.n != l * l)
        throw structure_error("assignment tag l does not match n = l*l");
      if (static_cast<int>(inst.rows.size()) != 2 * l)
        throw structure_error("assignment instances have 2l equality rows");
      for (auto const& r : inst.rows)
        if (r.rel != relation::eq)
          throw structure_error("assignment instances have only eq constraints");
      break;
    }
    case problem_class::facility_location: {
      int const l = inst.tag.l;
      int const q = inst.tag.q;
      if (l < 1 || q < 1 || inst.n != (l + 1) * q)
        throw structure_error("facility_location tag (l,q) does not match n = (l+1)q");
      if (static_cast<int>(inst.rows.size()) != l + l * q)
        throw structure_error("facility_location instances have l eq and l*q le rows");
      break;
    }
    case problem_class::generic: break;
  }
  return inst;
}

}  // namespace mobb

#endif  // MOBB_IO_HPP_
