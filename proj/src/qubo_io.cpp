#include <sstream>
#include <stdexcept>

#include "siasp/qubo.hpp"

namespace siasp {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& msg) {
  throw ParseError("qubo: " + msg, line, 1);
}

}  // namespace

std::string export_qubo(const QuboModel& model) {
  std::ostringstream os;
  os << "c siasp-qubo v1\n";
  os << "c offset " << model.offset << "\n";
  os << "p qubo " << model.n << " " << model.diag.size() << " " << model.offdiag.size() << " "
     << model.penalty << "\n";
  for (const auto& [i, c] : model.diag) os << i << " " << i << " " << c << "\n";
  for (const auto& [ij, c] : model.offdiag) os << ij.first << " " << ij.second << " " << c << "\n";
  return os.str();
}

QuboModel parse_qubo(std::string_view text) {
  QuboModel model;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_problem = false, have_offset = false;
  std::size_t want_diag = 0, want_off = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == 'c') {
      std::string c, key;
      ls >> c >> key;
      if (key == "offset") {
        if (!(ls >> model.offset)) bad_line(lineno, "malformed offset comment");
        have_offset = true;
      }
      continue;
    }
    if (line[0] == 'p') {
      std::string p, kind;
      if (!(ls >> p >> kind >> model.n >> want_diag >> want_off >> model.penalty) || kind != "qubo")
        bad_line(lineno, "malformed problem line");
      have_problem = true;
      continue;
    }
    if (!have_problem) bad_line(lineno, "coefficient before problem line");
    long long i = 0, j = 0;
    Coeff c = 0;
    std::string rest;
    if (!(ls >> i >> j >> c) || (ls >> rest)) bad_line(lineno, "expected '<i> <j> <coeff>'");
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= model.n ||
        static_cast<std::size_t>(j) >= model.n)
      bad_line(lineno, "variable index out of range");
    if (c == 0) bad_line(lineno, "zero coefficient");
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    if (ui == uj) {
      if (!model.diag.emplace(ui, c).second) bad_line(lineno, "repeated diagonal entry");
    } else {
      if (ui > uj) bad_line(lineno, "off-diagonal entry must have i < j");
      if (!model.offdiag.emplace(std::make_pair(ui, uj), c).second)
        bad_line(lineno, "repeated off-diagonal entry");
    }
  }
  if (!have_problem) throw ParseError("qubo: missing problem line", lineno, 1);
  if (!have_offset) throw ParseError("qubo: missing offset comment", lineno, 1);
  if (model.diag.size() != want_diag || model.offdiag.size() != want_off)
    throw ParseError("qubo: entry counts do not match problem line", lineno, 1);
  return model;
}

std::string export_graph(const QuboModel& model) {
  std::ostringstream os;
  os << "graph qubo {\n";
  for (std::size_t i = 0; i < model.n; ++i) {
    os << "  " << i << " [label=\"";
    if (model.var_map && i < model.var_map->size())
      os << describe(model.var_map->vars[i]);
    else
      os << "x" << i;
    os << "\"];\n";
  }
  for (const auto& [ij, c] : model.offdiag) os << "  " << ij.first << " -- " << ij.second << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace siasp
