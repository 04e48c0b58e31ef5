#include "amk/dimacs.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace amk {

void write_dimacs(const CnfFormula& f, std::ostream& out) {
  for (const std::string& c : f.comments) out << "c " << c << '\n';
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  std::string line;
  for (const Clause& c : f.clauses) {
    line.clear();
    for (Lit l : c) {
      line += std::to_string(l.dimacs());
      line += ' ';
    }
    line += "0\n";
    out << line;
  }
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing DIMACS output");
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream s;
  write_dimacs(f, s);
  return s.str();
}

void write_dimacs_file(const CnfFormula& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  write_dimacs(f, out);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<long long> parse_int(std::string_view tok) {
  long long v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace

CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  bool have_header = false;
  long long declared_clauses = 0;
  std::vector<Lit> pending;
  std::size_t pending_line = 0;
  std::size_t lineno = 0;
  std::string raw;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == 'c' && (line.size() == 1 || line[1] == ' ' || line[1] == '\t')) {
      f.comments.emplace_back(line.size() > 2 ? trim(line.substr(2)) : std::string_view{});
      continue;
    }
    if (line.front() == '%') break;  // SATLIB end marker
    if (line.front() == 'p') {
      if (have_header) throw DimacsError(lineno, "duplicate problem line");
      auto tok = split_ws(line);
      if (tok.size() != 4 || tok[0] != "p" || tok[1] != "cnf")
        throw DimacsError(lineno, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      auto vars = parse_int(tok[2]);
      auto clauses = parse_int(tok[3]);
      if (!vars || !clauses || *vars < 0 || *clauses < 0 || *vars > INT32_MAX)
        throw DimacsError(lineno, "malformed counts in problem line");
      f.num_vars = static_cast<std::int32_t>(*vars);
      declared_clauses = *clauses;
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(lineno, "clause data before problem line");

    for (std::string_view tok : split_ws(line)) {
      auto v = parse_int(tok);
      if (!v) throw DimacsError(lineno, "invalid literal '" + std::string(tok) + "'");
      if (*v == 0) {
        if (pending.empty()) throw DimacsError(lineno, "empty clause");
        try {
          f.clauses.emplace_back(std::move(pending));
        } catch (const std::invalid_argument& e) {
          throw DimacsError(pending_line, e.what());
        }
        pending.clear();
        continue;
      }
      if (*v > f.num_vars || -*v > f.num_vars)
        throw DimacsError(lineno, "literal " + std::string(tok) + " exceeds declared " +
                                      std::to_string(f.num_vars) + " variables");
      if (pending.empty()) pending_line = lineno;
      pending.push_back(Lit::from_dimacs(static_cast<std::int32_t>(*v)));
    }
  }

  if (!have_header) throw DimacsError(lineno, "missing problem line");
  if (!pending.empty()) throw DimacsError(pending_line, "clause missing 0 terminator");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses)
    throw DimacsError(lineno, "header declares " + std::to_string(declared_clauses) +
                                  " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream s{std::string(text)};
  return read_dimacs(s);
}

}  // namespace amk
