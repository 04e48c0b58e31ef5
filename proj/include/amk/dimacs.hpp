#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amk/cnf.hpp"

namespace amk {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Comment lines ("c <text>") first, then "p cnf <vars> <clauses>", then one
// 0-terminated clause per line.
void write_dimacs(const CnfFormula& f, std::ostream& out);
std::string to_dimacs(const CnfFormula& f);
void write_dimacs_file(const CnfFormula& f, const std::string& path);

// Validates the header against the body. Comments anywhere are collected.
CnfFormula read_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);

}  // namespace amk
