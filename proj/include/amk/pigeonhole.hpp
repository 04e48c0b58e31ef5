#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amk/cnf.hpp"
#include "amk/encoders.hpp"

namespace amk {

// P pigeons, H holes of capacity K. Every pigeon sits in exactly one hole
// (ALO clause plus an at-most-one encoding per row) and every hole takes at
// most K pigeons (an at-most-K encoding per column).
struct PigeonholeInstance {
  std::int32_t pigeons = 1;
  std::int32_t holes = 1;
  std::int32_t capacity = 1;
  Encoding amo = Encoding::pd;
  Encoding amk = Encoding::sc;

  // "P-H-K"
  std::string label() const;
  bool satisfiable() const {
    return static_cast<std::int64_t>(pigeons) <= std::int64_t{holes} * capacity;
  }

  // Throws std::invalid_argument on bad sizes or an encoding/bound mismatch.
  void validate() const;

  // DIMACS id (p-1)*H + h of "pigeon p sits in hole h", both 1-based.
  Var placement(std::int32_t pigeon, std::int32_t hole) const {
    return Var{(pigeon - 1) * holes + hole};
  }
};

CnfFormula generate_pigeonhole(const PigeonholeInstance& inst);

// Model indexed by variable id (entry 0 unused). True iff every pigeon sits in
// exactly one hole and no hole holds more than K pigeons.
bool verify_model(const PigeonholeInstance& inst, const std::vector<bool>& model);

}  // namespace amk
