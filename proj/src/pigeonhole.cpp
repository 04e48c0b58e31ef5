#include "amk/pigeonhole.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace amk {

std::string PigeonholeInstance::label() const {
  return std::to_string(pigeons) + "-" + std::to_string(holes) + "-" + std::to_string(capacity);
}

void PigeonholeInstance::validate() const {
  if (pigeons < 1 || holes < 1 || capacity < 1)
    throw std::invalid_argument("pigeonhole sizes must be at least 1");
  if (std::int64_t{pigeons} * holes > std::numeric_limits<std::int32_t>::max() / 2)
    throw std::invalid_argument("pigeonhole instance too large");
  if (!supports_bound(amo, 1)) throw UnsupportedBound(amo, 1);
  if (!supports_bound(amk, capacity)) throw UnsupportedBound(amk, capacity);
}

CnfFormula generate_pigeonhole(const PigeonholeInstance& inst) {
  inst.validate();
  const std::int32_t P = inst.pigeons;
  const std::int32_t H = inst.holes;
  EncoderContext ctx(P * H);
  ctx.add_comment("pigeonhole P=" + std::to_string(P) + " H=" + std::to_string(H) +
                  " K=" + std::to_string(inst.capacity) + " amo=" +
                  std::string(encoding_name(inst.amo)) + " amk=" +
                  std::string(encoding_name(inst.amk)) + " bvars=1.." + std::to_string(P * H));

  std::vector<Lit> row(static_cast<std::size_t>(H));
  for (std::int32_t p = 1; p <= P; ++p) {
    for (std::int32_t h = 1; h <= H; ++h)
      row[static_cast<std::size_t>(h - 1)] = Lit::pos(inst.placement(p, h));
    encode_at_least_one(row, ctx);
    encode(inst.amo, AtMostK(row, 1), ctx);
  }

  std::vector<Lit> column(static_cast<std::size_t>(P));
  for (std::int32_t h = 1; h <= H; ++h) {
    for (std::int32_t p = 1; p <= P; ++p)
      column[static_cast<std::size_t>(p - 1)] = Lit::pos(inst.placement(p, h));
    encode(inst.amk, AtMostK(column, inst.capacity), ctx);
  }
  return std::move(ctx).finalize();
}

bool verify_model(const PigeonholeInstance& inst, const std::vector<bool>& model) {
  const std::int32_t P = inst.pigeons;
  const std::int32_t H = inst.holes;
  if (model.size() < static_cast<std::size_t>(P * H) + 1) return false;
  auto at = [&](std::int32_t p, std::int32_t h) {
    return model[static_cast<std::size_t>(inst.placement(p, h).id)];
  };
  for (std::int32_t p = 1; p <= P; ++p) {
    std::int32_t placed = 0;
    for (std::int32_t h = 1; h <= H; ++h) placed += at(p, h) ? 1 : 0;
    if (placed != 1) return false;
  }
  for (std::int32_t h = 1; h <= H; ++h) {
    std::int32_t load = 0;
    for (std::int32_t p = 1; p <= P; ++p) load += at(p, h) ? 1 : 0;
    if (load > inst.capacity) return false;
  }
  return true;
}

}  // namespace amk
