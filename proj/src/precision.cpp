#include "qsys/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qsys {

namespace {
unsigned g_bits = 0;
}

void set_working_precision(unsigned bits) {
  if (bits < 64 || bits > 4096)
    throw std::invalid_argument("working precision must be in [64, 4096] bits, got " + std::to_string(bits));
  // mpfr_float counts precision in decimal digits.
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
  Real::default_precision(digits10);
  g_bits = bits;
}

unsigned working_precision_bits() {
  if (g_bits == 0) set_working_precision(kDefaultPrecisionBits);
  return g_bits;
}

unsigned precision_from_env() {
  const char* raw = std::getenv("QSYS_PRECISION_BITS");
  if (raw == nullptr || *raw == '\0') return kDefaultPrecisionBits;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 64 || v > 4096)
    throw std::invalid_argument(std::string("QSYS_PRECISION_BITS must be an integer in [64, 4096], got '") + raw + "'");
  return static_cast<unsigned>(v);
}

Real pi_real() {
  working_precision_bits();
  return boost::math::constants::pi<Real>();
}

}  // namespace qsys
