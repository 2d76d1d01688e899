#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace qsys {

/// Working real type for quantum dimensions; precision is set at runtime.
using Real = boost::multiprecision::mpfr_float;

constexpr unsigned kDefaultPrecisionBits = 128;

/// Sets the default precision (in bits) for newly created Real values.
void set_working_precision(unsigned bits);
unsigned working_precision_bits();

/// Reads QSYS_PRECISION_BITS, falling back to kDefaultPrecisionBits.
/// Throws std::invalid_argument for a malformed or out-of-range value.
unsigned precision_from_env();

Real pi_real();

}  // namespace qsys
