#pragma once

#include <gmpxx.h>

#include <string>

namespace walklis {

// Exact finite decimal expansion of a rational whose denominator divides
// 10^j for some j (in particular any dyadic rational). Throws otherwise.
std::string decimal_string(const mpq_class& value);

// Exact dyadic rational holding the double's full mantissa.
mpq_class rational_from_double(double value);

}  // namespace walklis
