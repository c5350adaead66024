#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hptkit {

/// Exact rational number, always kept in canonical (reduced, positive denominator) form.
using Scalar = mpq_class;

/// Parses "p", "-p" or "p/q". Throws ParseError on anything else, including a zero denominator.
Scalar parse_scalar(std::string_view text, const std::string& location = {});

/// Reduced fraction string; integers are written without a denominator.
std::string to_string(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

}  // namespace hptkit
