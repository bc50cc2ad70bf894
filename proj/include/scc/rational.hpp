#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "scc/combinat.hpp"

namespace scc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt bigint_from_u128(Uint128 v) {
    const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(v);
    return (BigInt(hi) << 64) | BigInt(lo);
}

// "num/den", or just "num" when the denominator is 1.
std::string rational_to_string(const Rational& q);

inline double rational_to_double(const Rational& q) {
    return q.convert_to<double>();
}

} // namespace scc
