#pragma once

#include <cstdint>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace latdist {

/// Arbitrary-precision integer used for lattice rows.
using Integer = boost::multiprecision::cpp_int;

/// Extended-precision float used when double GSO fails its checks.
using WideFloat = boost::multiprecision::cpp_bin_float_quad;

template <class Float, class Int>
Float to_float(const Int& v) {
  if constexpr (std::is_arithmetic_v<Int>)
    return static_cast<Float>(v);
  else
    return v.template convert_to<Float>();
}

template <class Int>
bool is_zero(const Int& v) {
  if constexpr (std::is_arithmetic_v<Int>)
    return v == 0;
  else
    return v.is_zero();
}

}  // namespace latdist
