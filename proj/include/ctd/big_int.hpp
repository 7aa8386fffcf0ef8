#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ctd {

/// Arbitrary precision count (Cartesian products, satisfying assignments).
using BigInt = boost::multiprecision::cpp_int;

}  // namespace ctd
