#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qsat12 {

// Exact arithmetic for all enumerative quantities; doubles appear only at
// the reporting boundary.
using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }
inline double to_double(const BigCount& r) { return r.convert_to<double>(); }

}  // namespace qsat12
