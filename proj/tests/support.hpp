#pragma once

#include <string_view>
#include <vector>

#include "disprop/division.hpp"

namespace testing {

using disprop::Instance;
using disprop::Measure;
using disprop::Rational;

inline Rational R(std::string_view s) { return Rational::parse(s); }

inline std::vector<Rational> Rs(std::initializer_list<std::string_view> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.push_back(R(x));
  return out;
}

inline Measure M(std::initializer_list<std::string_view> bps, std::initializer_list<std::string_view> dens) {
  return Measure(Rs(bps), Rs(dens));
}

inline Instance I(std::vector<Measure> ms, std::initializer_list<std::string_view> demands) {
  return Instance{std::move(ms), Rs(demands)};
}

// Density 2 on [0,1/2].
inline Measure left_half() { return M({"0", "1/2", "1"}, {"2", "0"}); }
// Density 2 on [1/2,1].
inline Measure right_half() { return M({"0", "1/2", "1"}, {"0", "2"}); }

}  // namespace testing
