#pragma once

#include <string>

#include "xorcodes/gf2.hpp"
#include "xorcodes/latin.hpp"

namespace fixtures {

inline std::string testdata(const std::string& name)
{
  return std::string(XORCODES_TESTDATA) + "/" + name;
}

/// Reference [13,5] generator.
inline xorcodes::BinaryMatrix golden_13_5()
{
  return xorcodes::BinaryMatrix::from_strings({
      "1110010000101",
      "0101110010110",
      "1011010100010",
      "1100110001010",
      "0011111000100",
  });
}

inline xorcodes::LatinSquare example_square()
{
  return xorcodes::LatinSquare({
      {1, 4, 3, 5, 2},
      {3, 1, 5, 2, 4},
      {4, 2, 1, 3, 5},
      {5, 3, 2, 4, 1},
      {2, 5, 4, 1, 3},
  });
}

/// Incidence matrix of the square's upper 3x5 rectangle.
inline xorcodes::BinaryMatrix example_incidence()
{
  return xorcodes::BinaryMatrix::from_strings({
      "10110",
      "11010",
      "10101",
      "01101",
      "01011",
  });
}

/// expected decoding vector of the [13,5] code, three decimals
inline constexpr double golden_vd[] = {0.615, 0.895, 0.979, 0.998, 1.0, 1.0, 1.0, 1.0};

} // namespace fixtures
