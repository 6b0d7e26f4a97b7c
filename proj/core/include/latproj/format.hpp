#pragma once

#include <string>

namespace latproj {

/// Digits used for every number the tools print or serialize.
inline constexpr int kOutputDigits = 12;

/// The double nearest to x printed with `digits` significant digits.
double round_significant(double x, int digits = kOutputDigits);

/// printf("%.12g"); "-0" is normalized to "0".
std::string format_number(double x, int digits = kOutputDigits);

}  // namespace latproj
