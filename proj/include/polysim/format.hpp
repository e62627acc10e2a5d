#pragma once

#include <string>

namespace polysim {

/// Fixed-point decimal with exactly `decimals` digits, locale independent
/// (std::to_chars). Used everywhere a float reaches a file so goldens are
/// byte-stable across platforms and locales.
std::string fixed(double value, int decimals = 6);

/// Round half away from zero to `decimals` digits, matching fixed().
double round_to(double value, int decimals = 6);

}  // namespace polysim
