#include "polysim/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace polysim {

std::string fixed(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // normalize -0
  std::array<char, 64> buf;
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value,
                    std::chars_format::fixed, decimals);
  std::string out(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
  // A value like -1e-9 prints as "-0.000000"; drop the useless sign.
  if (out.size() > 1 && out[0] == '-' &&
      out.find_first_not_of("0.", 1) == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace polysim
