#include "ionswap/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ionswap/errors.hpp"

namespace ionswap::units {

double unit_factor(std::string_view unit) {
  if (unit.empty()) return 1.0;
  // lengths
  if (unit == "m") return 1e6;
  if (unit == "mm") return 1e3;
  if (unit == "um" || unit == "µm") return 1.0;
  if (unit == "nm") return 1e-3;
  // times
  if (unit == "s") return 1e6;
  if (unit == "ms") return 1e3;
  if (unit == "us" || unit == "µs") return 1.0;
  if (unit == "ns") return 1e-3;
  // masses
  if (unit == "amu" || unit == "u") return 1.0;
  if (unit == "kg") return 1.0 / amu_kg;
  // quartic well coefficient
  if (unit == "N/m^3" || unit == "N/m3" || unit == "J/m^4") return 1.0 / quartic_unit_SI;
  // homogeneous stray field, expressed as the linear potential term e*E
  if (unit == "V/m") return elementary_charge_C / gamma_unit_SI;
  // ordinary (non-angular) frequency, internal 1/us
  if (unit == "Hz") return 1e-6;
  if (unit == "kHz") return 1e-3;
  if (unit == "MHz") return 1.0;
  // energies
  if (unit == "J") return 1.0 / energy_unit_J;
  throw ConfigError("unknown unit '" + std::string(unit) + "'");
}

double parse_quantity(std::string_view text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  size_t j = text.size();
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  std::string_view body = text.substr(i, j - i);
  if (body.empty()) throw ConfigError("empty quantity");

  size_t split = 0;
  while (split < body.size()) {
    char ch = body[split];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-' ||
        ch == '.' || ch == 'e' || ch == 'E') {
      // 'e'/'E' only continue the number when followed by a digit or sign
      if ((ch == 'e' || ch == 'E') &&
          !(split + 1 < body.size() &&
            (std::isdigit(static_cast<unsigned char>(body[split + 1])) ||
             body[split + 1] == '+' || body[split + 1] == '-'))) {
        break;
      }
      ++split;
    } else {
      break;
    }
  }
  std::string number(body.substr(0, split));
  if (number.empty()) throw ConfigError("quantity '" + std::string(body) + "' has no numeric part");
  char* end = nullptr;
  double value = std::strtod(number.c_str(), &end);
  if (end != number.c_str() + number.size()) {
    throw ConfigError("bad number in quantity '" + std::string(body) + "'");
  }

  size_t u = split;
  while (u < body.size() && std::isspace(static_cast<unsigned char>(body[u]))) ++u;
  std::string_view unit = body.substr(u);
  return value * unit_factor(unit);
}

std::string format_quantity(double internal_value, std::string_view unit) {
  double v = internal_value / unit_factor(unit);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string out = buf;
  if (!unit.empty()) {
    out += ' ';
    out += unit;
  }
  return out;
}

}  // namespace ionswap::units
