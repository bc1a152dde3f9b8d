#include "flagstab/rational.hpp"

#include <cctype>
#include <sstream>

namespace flagstab {

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::optional<Rational> parse_rational(const std::string& text) {
  std::size_t pos = 0;
  const std::size_t n = text.size();
  if (pos < n && text[pos] == '-') ++pos;
  std::size_t num_begin = pos;
  while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_begin) return std::nullopt;
  std::string num = text.substr(0, pos);
  std::string den = "1";
  if (pos < n) {
    if (text[pos] != '/') return std::nullopt;
    ++pos;
    std::size_t den_begin = pos;
    if (pos >= n || text[pos] < '1' || text[pos] > '9') return std::nullopt;
    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != n) return std::nullopt;
    den = text.substr(den_begin);
  } else if (pos != n) {
    return std::nullopt;
  }
  return Rational(Integer(num), Integer(den));
}

}  // namespace flagstab
