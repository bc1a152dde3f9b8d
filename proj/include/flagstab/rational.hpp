#ifndef FLAGSTAB_RATIONAL_HPP
#define FLAGSTAB_RATIONAL_HPP

#include <optional>
#include <string>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace flagstab {

// Exact base field: arbitrary-precision rationals, always canonical
// (positive denominator, gcd(num, den) = 1, zero is 0/1).  Expression
// templates are off so the type plays well with Eigen's dense kernels.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Shared textual grammar for all file formats: -?[0-9]+(/[1-9][0-9]*)?
// The denominator is omitted when it is 1.
std::string format_rational(const Rational& q);

// Parses the grammar above; rejects anything else (including "1/0" and
// "3/-4").  Non-reduced input such as "2/4" is accepted and canonicalized.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace flagstab

#endif
