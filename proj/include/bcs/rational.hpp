#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "bcs/errors.hpp"

namespace bcs {

// Every scalar in the pipeline is an exact rational. cpp_rational keeps
// the invariants we need: lowest terms, denominator > 0, canonical 0/1.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational& r);

/// Parses "p", "-p", "p/q" or "-p/q" (q > 0 after normalization).
/// Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// 2^k for any integer k (k may be negative).
Rational pow2(long k);

/// Largest 2^e (e an integer, possibly negative) strictly below `bound`.
/// Throws DomainError unless bound > 0.
Rational largest_power_of_half_below(const Rational& bound);

}  // namespace bcs
