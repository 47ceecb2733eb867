#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "demazure/errors.hpp"

namespace demazure {

// Exact arbitrary-precision rationals.  Always stored fully reduced with a
// positive denominator (boost keeps that invariant).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string rational_str(const Rational& r)
{
    return r.str();
}

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
inline Rational parse_rational(std::string_view sv)
{
    size_t b = sv.find_first_not_of(" \t");
    size_t e = sv.find_last_not_of(" \t");
    if (b == std::string_view::npos)
        throw ParseError("empty rational literal");
    std::string s(sv.substr(b, e - b + 1));
    try {
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

} // namespace demazure
