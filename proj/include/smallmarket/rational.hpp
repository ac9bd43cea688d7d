#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdio>
#include <string>

#include "smallmarket/common.hpp"

namespace smallmarket {

// All probabilities and values in the solve/oracle paths are exact rationals.
// Floating point appears only inside Monte Carlo estimators.
using Rat = mpq_class;
using Value = Rat;  // nonnegative by construction at the call sites that require it

namespace rat {

inline Rat make(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Exact conversion; every double is a dyadic rational.
inline Rat fromDouble(double x) { return Rat(x); }

inline double toDouble(const Rat& r) { return r.get_d(); }

// Accepts "p/q", integers, and plain decimals ("0.35", "-1.25", ".5").
inline Rat parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  std::string s = text;
  auto bad = [&]() { throw ParseError("malformed rational literal: '" + text + "'"); };
  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) bad();
    try {
      Rat r{mpz_class(num), mpz_class(den)};
      if (r.get_den() == 0) bad();
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      bad();
    }
  }
  std::size_t dot = s.find('.');
  if (dot == std::string::npos) {
    try {
      Rat r{mpz_class(s)};
      return r;
    } catch (const std::invalid_argument&) {
      bad();
    }
  }
  std::string intpart = s.substr(0, dot), frac = s.substr(dot + 1);
  bool neg = false;
  if (!intpart.empty() && (intpart[0] == '+' || intpart[0] == '-')) {
    neg = intpart[0] == '-';
    intpart = intpart.substr(1);
  }
  if (intpart.empty() && frac.empty()) bad();
  for (char c : intpart)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad();
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad();
  mpz_class scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  mpz_class num = mpz_class(intpart.empty() ? "0" : intpart) * scale +
                  mpz_class(frac.empty() ? "0" : frac);
  Rat r(num, scale);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

// "p/q" (or just "p" for integers); exact, used for byte-stable output.
inline std::string toString(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Short decimal approximation shown next to exact fields.
inline std::string toDecimal(const Rat& r, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, r.get_d());
  return buf;
}

}  // namespace rat
}  // namespace smallmarket
