#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cqd {

// All densities and certificate arithmetic are exact; GMP supplies the
// arbitrary-precision integer/rational kernels.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline BigInt big_pow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; i++) r *= base;
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; i++) r *= i;
  return r;
}

inline BigInt binomial(const BigInt& n, unsigned k) {
  if (n < 0) return 0;
  BigInt r = 1;
  for (unsigned i = 0; i < k; i++) {
    r *= n - i;
    r /= i + 1;  // always divides: r is binomial(n, i+1) * (i+1)! / (i+1)!
  }
  return r;
}

// Parses "p", "-p", "p/q".  Unlike mpq's own string constructor this always
// canonicalizes (mpq_set_str keeps 2/6 as-is, which breaks printing).
Rational parse_rational(const std::string& s);

// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

}  // namespace cqd
