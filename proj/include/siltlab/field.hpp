#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace siltlab {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Z/p with p < 2^31; elements are canonical residues.
class PrimeField {
 public:
  using elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 101) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p)) throw BadField("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const { return p_; }
  bool finite() const { return true; }
  std::string describe() const { return "prime(" + std::to_string(p_) + ")"; }

  elem zero() const { return 0; }
  elem one() const { return 1; }
  elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<elem>(r < 0 ? r + p_ : r);
  }
  elem add(elem a, elem b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  elem sub(elem a, elem b) const { return a >= b ? a - b : a + p_ - b; }
  elem neg(elem a) const { return a == 0 ? 0 : p_ - a; }
  elem mul(elem a, elem b) const { return static_cast<elem>(std::uint64_t(a) * b % p_); }
  elem inv(elem a) const {
    if (a == 0) throw std::domain_error("division by zero");
    std::uint64_t r = 1, b = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<elem>(r);
  }
  bool is_zero(elem a) const { return a == 0; }
  bool eq(elem a, elem b) const { return a == b; }

  // Residues print in the symmetric range so that small negative
  // coefficients read naturally in reports.
  std::string str(elem a) const {
    if (a > p_ / 2) return "-" + std::to_string(p_ - a);
    return std::to_string(a);
  }
  elem parse(const std::string& s) const {
    auto slash = s.find('/');
    if (slash == std::string::npos) return from_int(parse_ll(s));
    return mul(from_int(parse_ll(s.substr(0, slash))), inv(from_int(parse_ll(s.substr(slash + 1)))));
  }
  template <class Rng>
  elem random(Rng& rng) const {
    return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng);
  }
  // Element count, used by search routines that enumerate the field.
  std::uint64_t size() const { return p_; }
  elem nth(std::uint64_t i) const { return static_cast<elem>(i % p_); }

 private:
  static long long parse_ll(const std::string& s) {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad coefficient '" + s + "'");
    return v;
  }
  std::uint32_t p_;
};

class RationalField {
 public:
  using elem = boost::multiprecision::cpp_rational;

  std::uint32_t characteristic() const { return 0; }
  bool finite() const { return false; }
  std::string describe() const { return "rational"; }

  elem zero() const { return 0; }
  elem one() const { return 1; }
  elem from_int(long long v) const { return elem(v); }
  elem add(const elem& a, const elem& b) const { return a + b; }
  elem sub(const elem& a, const elem& b) const { return a - b; }
  elem neg(const elem& a) const { return -a; }
  elem mul(const elem& a, const elem& b) const { return a * b; }
  elem inv(const elem& a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return elem(1) / a;
  }
  bool is_zero(const elem& a) const { return a == 0; }
  bool eq(const elem& a, const elem& b) const { return a == b; }
  std::string str(const elem& a) const { return a.str(); }
  elem parse(const std::string& s) const {
    auto slash = s.find('/');
    using boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return elem(cpp_int(s));
    cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return elem(cpp_int(s.substr(0, slash))) / elem(den);
  }
  template <class Rng>
  elem random(Rng& rng) const {
    return elem(std::uniform_int_distribution<int>(-9, 9)(rng));
  }
  std::uint64_t size() const { return 0; }
  // Enumeration order 0, 1, -1, 2, -2, ...
  elem nth(std::uint64_t i) const {
    long long k = static_cast<long long>((i + 1) / 2);
    return elem(i % 2 ? k : -k);
  }
};

}  // namespace siltlab
