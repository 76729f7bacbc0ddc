#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "modvar/errors.hpp"
#include "modvar/rng.hpp"

namespace modvar {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

bool is_prime(std::uint64_t n);

/// The prime field F_p. Elements are canonical residues in [0, p).
///
/// Moduli below 2^32 take a 64-bit fast path; larger moduli (up to 2^62)
/// multiply through 128-bit intermediates.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t modulus() const { return p_; }
  std::string name() const { return "F_" + std::to_string(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    if (small_) return (a * b) % p_;
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type from_int(std::int64_t v) const;

  /// dst[k] -= factor * src[k] for all k.
  void sub_scaled(std::span<value_type> dst, std::span<const value_type> src,
                  value_type factor) const;
  void scale(std::span<value_type> row, value_type factor) const;

  value_type uniform(Rng& rng) const { return rng.below(p_); }

  std::string to_string(value_type a) const { return std::to_string(a); }
  /// Accepts a decimal integer (optionally signed); reduces mod p.
  value_type parse(std::string_view text) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
  bool small_;
};

/// The rationals, with arbitrary-precision entries. Opt-in: entry growth
/// makes it practical only for small fixtures.
class RationalField {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  // Sampling range for uniform(); Q has no uniform distribution.
  static constexpr std::int64_t kSampleBound = 1000000;

  std::string name() const { return "Q"; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const;
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
  value_type from_int(std::int64_t v) const { return value_type(v); }

  void sub_scaled(std::span<value_type> dst, std::span<const value_type> src,
                  const value_type& factor) const;
  void scale(std::span<value_type> row, const value_type& factor) const;

  /// Integers drawn uniformly from [-kSampleBound, kSampleBound].
  value_type uniform(Rng& rng) const;

  std::string to_string(const value_type& a) const;
  /// Accepts "n" or "n/d" with decimal integers.
  value_type parse(std::string_view text) const;

  bool operator==(const RationalField&) const { return true; }
};

}  // namespace modvar
