#include "modvar/exactla/field.hpp"

#include <cctype>

namespace modvar {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), small_(p < (1ULL << 32)) {
  if (p >= (1ULL << 62)) throw InputError("field modulus must be below 2^62: " + std::to_string(p));
  if (!is_prime(p)) throw InputError("field modulus is not prime: " + std::to_string(p));
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  return powmod(a, p_ - 2, p_);
}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  // -(v+1) avoids overflow at INT64_MIN
  std::uint64_t m = (static_cast<std::uint64_t>(-(v + 1)) + 1) % p_;
  return neg(m);
}

void PrimeField::sub_scaled(std::span<value_type> dst, std::span<const value_type> src,
                            value_type factor) const {
  if (factor == 0) return;
  const std::size_t n = dst.size();
  if (small_) {
    const std::uint64_t p = p_;
    for (std::size_t k = 0; k < n; ++k) {
      if (src[k] == 0) continue;
      std::uint64_t t = (factor * src[k]) % p;
      std::uint64_t d = dst[k];
      dst[k] = d >= t ? d - t : d + p - t;
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[k] == 0) continue;
      dst[k] = sub(dst[k], mul(factor, src[k]));
    }
  }
}

void PrimeField::scale(std::span<value_type> row, value_type factor) const {
  for (auto& x : row) x = mul(x, factor);
}

PrimeField::value_type PrimeField::parse(std::string_view text) const {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw InputError("empty integer literal");
  value_type v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InputError("not an integer literal for " + name() + ": '" + std::string(text) + "'");
    v = add(mul(v, 10 % p_), static_cast<value_type>(c - '0') % p_);
  }
  return negative ? neg(v) : v;
}

RationalField::value_type RationalField::inv(const value_type& a) const {
  if (a == 0) throw std::domain_error("inverse of zero in Q");
  return value_type(1) / a;
}

void RationalField::sub_scaled(std::span<value_type> dst, std::span<const value_type> src,
                               const value_type& factor) const {
  if (factor == 0) return;
  for (std::size_t k = 0; k < dst.size(); ++k) {
    if (src[k] == 0) continue;
    dst[k] -= factor * src[k];
  }
}

void RationalField::scale(std::span<value_type> row, const value_type& factor) const {
  for (auto& x : row) x *= factor;
}

RationalField::value_type RationalField::uniform(Rng& rng) const {
  const auto span = static_cast<std::uint64_t>(2 * kSampleBound + 1);
  return value_type(static_cast<std::int64_t>(rng.below(span)) - kSampleBound);
}

std::string RationalField::to_string(const value_type& a) const {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(a) == 1) return numerator(a).str();
  return numerator(a).str() + "/" + denominator(a).str();
}

RationalField::value_type RationalField::parse(std::string_view text) const {
  using boost::multiprecision::cpp_int;
  std::string_view s = trim(text);
  auto parse_int = [&](std::string_view part) {
    std::string_view t = trim(part);
    bool negative = false;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
      negative = t.front() == '-';
      t.remove_prefix(1);
    }
    if (t.empty()) throw InputError("empty integer literal in '" + std::string(text) + "'");
    cpp_int v = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InputError("not a rational literal: '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
    }
    return negative ? cpp_int(-v) : v;
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return value_type(parse_int(s));
  cpp_int num = parse_int(s.substr(0, slash));
  cpp_int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return value_type(num, den);
}

}  // namespace modvar
