#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "too/bytes.hpp"
#include "too/rng.hpp"

namespace too {

using BigInt = mpz_class;

inline std::size_t bit_length(const BigInt& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

inline std::size_t byte_length(const BigInt& v) { return (bit_length(v) + 7) / 8; }

/// Unsigned big-endian encoding padded to exactly `width` bytes.
inline Bytes to_fixed_bytes(const BigInt& v, std::size_t width) {
  if (v < 0) throw DomainError("negative integer cannot be encoded");
  if (byte_length(v) > width) throw DomainError("integer wider than field");
  Bytes out(width, 0);
  std::size_t count = 0;
  if (v != 0) {
    Bytes tmp(byte_length(v));
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(count),
              out.end() - static_cast<std::ptrdiff_t>(count));
  }
  return out;
}

/// Minimal unsigned big-endian encoding (empty for zero).
inline Bytes to_bytes(const BigInt& v) { return to_fixed_bytes(v, byte_length(v)); }

inline BigInt from_bytes(ByteView in) {
  BigInt v;
  if (!in.empty()) mpz_import(v.get_mpz_t(), in.size(), 1, 1, 1, 0, in.data());
  return v;
}

/// Non-negative residue of v mod m.
inline BigInt mod(const BigInt& v, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& m) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Inverse of v mod m; throws DomainError when it does not exist.
inline BigInt invert(const BigInt& v, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0) throw DomainError("no modular inverse");
  return r;
}

inline bool probably_prime(const BigInt& v, int reps = 40) { return mpz_probab_prime_p(v.get_mpz_t(), reps) != 0; }

/// Uniform integer in [0, bound) by rejection on bit_length(bound)-bit candidates.
inline BigInt uniform_below(Rng& rng, const BigInt& bound) {
  if (bound <= 0) throw DomainError("uniform bound must be positive");
  if (bound == 1) return 0;
  const std::size_t bits = bit_length(bound - 1);
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
  for (;;) {
    auto raw = rng.bytes(nbytes);
    raw[0] &= static_cast<std::uint8_t>(0xFF >> excess);
    BigInt v = from_bytes(raw);
    if (v < bound) return v;
  }
}

}  // namespace too
