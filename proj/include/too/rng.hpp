#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

#include "too/bytes.hpp"
#include "too/hash.hpp"

namespace too {

using Seed = std::array<std::uint8_t, 32>;

/// Deterministic, seedable random stream.
///
/// Block i of the stream is SHA-256("TOO-RNG" || seed || be64(i)); the
/// counter names the next unused block. Every request consumes whole blocks,
/// so the pair (seed, counter) fully determines all future output.
class Rng {
 public:
  Rng() : seed_{} {}
  explicit Rng(const Seed& seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

  static Rng from_u64(std::uint64_t value) {
    Seed seed{};
    for (int i = 0; i < 8; ++i) seed[24 + i] = static_cast<std::uint8_t>(value >> (56 - 8 * i));
    return Rng(seed);
  }

  /// Seed drawn from the operating system; only the CLI uses this.
  static Seed os_seed() {
    std::random_device rd;
    Seed seed{};
    for (std::size_t i = 0; i < seed.size(); i += 4) {
      auto w = rd();
      for (std::size_t j = 0; j < 4; ++j) seed[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
    }
    return seed;
  }

  const Seed& seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  Bytes bytes(std::size_t n) {
    Bytes out;
    out.reserve(n + 32);
    while (out.size() < n) {
      auto block = next_block();
      out.insert(out.end(), block.begin(), block.end());
    }
    out.resize(n);
    return out;
  }

  Seed seed_bytes() {
    Seed s{};
    auto block = next_block();
    std::copy(block.begin(), block.end(), s.begin());
    return s;
  }

  std::uint64_t next_u64() {
    auto b = bytes(8);
    return read_u64_be(b);
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform bound must be positive");
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
      auto v = next_u64();
      if (v < limit) return v % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Independent child stream; a pure function of (seed, label), the counter is ignored.
  Rng derive(std::string_view label) const {
    auto tag = to_bytes("TOO-RNG-derive");
    auto lab = to_bytes(label);
    return Rng(sha256({tag, seed_, lab}));
  }

  Rng derive(std::uint64_t index) const {
    Bytes idx;
    append_u64_be(idx, index);
    auto tag = to_bytes("TOO-RNG-index");
    return Rng(sha256({tag, seed_, idx}));
  }

 private:
  Digest next_block() {
    static const Bytes kTag = to_bytes("TOO-RNG");
    Bytes ctr;
    append_u64_be(ctr, counter_++);
    return sha256({kTag, seed_, ctr});
  }

  Seed seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace too
