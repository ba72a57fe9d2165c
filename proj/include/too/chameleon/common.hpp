#pragma once

#include <concepts>
#include <utility>

#include "too/bigint.hpp"
#include "too/bytes.hpp"
#include "too/rng.hpp"

namespace too::chameleon {

/// TOO1 record tags for chameleon objects.
enum class Tag : std::uint8_t {
  dl_instance = 0x20,
  dl_trapdoor = 0x21,
  dl_range = 0x23,
  sis_instance = 0x30,
  sis_trapdoor = 0x31,
  sis_range = 0x33,
};

inline constexpr std::uint8_t tag(Tag t) { return static_cast<std::uint8_t>(t); }

/// Message space of a chameleon instance, as seen by the random oracle:
/// the integers [0, size). Bit-string spaces have size 2^bits.
struct MessageRange {
  BigInt size;
  bool bit_string = false;
  std::size_t bits = 0;

  static MessageRange modular(const BigInt& q) { return {q, false, bit_length(q - 1)}; }
  static MessageRange bit_strings(std::size_t k) {
    BigInt size = 1;
    size <<= static_cast<mp_bitcnt_t>(k);
    return {size, true, k};
  }
};

/// A range element together with the preimage that produced it.
template <class CH>
struct RangeSample {
  typename CH::Range element;
  typename CH::Message message;
  typename CH::Randomness randomness;
};

template <class CH>
struct Keys {
  typename CH::Instance instance;
  typename CH::Trapdoor trapdoor;
};

/// Static interface every chameleon hash family provides.
template <class CH>
concept ChameleonHash =
    requires {
      typename CH::Params;
      typename CH::Instance;
      typename CH::Trapdoor;
      typename CH::Message;
      typename CH::Randomness;
      typename CH::Range;
      { CH::kName } -> std::convertible_to<const char*>;
    } &&
    requires(const typename CH::Params& params, const typename CH::Instance& inst,
             const typename CH::Trapdoor& td, const typename CH::Message& msg,
             const typename CH::Randomness& r, const typename CH::Range& y, const RangeSample<CH>& target,
             Rng& rng, const BigInt& v, ByteView bytes) {
      { CH::generate(params, rng) } -> std::same_as<Keys<CH>>;
      { CH::check_trapdoor(inst, td) } -> std::same_as<bool>;
      { CH::hash(inst, msg, r) } -> std::same_as<typename CH::Range>;
      { CH::invert(inst, td, msg, target, rng) } -> std::same_as<typename CH::Randomness>;
      { CH::sample_randomness(inst, rng) } -> std::same_as<typename CH::Randomness>;
      { CH::sample_message(inst, rng) } -> std::same_as<typename CH::Message>;
      { CH::message_range(inst) } -> std::same_as<MessageRange>;
      { CH::message_from_integer(inst, v) } -> std::same_as<typename CH::Message>;
      { CH::message_to_integer(inst, msg) } -> std::same_as<BigInt>;
      { CH::serialize_instance(inst) } -> std::same_as<Bytes>;
      { CH::parse_instance(bytes) } -> std::same_as<typename CH::Instance>;
      { CH::serialize_trapdoor(inst, td) } -> std::same_as<Bytes>;
      { CH::parse_trapdoor(inst, bytes) } -> std::same_as<typename CH::Trapdoor>;
      { CH::encode_randomness(inst, r) } -> std::same_as<Bytes>;
      { CH::decode_randomness(inst, bytes) } -> std::same_as<typename CH::Randomness>;
      { CH::encode_range(inst, y) } -> std::same_as<Bytes>;
    };

/// Range sampling as hash of a random preimage, keeping the preimage as trace.
template <ChameleonHash CH>
RangeSample<CH> sample_range(const typename CH::Instance& inst, Rng& rng) {
  auto m = CH::sample_message(inst, rng);
  auto r = CH::sample_randomness(inst, rng);
  auto y = CH::hash(inst, m, r);
  return {std::move(y), std::move(m), std::move(r)};
}

enum class CollisionStatus { valid, trivial, not_collision };

template <ChameleonHash CH>
struct Preimage {
  typename CH::Message message;
  typename CH::Randomness randomness;

  friend bool operator==(const Preimage&, const Preimage&) = default;
};

template <ChameleonHash CH>
CollisionStatus check_collision(const typename CH::Instance& inst, const Preimage<CH>& a, const Preimage<CH>& b) {
  if (a == b) return CollisionStatus::trivial;
  try {
    return CH::hash(inst, a.message, a.randomness) == CH::hash(inst, b.message, b.randomness)
               ? CollisionStatus::valid
               : CollisionStatus::not_collision;
  } catch (const DomainError&) {
    return CollisionStatus::not_collision;
  }
}

inline const char* to_string(CollisionStatus s) {
  switch (s) {
    case CollisionStatus::valid: return "valid";
    case CollisionStatus::trivial: return "trivial";
    case CollisionStatus::not_collision: return "not-collision";
  }
  return "?";
}

}  // namespace too::chameleon
