#pragma once

#include <map>
#include <string_view>

#include "too/bigint.hpp"
#include "too/chameleon/common.hpp"
#include "too/hash.hpp"

namespace too {

using chameleon::MessageRange;

inline constexpr std::string_view kDefaultOracleTag = "TOO-RO-v1";

/// Injective framing of (message, signature): be32(|message|) || message || signature.
inline Bytes frame(ByteView message, ByteView signature) {
  if (message.size() > UINT32_MAX) throw DomainError("message longer than 2^32-1 bytes");
  Bytes out;
  out.reserve(4 + message.size() + signature.size());
  append_u32_be(out, static_cast<std::uint32_t>(message.size()));
  append(out, message);
  append(out, signature);
  return out;
}

enum class OracleMode { production, programmable };

/// Who issued an oracle query; games use this to separate adversary queries
/// from the challenger's own evaluations.
enum class Party { adversary, challenger };

struct OracleLogEntry {
  enum class Kind { query, program };
  Kind kind;
  Bytes input;
  Party party;
  BigInt value;
};

/// The random oracle mapping byte strings into a chameleon message space.
///
/// Production mode hashes domain_tag || input with SHAKE256. Programmable
/// mode is a lazily sampled table driven by a seeded stream, with a query
/// log and point reprogramming. A programmable oracle has a single owner.
class RandomOracle {
 public:
  static RandomOracle production(MessageRange range, std::string_view tag = kDefaultOracleTag) {
    return RandomOracle(OracleMode::production, std::move(range), to_bytes(tag), Seed{});
  }

  static RandomOracle programmable(MessageRange range, const Seed& seed, std::string_view tag = kDefaultOracleTag) {
    return RandomOracle(OracleMode::programmable, std::move(range), to_bytes(tag), seed);
  }

  OracleMode mode() const { return mode_; }
  const MessageRange& range() const { return range_; }
  const Bytes& domain_tag() const { return tag_; }
  const Seed& seed() const { return seed_; }

  /// Width in bits of the production digest before reduction.
  std::size_t output_bits() const { return range_.bit_string ? range_.bits : range_.bits + 128; }

  BigInt eval(ByteView input, Party party = Party::adversary) {
    if (mode_ == OracleMode::production) return eval_production(input);
    Bytes key(input.begin(), input.end());
    auto it = table_.find(key);
    BigInt value = it != table_.end() ? it->second : draw_fresh();
    if (it == table_.end()) table_.emplace(key, value);
    log_.push_back({OracleLogEntry::Kind::query, std::move(key), party, value});
    return value;
  }

  /// Redefines the oracle at one point. Programmable mode only.
  void program(ByteView input, const BigInt& value) {
    require_programmable("program");
    if (value < 0 || value >= range_.size) throw DomainError("programmed value outside the oracle range");
    Bytes key(input.begin(), input.end());
    table_[key] = value;
    log_.push_back({OracleLogEntry::Kind::program, std::move(key), Party::challenger, value});
  }

  /// True iff `input` was queried (programming alone does not count).
  bool log_contains(ByteView input) const {
    require_programmable("log_contains");
    for (const auto& e : log_) {
      if (e.kind == OracleLogEntry::Kind::query && std::equal(e.input.begin(), e.input.end(), input.begin(), input.end())) {
        return true;
      }
    }
    return false;
  }

  bool queried_by(ByteView input, Party party) const {
    require_programmable("queried_by");
    for (const auto& e : log_) {
      if (e.kind == OracleLogEntry::Kind::query && e.party == party &&
          std::equal(e.input.begin(), e.input.end(), input.begin(), input.end())) {
        return true;
      }
    }
    return false;
  }

  /// Next value of the fresh-value stream, exactly what a lazy query on an
  /// unseen point would return. Hybrid challengers draw from here so that
  /// coupled runs stay aligned.
  BigInt draw_fresh() {
    require_programmable("draw_fresh");
    return uniform_below(stream_, range_.size);
  }

  const std::vector<OracleLogEntry>& log() const { return log_; }

  /// Fixed-width big-endian encoding of a range value.
  Bytes encode_value(const BigInt& v) const { return to_fixed_bytes(v, byte_length(range_.size - 1)); }

 private:
  RandomOracle(OracleMode mode, MessageRange range, Bytes tag, const Seed& seed)
      : mode_(mode), range_(std::move(range)), tag_(std::move(tag)), seed_(seed), stream_(seed) {
    if (range_.size < 1) throw DomainError("oracle range must be non-empty");
  }

  BigInt eval_production(ByteView input) const {
    const std::size_t bits = output_bits();
    auto digest = shake256({tag_, input}, (bits + 7) / 8);
    BigInt v = from_bytes(digest);
    v >>= static_cast<mp_bitcnt_t>(digest.size() * 8 - bits);  // keep the first `bits` bits
    return range_.bit_string ? v : mod(v, range_.size);
  }

  void require_programmable(const char* op) const {
    if (mode_ != OracleMode::programmable) {
      throw UnsupportedOperation(std::string(op) + " requires a programmable oracle");
    }
  }

  OracleMode mode_;
  MessageRange range_;
  Bytes tag_;
  Seed seed_;
  Rng stream_;
  std::map<Bytes, BigInt> table_;
  std::vector<OracleLogEntry> log_;
};

}  // namespace too
