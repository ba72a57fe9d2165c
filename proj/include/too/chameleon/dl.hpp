#pragma once

// Discrete-log chameleon hash over the order-q subgroup of Z_p^*, p = 2q + 1:
//   h(m, r) = g^m * y^r mod p,   y = g^x,   m, r in Z_q.

#include <openssl/bn.h>

#include <memory>
#include <optional>
#include <string>

#include "too/chameleon/common.hpp"
#include "too/encoding.hpp"

namespace too::chameleon {

struct DlGroup {
  BigInt p;
  BigInt q;
  BigInt g;

  friend bool operator==(const DlGroup&, const DlGroup&) = default;
};

/// Throws DomainError unless p, q are prime, p = 2q + 1 and g generates the order-q subgroup.
inline void validate_group(const DlGroup& grp) {
  if (grp.p != 2 * grp.q + 1) throw DomainError("p must equal 2q + 1");
  if (!probably_prime(grp.q, 25) || !probably_prime(grp.p, 25)) throw DomainError("p and q must be prime");
  if (grp.g <= 1 || grp.g >= grp.p) throw DomainError("generator out of range");
  if (powm(grp.g, grp.q, grp.p) != 1) throw DomainError("g does not have order q");
}

/// 2048-bit MODP group from RFC 3526 with generator 4 (a quadratic residue,
/// hence of order q).
inline DlGroup rfc3526_2048() {
  static const DlGroup group = [] {
    std::unique_ptr<BIGNUM, decltype(&BN_free)> bn(BN_get_rfc3526_prime_2048(nullptr), &BN_free);
    if (!bn) throw Error("OpenSSL did not provide the RFC 3526 prime");
    std::unique_ptr<char, void (*)(char*)> hex(BN_bn2hex(bn.get()), [](char* s) { OPENSSL_free(s); });
    DlGroup g;
    g.p = BigInt(hex.get(), 16);
    g.q = (g.p - 1) / 2;
    g.g = 4;
    return g;
  }();
  return group;
}

#ifdef TOO_ENABLE_TOY_PARAMS
/// p = 23, q = 11, g = 4. Small enough for exhaustive tests; never shipped in the CLI.
inline DlGroup toy_group() { return {23, 11, 4}; }
#endif

/// Random safe-prime group of the given modulus size.
inline DlGroup generate_group(unsigned bits, Rng& rng, int max_candidates = 1 << 20) {
  if (bits < 8) throw DomainError("modulus must have at least 8 bits");
  for (int attempt = 0; attempt < max_candidates; ++attempt) {
    BigInt q = uniform_below(rng, BigInt(1) << (bits - 1));
    mpz_setbit(q.get_mpz_t(), bits - 2);
    mpz_setbit(q.get_mpz_t(), 0);
    if (!probably_prime(q, 25)) continue;
    BigInt p = 2 * q + 1;
    if (!probably_prime(p, 25)) continue;
    for (;;) {
      BigInt h = uniform_below(rng, p - 3) + 2;
      BigInt g = powm(h, 2, p);
      if (g != 1) return {p, q, g};
    }
  }
  throw SamplingError("safe prime generation failed after " + std::to_string(max_candidates) + " candidates");
}

class Dl {
 public:
  static constexpr const char* kName = "dl";

  struct Params {
    /// Explicit group; when absent a group of `generate_bits` bits is generated,
    /// or the RFC 3526 group is used when generate_bits is 0.
    std::optional<DlGroup> group;
    unsigned generate_bits = 0;

    static Params standard() { return {}; }
    static Params with_group(DlGroup g) { return {std::move(g), 0}; }
    static Params generated(unsigned bits) { return {std::nullopt, bits}; }
  };

  struct Instance {
    DlGroup group;
    BigInt y;

    friend bool operator==(const Instance&, const Instance&) = default;
  };

  struct Trapdoor {
    BigInt x;

    friend bool operator==(const Trapdoor&, const Trapdoor&) = default;
  };

  using Message = BigInt;
  using Randomness = BigInt;
  using Range = BigInt;

  static Keys<Dl> generate(const Params& params, Rng& rng) {
    DlGroup grp;
    if (params.group) {
      grp = *params.group;
    } else if (params.generate_bits > 0) {
      grp = generate_group(params.generate_bits, rng);
    } else {
      grp = rfc3526_2048();
    }
    validate_group(grp);
    BigInt x = uniform_below(rng, grp.q - 1) + 1;
    return from_trapdoor(grp, x);
  }

  static Keys<Dl> from_trapdoor(const DlGroup& grp, const BigInt& x) {
    if (mod(x, grp.q) == 0) throw TrapdoorError("trapdoor exponent is zero mod q");
    BigInt y = powm(grp.g, x, grp.p);
    return {Instance{grp, y}, Trapdoor{mod(x, grp.q)}};
  }

  static bool check_trapdoor(const Instance& inst, const Trapdoor& td) {
    return powm(inst.group.g, td.x, inst.group.p) == inst.y;
  }

  static Range hash(const Instance& inst, const Message& m, const Randomness& r) {
    const auto& grp = inst.group;
    if (m < 0 || m >= grp.q) throw DomainError("message outside Z_q");
    if (r < 0 || r >= grp.q) throw DomainError("randomness outside Z_q");
    return mod(powm(grp.g, m, grp.p) * powm(inst.y, r, grp.p), grp.p);
  }

  /// r = (m~ - m) * x^-1 + r~ mod q.
  static Randomness invert(const Instance& inst, const Trapdoor& td, const Message& m, const RangeSample<Dl>& target,
                           Rng& /*rng*/) {
    const auto& q = inst.group.q;
    if (m < 0 || m >= q) throw DomainError("message outside Z_q");
    if (mod(td.x, q) == 0) throw TrapdoorError("degenerate trapdoor x = 0");
    return mod((target.message - m) * invert_mod(td.x, q) + target.randomness, q);
  }

  static Randomness sample_randomness(const Instance& inst, Rng& rng) { return uniform_below(rng, inst.group.q); }
  static Message sample_message(const Instance& inst, Rng& rng) { return uniform_below(rng, inst.group.q); }

  static MessageRange message_range(const Instance& inst) { return MessageRange::modular(inst.group.q); }
  static Message message_from_integer(const Instance& inst, const BigInt& v) {
    if (v < 0 || v >= inst.group.q) throw DomainError("integer outside message space");
    return v;
  }
  static BigInt message_to_integer(const Instance&, const Message& m) { return m; }

  static bool in_subgroup(const Instance& inst, const Range& y) {
    return y > 0 && y < inst.group.p && powm(y, inst.group.q, inst.group.p) == 1;
  }

  static std::size_t randomness_width(const Instance& inst) { return byte_length(inst.group.q - 1); }
  static std::size_t range_width(const Instance& inst) { return byte_length(inst.group.p - 1); }

  static Bytes serialize_instance(const Instance& inst) {
    return encode_record(tag(Tag::dl_instance), {to_bytes(inst.group.p), to_bytes(inst.group.q),
                                                 to_bytes(inst.group.g), to_bytes(inst.y)});
  }

  static Instance parse_instance(ByteView in) {
    auto rec = decode_record(in, tag(Tag::dl_instance), 4);
    Instance inst{{from_bytes(rec.fields[0]), from_bytes(rec.fields[1]), from_bytes(rec.fields[2])},
                  from_bytes(rec.fields[3])};
    try {
      validate_group(inst.group);
    } catch (const DomainError& e) {
      throw FormatError(std::string("invalid group: ") + e.what());
    }
    if (!in_subgroup(inst, inst.y)) throw FormatError("public element outside the subgroup");
    return inst;
  }

  static Bytes serialize_trapdoor(const Instance& inst, const Trapdoor& td) {
    return encode_record(tag(Tag::dl_trapdoor), {to_fixed_bytes(td.x, randomness_width(inst))});
  }

  static Trapdoor parse_trapdoor(const Instance& inst, ByteView in) {
    auto rec = decode_record(in, tag(Tag::dl_trapdoor), 1);
    Trapdoor td{from_bytes(rec.fields[0])};
    if (rec.fields[0].size() != randomness_width(inst) || td.x >= inst.group.q) throw FormatError("bad trapdoor");
    if (!check_trapdoor(inst, td)) throw FormatError("trapdoor does not match instance");
    return td;
  }

  /// Fixed-width big-endian element of Z_q.
  static Bytes encode_randomness(const Instance& inst, const Randomness& r) {
    return to_fixed_bytes(r, randomness_width(inst));
  }

  static Randomness decode_randomness(const Instance& inst, ByteView in) {
    if (in.size() != randomness_width(inst)) throw FormatError("randomness has wrong width");
    BigInt r = from_bytes(in);
    if (r >= inst.group.q) throw FormatError("randomness outside Z_q");
    return r;
  }

  static Bytes encode_range(const Instance& inst, const Range& y) {
    return encode_record(tag(Tag::dl_range), {to_fixed_bytes(y, range_width(inst))});
  }

 private:
  static BigInt invert_mod(const BigInt& v, const BigInt& m) { return too::invert(v, m); }
};

/// A collision (m, r), (m', r') with r != r' reveals x = (m - m') / (r' - r) mod q.
inline BigInt dl_recover_trapdoor(const Dl::Instance& inst, const Preimage<Dl>& a, const Preimage<Dl>& b) {
  const auto& q = inst.group.q;
  if (mod(a.randomness - b.randomness, q) == 0) throw DegenerateCollision("collision has equal randomness");
  if (check_collision<Dl>(inst, a, b) != CollisionStatus::valid) throw PreconditionError("not a valid collision");
  BigInt x = mod((a.message - b.message) * too::invert(mod(b.randomness - a.randomness, q), q), q);
  if (powm(inst.group.g, x, inst.group.p) != inst.y) throw ExtractionError("recovered exponent does not match y");
  return x;
}

}  // namespace too::chameleon
