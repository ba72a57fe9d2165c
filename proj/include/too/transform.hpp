#pragma once

// Generic EU -> SU signature transformation.
//
//   keygen : (pk, sk) <- G;  (h, td) <- HG;  pk' = (pk, h), sk' = (sk, td)
//   sign   : C <- range of h;  sigma = S(C);  m = O(frame(M, sigma));
//            r = h^-1_td(m, C);  output (sigma, r)
//   verify : m = O(frame(M, sigma));  C = h(m, r);  accept iff V(C, sigma)
//
// C is handed to the base scheme as its TOO1 encoding, digested when the
// base scheme takes fixed-width input.

#include "too/chameleon/common.hpp"
#include "too/encoding.hpp"
#include "too/oracle.hpp"
#include "too/registry.hpp"

namespace too {

using chameleon::ChameleonHash;

template <ChameleonHash CH>
struct TransformedKeyPair {
  KeyPair base;
  typename CH::Instance ch_inst;
  typename CH::Trapdoor ch_td;

  friend bool operator==(const TransformedKeyPair&, const TransformedKeyPair&) = default;
};

template <ChameleonHash CH>
struct TransformedPublicKey {
  SchemeDescriptor descriptor;
  Bytes base_pk;
  typename CH::Instance ch_inst;

  friend bool operator==(const TransformedPublicKey&, const TransformedPublicKey&) = default;
};

template <ChameleonHash CH>
struct TransformedSignature {
  Signature base_sig;
  typename CH::Randomness randomness;

  friend bool operator==(const TransformedSignature&, const TransformedSignature&) = default;
};

template <ChameleonHash CH>
TransformedPublicKey<CH> public_part(const TransformedKeyPair<CH>& kp) {
  return {kp.base.descriptor, kp.base.public_key, kp.ch_inst};
}

/// Base-scheme message that signs the range element C.
template <ChameleonHash CH>
Bytes encode_commitment(const SchemeDescriptor& d, const typename CH::Instance& inst, const typename CH::Range& c) {
  return prepare_message(d, CH::encode_range(inst, c));
}

template <ChameleonHash CH>
void check_oracle_range(const typename CH::Instance& inst, const RandomOracle& oracle) {
  if (oracle.range().size != CH::message_range(inst).size) {
    throw DomainError("oracle range does not match the chameleon message space");
  }
}

template <ChameleonHash CH>
typename CH::Message oracle_message(const typename CH::Instance& inst, RandomOracle& oracle, ByteView message,
                                    ByteView base_sig, Party party) {
  return CH::message_from_integer(inst, oracle.eval(frame(message, base_sig), party));
}

template <ChameleonHash CH>
TransformedKeyPair<CH> g_prime(const SchemeDescriptor& base_descriptor, const typename CH::Params& ch_params,
                               Rng& rng) {
  auto base = scheme_keygen(base_descriptor, rng);
  auto keys = CH::generate(ch_params, rng);
  return {std::move(base), std::move(keys.instance), std::move(keys.trapdoor)};
}

/// Everything produced while signing one message; games keep it as bookkeeping.
template <ChameleonHash CH>
struct SigningTrace {
  TransformedSignature<CH> signature;
  chameleon::RangeSample<CH> target;  // C with its trace
  typename CH::Message oracle_value;  // m = O(frame(M, sigma))
};

/// A commitment C together with its base signature, produced before the message is known.
template <ChameleonHash CH>
struct Presigned {
  chameleon::RangeSample<CH> target;
  SignResult signed_c;  // signature on encode(C) and the base state after it
};

/// Samples C and signs it with the base scheme. The key pair is not modified;
/// the caller adopts `signed_c.state` once the signature is released.
template <ChameleonHash CH>
Presigned<CH> presign(const TransformedKeyPair<CH>& kp, Rng& rng) {
  auto target = chameleon::sample_range<CH>(kp.ch_inst, rng);
  auto signed_c = scheme_sign(kp.base, encode_commitment<CH>(kp.base.descriptor, kp.ch_inst, target.element), rng);
  return {std::move(target), std::move(signed_c)};
}

/// Opens a presigned commitment to M: m = O(frame(M, sigma)), r = h^-1(m, C).
template <ChameleonHash CH>
SigningTrace<CH> complete_presigned(const TransformedKeyPair<CH>& kp, Presigned<CH> pre, ByteView message,
                                    RandomOracle& oracle, Rng& rng) {
  check_oracle_range<CH>(kp.ch_inst, oracle);
  auto m = oracle_message<CH>(kp.ch_inst, oracle, message, pre.signed_c.signature.bytes, Party::challenger);
  auto r = CH::invert(kp.ch_inst, kp.ch_td, m, pre.target, rng);
  return {{std::move(pre.signed_c.signature), std::move(r)}, std::move(pre.target), std::move(m)};
}

/// Signs M and advances the base-scheme state. On any error the key pair is left untouched.
template <ChameleonHash CH>
SigningTrace<CH> s_prime_traced(TransformedKeyPair<CH>& kp, ByteView message, RandomOracle& oracle, Rng& rng) {
  check_oracle_range<CH>(kp.ch_inst, oracle);
  auto pre = presign<CH>(kp, rng);
  auto state = pre.signed_c.state;
  auto trace = complete_presigned<CH>(kp, std::move(pre), message, oracle, rng);
  kp.base.state = std::move(state);
  return trace;
}

template <ChameleonHash CH>
TransformedSignature<CH> s_prime(TransformedKeyPair<CH>& kp, ByteView message, RandomOracle& oracle, Rng& rng) {
  return s_prime_traced<CH>(kp, message, oracle, rng).signature;
}

/// Recomputes C* = h(O(frame(M, sigma)), r) for a candidate signature.
template <ChameleonHash CH>
typename CH::Range recompute_commitment(const typename CH::Instance& inst, ByteView message,
                                        const TransformedSignature<CH>& sig, RandomOracle& oracle,
                                        Party party = Party::challenger) {
  auto m = oracle_message<CH>(inst, oracle, message, sig.base_sig.bytes, party);
  return CH::hash(inst, m, sig.randomness);
}

template <ChameleonHash CH>
Verdict v_prime(const TransformedPublicKey<CH>& pk, ByteView message, const TransformedSignature<CH>& sig,
                RandomOracle& oracle) {
  check_oracle_range<CH>(pk.ch_inst, oracle);
  try {
    if (sig.base_sig.descriptor != pk.descriptor) return Verdict::reject;
    auto c = recompute_commitment<CH>(pk.ch_inst, message, sig, oracle);
    return scheme_verify(pk.base_pk, encode_commitment<CH>(pk.descriptor, pk.ch_inst, c), sig.base_sig);
  } catch (const Error&) {
    return Verdict::reject;
  }
}

// ---------------------------------------------------------------------------
// Serialization

template <ChameleonHash CH>
Bytes serialize_signature(const TransformedPublicKey<CH>& pk, const TransformedSignature<CH>& sig) {
  return encode_record(pk.descriptor.scheme_id,
                       {sig.base_sig.bytes, CH::encode_randomness(pk.ch_inst, sig.randomness)});
}

template <ChameleonHash CH>
TransformedSignature<CH> parse_signature(const TransformedPublicKey<CH>& pk, ByteView in) {
  auto rec = decode_record(in, pk.descriptor.scheme_id, 2);
  return {Signature{rec.fields[0], pk.descriptor}, CH::decode_randomness(pk.ch_inst, rec.fields[1])};
}

/// Verifies serialized signature bytes; malformed input is a reject.
template <ChameleonHash CH>
Verdict v_prime(const TransformedPublicKey<CH>& pk, ByteView message, ByteView sig_bytes, RandomOracle& oracle) {
  TransformedSignature<CH> sig;
  try {
    sig = parse_signature<CH>(pk, sig_bytes);
  } catch (const Error&) {
    return Verdict::reject;
  }
  return v_prime<CH>(pk, message, sig, oracle);
}

/// Record layout of a base-scheme public key alone, for size comparisons.
inline Bytes serialize_base_public_key(const KeyPair& base) {
  return encode_record(base.descriptor.scheme_id, {serialize(base.descriptor), base.public_key});
}

inline Bytes serialize_base_secret_key(const KeyPair& base) {
  Bytes state_field;
  if (base.state) {
    state_field.push_back(1);
    append(state_field, *base.state);
  }
  return encode_record(base.descriptor.scheme_id,
                       {serialize(base.descriptor), base.public_key, base.secret_key, state_field});
}

template <ChameleonHash CH>
Bytes serialize_public_key(const TransformedPublicKey<CH>& pk) {
  return encode_record(pk.descriptor.scheme_id,
                       {serialize(pk.descriptor), pk.base_pk, CH::serialize_instance(pk.ch_inst)});
}

template <ChameleonHash CH>
TransformedPublicKey<CH> parse_public_key(ByteView in) {
  auto rec = decode_record(in, std::nullopt, 3);
  auto d = parse_descriptor(rec.fields[0]);
  if (d.scheme_id != rec.tag) throw FormatError("descriptor does not match record tag");
  return {d, rec.fields[1], CH::parse_instance(rec.fields[2])};
}

/// sk' = (sk, td) on its own: the base secret-key fields followed by the trapdoor.
template <ChameleonHash CH>
Bytes serialize_secret_key(const TransformedKeyPair<CH>& kp) {
  auto base = decode_record(serialize_base_secret_key(kp.base));
  base.fields.push_back(CH::serialize_trapdoor(kp.ch_inst, kp.ch_td));
  return encode_record(base);
}

/// Key-pair file contents: sk' followed by the chameleon instance, so one file can sign.
template <ChameleonHash CH>
Bytes serialize_key_pair(const TransformedKeyPair<CH>& kp) {
  auto base = decode_record(serialize_base_secret_key(kp.base));
  base.fields.push_back(CH::serialize_instance(kp.ch_inst));
  base.fields.push_back(CH::serialize_trapdoor(kp.ch_inst, kp.ch_td));
  return encode_record(base);
}

template <ChameleonHash CH>
TransformedKeyPair<CH> parse_key_pair(ByteView in) {
  auto rec = decode_record(in, std::nullopt, 6);
  TransformedKeyPair<CH> kp;
  kp.base.descriptor = parse_descriptor(rec.fields[0]);
  if (kp.base.descriptor.scheme_id != rec.tag) throw FormatError("descriptor does not match record tag");
  SchemeRegistry::instance().lookup(rec.tag);
  kp.base.public_key = rec.fields[1];
  kp.base.secret_key = rec.fields[2];
  const auto& st = rec.fields[3];
  if (!st.empty()) {
    if (st[0] != 1) throw FormatError("bad state marker");
    kp.base.state = Bytes(st.begin() + 1, st.end());
  }
  if ((rec.tag & ~kMalleableFlag) == merkle::kSchemeId) merkle::decode_state(kp.base);
  kp.ch_inst = CH::parse_instance(rec.fields[4]);
  kp.ch_td = CH::parse_trapdoor(kp.ch_inst, rec.fields[5]);
  return kp;
}

/// Chameleon family tag of a serialized public key or key pair (its last instance field).
inline std::uint8_t chameleon_tag_of(ByteView key_bytes) {
  auto rec = decode_record(key_bytes);
  std::size_t idx = rec.fields.size() == 3 ? 2 : rec.fields.size() == 6 ? 4 : SIZE_MAX;
  if (idx == SIZE_MAX) throw FormatError("not a transformed key");
  const auto& inst = rec.fields[idx];
  if (inst.size() < 5) throw FormatError("truncated chameleon instance");
  return inst[4];
}

}  // namespace too
