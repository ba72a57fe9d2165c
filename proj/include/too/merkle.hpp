#pragma once

// Lamport one-time signatures over a 256-bit digest, lifted to a many-time
// stateful scheme by a Merkle tree of one-time public keys.
//
//   public key : H (1 byte) || root (32)
//   secret key : H (1 byte) || seed (32) || tree nodes in heap order (2^(H+1)-1 nodes x 32)
//   state      : be64(next_leaf)
//   signature  : be32(leaf) || 256 revealed preimages || 256 complementary
//                public hashes || H authentication-path nodes

#include <string>

#include "too/hash.hpp"
#include "too/scheme.hpp"

namespace too::merkle {

inline constexpr std::uint8_t kSchemeId = 0x01;
inline constexpr std::size_t kDigestBits = 256;
inline constexpr std::size_t kHashLen = 32;
inline constexpr unsigned kMaxHeight = 16;

inline SchemeDescriptor descriptor(unsigned height) {
  if (height < 1 || height > kMaxHeight) throw DomainError("Merkle tree height must be in [1, 16]");
  return {kSchemeId, Bytes{static_cast<std::uint8_t>(height)}, MessageSpace::fixed_width_digest};
}

inline unsigned height_of(const SchemeDescriptor& d) {
  if (d.param_blob.size() != 1 || d.param_blob[0] < 1 || d.param_blob[0] > kMaxHeight) {
    throw DomainError("invalid Merkle parameter blob");
  }
  return d.param_blob[0];
}

inline std::size_t signature_size(unsigned height) { return 4 + 2 * kDigestBits * kHashLen + height * kHashLen; }

/// Decoded view of a key's mutable state.
struct KeyState {
  unsigned height = 0;
  std::uint64_t next_leaf = 0;

  std::uint64_t capacity() const { return std::uint64_t{1} << height; }
  std::uint64_t remaining() const { return capacity() - next_leaf; }
};

inline Bytes encode_state(std::uint64_t next_leaf) {
  Bytes s;
  append_u64_be(s, next_leaf);
  return s;
}

inline KeyState decode_state(const KeyPair& kp) {
  KeyState st{height_of(kp.descriptor), 0};
  if (!kp.state || kp.state->size() != 8) throw FormatError("missing or malformed Merkle key state");
  st.next_leaf = read_u64_be(*kp.state);
  if (st.next_leaf > st.capacity()) throw FormatError("next_leaf exceeds tree capacity");
  return st;
}

namespace detail {

inline Digest preimage(ByteView seed, std::uint32_t leaf, std::uint32_t bit, std::uint8_t side) {
  static const Bytes kTag = to_bytes("TOO-LAMPORT-x");
  Bytes idx;
  append_u32_be(idx, leaf);
  append_u32_be(idx, bit);
  idx.push_back(side);
  return sha256({kTag, seed, idx});
}

inline Digest hash_pair(const Digest& left, const Digest& right) {
  static const std::uint8_t kNodeTag[1] = {0x01};
  return sha256({ByteView(kNodeTag), left, right});
}

/// Leaf value: H(0x00 || y[0][0] || y[0][1] || ... || y[255][1]).
class LeafHasher {
 public:
  LeafHasher() {
    static const std::uint8_t kLeafTag[1] = {0x00};
    h_.update(kLeafTag);
  }
  void add(const Digest& y) { h_.update(y); }
  Digest finish() { return h_.finish(); }

 private:
  Sha256 h_;
};

inline Digest leaf_value(ByteView seed, std::uint32_t leaf) {
  LeafHasher lh;
  for (std::uint32_t j = 0; j < kDigestBits; ++j) {
    for (std::uint8_t side = 0; side < 2; ++side) lh.add(sha256(preimage(seed, leaf, j, side)));
  }
  return lh.finish();
}

inline bool digest_bit(ByteView digest, std::size_t j) { return (digest[j / 8] >> (7 - j % 8)) & 1; }

inline Digest node_at(ByteView secret_key, std::size_t heap_index) {
  Digest d{};
  auto off = 33 + (heap_index - 1) * kHashLen;
  std::copy_n(secret_key.begin() + static_cast<std::ptrdiff_t>(off), kHashLen, d.begin());
  return d;
}

}  // namespace detail

class LamportMerkle final : public SignatureScheme {
 public:
  std::string name() const override { return "lamport-merkle"; }

  KeyPair keygen(const SchemeDescriptor& d, Rng& rng) const override {
    const unsigned h = height_of(d);
    const std::size_t leaves = std::size_t{1} << h;
    const Seed seed = rng.seed_bytes();

    std::vector<Digest> nodes(2 * leaves);  // heap order, index 0 unused
    for (std::size_t i = 0; i < leaves; ++i) {
      nodes[leaves + i] = detail::leaf_value(seed, static_cast<std::uint32_t>(i));
    }
    for (std::size_t i = leaves - 1; i >= 1; --i) nodes[i] = detail::hash_pair(nodes[2 * i], nodes[2 * i + 1]);

    KeyPair kp;
    kp.descriptor = d;
    kp.public_key.push_back(static_cast<std::uint8_t>(h));
    append(kp.public_key, nodes[1]);
    kp.secret_key.reserve(33 + (2 * leaves - 1) * kHashLen);
    kp.secret_key.push_back(static_cast<std::uint8_t>(h));
    append(kp.secret_key, seed);
    for (std::size_t i = 1; i < 2 * leaves; ++i) append(kp.secret_key, nodes[i]);
    kp.state = encode_state(0);
    return kp;
  }

  SignResult sign(const KeyPair& kp, ByteView message, Rng& /*rng*/) const override {
    if (message.size() != kHashLen) throw DomainError("lamport-merkle signs 32-byte digests only");
    const auto st = decode_state(kp);
    if (st.next_leaf >= st.capacity()) {
      throw CapacityError("Merkle tree exhausted: all " + std::to_string(st.capacity()) + " leaves used");
    }
    const std::size_t leaves = st.capacity();
    if (kp.secret_key.size() != 33 + (2 * leaves - 1) * kHashLen || kp.secret_key[0] != st.height) {
      throw FormatError("secret key does not match descriptor");
    }
    const ByteView seed(kp.secret_key.data() + 1, 32);
    const auto leaf = static_cast<std::uint32_t>(st.next_leaf);

    Bytes sig;
    sig.reserve(signature_size(st.height));
    append_u32_be(sig, leaf);
    std::vector<Digest> complementary(kDigestBits);
    for (std::uint32_t j = 0; j < kDigestBits; ++j) {
      const auto b = static_cast<std::uint8_t>(detail::digest_bit(message, j));
      append(sig, detail::preimage(seed, leaf, j, b));
      complementary[j] = sha256(detail::preimage(seed, leaf, j, static_cast<std::uint8_t>(1 - b)));
    }
    for (const auto& c : complementary) append(sig, c);
    for (std::size_t node = leaves + leaf; node > 1; node /= 2) {
      append(sig, detail::node_at(kp.secret_key, node ^ 1));
    }
    return {Signature{std::move(sig), kp.descriptor}, encode_state(st.next_leaf + 1)};
  }

  Verdict verify(const SchemeDescriptor& d, ByteView pk, ByteView message, ByteView sig) const override {
    if (d.param_blob.size() != 1 || d.param_blob[0] < 1 || d.param_blob[0] > kMaxHeight) return Verdict::reject;
    const unsigned h = d.param_blob[0];
    if (pk.size() != 1 + kHashLen || pk[0] != h) return Verdict::reject;
    if (message.size() != kHashLen || sig.size() != signature_size(h)) return Verdict::reject;
    const std::uint32_t leaf = read_u32_be(sig.first(4));
    if (leaf >= (std::uint64_t{1} << h)) return Verdict::reject;

    const auto* revealed = sig.data() + 4;
    const auto* complementary = revealed + kDigestBits * kHashLen;
    const auto* path = complementary + kDigestBits * kHashLen;

    detail::LeafHasher lh;
    for (std::size_t j = 0; j < kDigestBits; ++j) {
      Digest from_reveal = sha256(ByteView(revealed + j * kHashLen, kHashLen));
      Digest other{};
      std::copy_n(complementary + j * kHashLen, kHashLen, other.begin());
      if (detail::digest_bit(message, j)) {
        lh.add(other);
        lh.add(from_reveal);
      } else {
        lh.add(from_reveal);
        lh.add(other);
      }
    }
    Digest node = lh.finish();
    std::uint64_t index = (std::uint64_t{1} << h) + leaf;
    for (unsigned level = 0; level < h; ++level, index /= 2) {
      Digest sibling{};
      std::copy_n(path + level * kHashLen, kHashLen, sibling.begin());
      node = (index & 1) ? detail::hash_pair(sibling, node) : detail::hash_pair(node, sibling);
    }
    return std::equal(node.begin(), node.end(), pk.begin() + 1) ? Verdict::accept : Verdict::reject;
  }

  std::optional<std::size_t> signature_length(const SchemeDescriptor& d) const override {
    return signature_size(height_of(d));
  }
};

}  // namespace too::merkle
