#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "too/bytes.hpp"
#include "too/encoding.hpp"
#include "too/rng.hpp"

namespace too {

enum class Verdict : std::uint8_t { reject = 0, accept = 1 };

inline constexpr bool accepted(Verdict v) { return v == Verdict::accept; }

enum class MessageSpace : std::uint8_t {
  arbitrary_bytes = 0,
  fixed_width_digest = 1,  // exactly 32 bytes, digested by the caller
};

/// Identifies an (algorithm, parameter set) pair in the scheme registry.
struct SchemeDescriptor {
  std::uint8_t scheme_id = 0;
  Bytes param_blob;
  MessageSpace message_space = MessageSpace::arbitrary_bytes;

  friend bool operator==(const SchemeDescriptor&, const SchemeDescriptor&) = default;
};

inline Bytes serialize(const SchemeDescriptor& d) {
  return encode_record(d.scheme_id, {d.param_blob, Bytes{static_cast<std::uint8_t>(d.message_space)}});
}

inline SchemeDescriptor parse_descriptor(ByteView in) {
  auto rec = decode_record(in, std::nullopt, 2);
  if (rec.fields[1].size() != 1 || rec.fields[1][0] > 1) throw FormatError("bad message-space kind");
  return {rec.tag, rec.fields[0], static_cast<MessageSpace>(rec.fields[1][0])};
}

struct KeyPair {
  Bytes public_key;
  Bytes secret_key;
  SchemeDescriptor descriptor;
  std::optional<Bytes> state;  // stateful schemes only

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

struct Signature {
  Bytes bytes;
  SchemeDescriptor descriptor;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignResult {
  Signature signature;
  std::optional<Bytes> state;
};

/// One registered signature algorithm. Implementations are stateless; all
/// mutable key state travels in KeyPair::state.
class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;

  virtual std::string name() const = 0;
  virtual KeyPair keygen(const SchemeDescriptor& d, Rng& rng) const = 0;
  virtual SignResult sign(const KeyPair& kp, ByteView message, Rng& rng) const = 0;
  /// Must be total: malformed input yields reject, never an exception.
  virtual Verdict verify(const SchemeDescriptor& d, ByteView public_key, ByteView message,
                         ByteView signature) const = 0;
  /// Fixed signature length in bytes, if the scheme has one.
  virtual std::optional<std::size_t> signature_length(const SchemeDescriptor& d) const = 0;
};

}  // namespace too
