#pragma once

#include <map>
#include <memory>

#include "too/hash.hpp"
#include "too/merkle.hpp"
#include "too/scheme.hpp"

namespace too {

/// Scheme ids with this bit set denote the malleable wrapper of (id & 0x7F).
inline constexpr std::uint8_t kMalleableFlag = 0x80;

/// Negative control: appends one ignored random byte to every base
/// signature. Existential unforgeability is inherited from the base scheme,
/// strong unforgeability is broken by flipping that byte.
class MalleableWrapper final : public SignatureScheme {
 public:
  explicit MalleableWrapper(const SignatureScheme& base) : base_(base) {}

  std::string name() const override { return "malleable(" + base_.name() + ")"; }

  KeyPair keygen(const SchemeDescriptor& d, Rng& rng) const override {
    auto kp = base_.keygen(unwrap(d), rng);
    kp.descriptor = d;
    return kp;
  }

  SignResult sign(const KeyPair& kp, ByteView message, Rng& rng) const override {
    KeyPair inner = kp;
    inner.descriptor = unwrap(kp.descriptor);
    auto res = base_.sign(inner, message, rng);
    res.signature.descriptor = kp.descriptor;
    res.signature.bytes.push_back(rng.bytes(1)[0]);
    return res;
  }

  Verdict verify(const SchemeDescriptor& d, ByteView pk, ByteView message, ByteView sig) const override {
    if (sig.empty()) return Verdict::reject;
    return base_.verify(unwrap(d), pk, message, sig.first(sig.size() - 1));
  }

  std::optional<std::size_t> signature_length(const SchemeDescriptor& d) const override {
    auto len = base_.signature_length(unwrap(d));
    if (len) return *len + 1;
    return std::nullopt;
  }

  static SchemeDescriptor unwrap(const SchemeDescriptor& d) {
    auto inner = d;
    inner.scheme_id = static_cast<std::uint8_t>(d.scheme_id & ~kMalleableFlag);
    return inner;
  }

 private:
  const SignatureScheme& base_;
};

class SchemeRegistry {
 public:
  static const SchemeRegistry& instance() {
    static const SchemeRegistry registry;
    return registry;
  }

  const SignatureScheme& lookup(std::uint8_t scheme_id) const {
    auto it = schemes_.find(scheme_id);
    if (it == schemes_.end()) throw RegistryError("unregistered scheme_id " + std::to_string(scheme_id));
    return *it->second;
  }

  const SignatureScheme* find(std::uint8_t scheme_id) const {
    auto it = schemes_.find(scheme_id);
    return it == schemes_.end() ? nullptr : it->second.get();
  }

 private:
  SchemeRegistry() { add(merkle::kSchemeId, std::make_unique<merkle::LamportMerkle>()); }

  void add(std::uint8_t id, std::unique_ptr<SignatureScheme> scheme) {
    const auto& base = *scheme;
    schemes_.emplace(id, std::move(scheme));
    schemes_.emplace(static_cast<std::uint8_t>(id | kMalleableFlag), std::make_unique<MalleableWrapper>(base));
  }

  std::map<std::uint8_t, std::unique_ptr<SignatureScheme>> schemes_;
};

inline SchemeDescriptor wrap_malleable(const SchemeDescriptor& base) {
  if (base.scheme_id & kMalleableFlag) throw DomainError("descriptor is already wrapped");
  SchemeRegistry::instance().lookup(base.scheme_id);
  auto d = base;
  d.scheme_id = static_cast<std::uint8_t>(base.scheme_id | kMalleableFlag);
  return d;
}

inline KeyPair scheme_keygen(const SchemeDescriptor& d, Rng& rng) {
  return SchemeRegistry::instance().lookup(d.scheme_id).keygen(d, rng);
}

inline SignResult scheme_sign(const KeyPair& kp, ByteView message, Rng& rng) {
  return SchemeRegistry::instance().lookup(kp.descriptor.scheme_id).sign(kp, message, rng);
}

inline Verdict scheme_verify(ByteView public_key, ByteView message, const Signature& sig) {
  const auto* scheme = SchemeRegistry::instance().find(sig.descriptor.scheme_id);
  if (scheme == nullptr) return Verdict::reject;
  try {
    return scheme->verify(sig.descriptor, public_key, message, sig.bytes);
  } catch (const Error&) {
    return Verdict::reject;
  }
}

/// Maps an arbitrary byte string into the scheme's message space.
inline Bytes prepare_message(const SchemeDescriptor& d, ByteView message) {
  if (d.message_space == MessageSpace::fixed_width_digest) {
    auto dg = sha256(message);
    return Bytes(dg.begin(), dg.end());
  }
  return Bytes(message.begin(), message.end());
}

inline std::string scheme_name(const SchemeDescriptor& d) { return SchemeRegistry::instance().lookup(d.scheme_id).name(); }

}  // namespace too
