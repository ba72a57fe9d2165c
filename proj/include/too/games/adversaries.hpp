#pragma once

// Reference forgers. All are deterministic given their seed and inputs.

#include <functional>

#include "too/games/game.hpp"

namespace too::games {

/// Signs one message and hands the received pair straight back.
class ReplayAdversary final : public Adversary {
 public:
  explicit ReplayAdversary(Bytes message = to_bytes("replay")) : message_(std::move(message)) {}

  void init(const Bytes&) override {}
  void on_signature(const Bytes& m, const Bytes& sig) override { last_ = {m, sig}; }
  Action next_action() override {
    if (!last_) return Action::sign(message_);
    return Action::finish(last_->first, last_->second);
  }

 private:
  Bytes message_;
  std::optional<std::pair<Bytes, Bytes>> last_;
};

/// Submits a fresh message with a signature that has the genuine record
/// layout but random field contents.
class GarbageAdversary final : public Adversary {
 public:
  explicit GarbageAdversary(std::uint64_t seed) : rng_(Rng::from_u64(seed).derive("garbage")) {}

  void init(const Bytes&) override {}
  void on_signature(const Bytes&, const Bytes& sig) override { template_ = sig; }
  Action next_action() override {
    if (!template_) return Action::sign(to_bytes("seen"));
    Bytes forged;
    try {
      auto rec = decode_record(*template_);
      for (auto& f : rec.fields) f = rng_.bytes(f.size());
      forged = encode_record(rec);
    } catch (const FormatError&) {
      forged = rng_.bytes(template_->size());
    }
    return Action::finish(to_bytes("fresh"), forged);
  }

 private:
  Rng rng_;
  std::optional<Bytes> template_;
};

/// Flips the last byte of the base signature of one received signature and
/// resubmits it on the same message. Against the malleable wrapper that byte
/// is ignored by verification.
class MaulingAdversary final : public Adversary {
 public:
  enum class Target { raw, transformed };

  explicit MaulingAdversary(Target target, Bytes message = to_bytes("maul me"))
      : target_(target), message_(std::move(message)) {}

  void init(const Bytes&) override {}
  void on_signature(const Bytes& m, const Bytes& sig) override { last_ = {m, sig}; }
  Action next_action() override {
    if (!last_) return Action::sign(message_);
    Bytes sig = last_->second;
    if (target_ == Target::transformed) {
      auto rec = decode_record(sig);
      if (!rec.fields.empty() && !rec.fields[0].empty()) rec.fields[0].back() ^= 0xFF;
      sig = encode_record(rec);
    } else if (!sig.empty()) {
      sig.back() ^= 0xFF;
    }
    return Action::finish(last_->first, sig);
  }

 private:
  Target target_;
  Bytes message_;
  std::optional<std::pair<Bytes, Bytes>> last_;
};

/// Seeded random walk over oracle and signing queries that never asks for a
/// frame before the matching signature has been released; finishes with a
/// replayed or guessed forgery.
class RandomWalkAdversary final : public Adversary {
 public:
  /// Base-signature field of a transformed signature; raw signatures are returned whole.
  static Bytes base_part(const Bytes& sig) {
    try {
      auto rec = decode_record(sig);
      if (!rec.fields.empty()) return rec.fields[0];
    } catch (const FormatError&) {
    }
    return sig;
  }

  RandomWalkAdversary(std::uint64_t seed, std::size_t budget, std::size_t steps = 8)
      : rng_(Rng::from_u64(seed).derive("walk")), budget_(budget), steps_(steps) {}

  void init(const Bytes&) override {}
  void on_signature(const Bytes& m, const Bytes& sig) override {
    received_.emplace_back(m, sig);
  }
  Action next_action() override {
    if (steps_ == 0) {
      if (received_.empty()) return Action::finish(rng_.bytes(8), rng_.bytes(16));
      const auto& [m, sig] = received_[rng_.uniform(received_.size())];
      return Action::finish(to_bytes("walk-forgery"), sig);
    }
    --steps_;
    switch (rng_.uniform(3)) {
      case 0:
        if (signs_ < budget_) {
          ++signs_;
          return Action::sign(rng_.bytes(1 + rng_.uniform(16)));
        }
        [[fallthrough]];
      case 1:
        if (!received_.empty()) {
          // Frames of released signatures only.
          const auto& [m, sig] = received_[rng_.uniform(received_.size())];
          return Action::oracle(frame(m, base_part(sig)));
        }
        [[fallthrough]];
      default:
        return Action::oracle(rng_.bytes(4 + rng_.uniform(28)));
    }
  }

 private:
  Rng rng_;
  std::size_t budget_;
  std::size_t steps_;
  std::size_t signs_ = 0;
  std::vector<std::pair<Bytes, Bytes>> received_;
};

/// Queries O(frame(M_1, sigma_1)) before asking for the signature on M_1,
/// using a predicted base signature, then queries it again afterwards. This
/// is the event that separates the standard signer from the programming one.
class PrescientProbingAdversary final : public Adversary {
 public:
  PrescientProbingAdversary(Bytes message, Bytes predicted_base_sig)
      : message_(std::move(message)), predicted_(std::move(predicted_base_sig)) {}

  void init(const Bytes&) override {}
  void on_signature(const Bytes& m, const Bytes& sig) override { last_ = {m, sig}; }
  Action next_action() override {
    switch (stage_++) {
      case 0: return Action::oracle(frame(message_, predicted_));
      case 1: return Action::sign(message_);
      case 2: return Action::oracle(frame(message_, predicted_));
      default: return Action::finish(last_->first, last_->second);
    }
  }

 private:
  Bytes message_;
  Bytes predicted_;
  int stage_ = 0;
  std::optional<std::pair<Bytes, Bytes>> last_;
};

namespace detail {

/// Parses the fields a chameleon-aware forger needs out of a serialized public key.
template <ChameleonHash CH>
TransformedPublicKey<CH> parse_pk(const Bytes& pk) { return parse_public_key<CH>(pk); }

inline BigInt oracle_value(const Bytes& value) { return from_bytes(value); }

}  // namespace detail

/// Signs M_1, then keeps sigma_1 and submits uniformly random randomness on a
/// fresh message. It wins exactly when h(m*, r*) = C_1.
template <ChameleonHash CH>
class RandomnessGuessAdversary final : public Adversary {
 public:
  explicit RandomnessGuessAdversary(std::uint64_t seed) : rng_(Rng::from_u64(seed).derive("guess")) {}

  void init(const Bytes& pk) override { pk_ = detail::parse_pk<CH>(pk); }
  void on_signature(const Bytes&, const Bytes& sig) override { sig_ = parse_signature<CH>(*pk_, sig); }
  Action next_action() override {
    if (!sig_) return Action::sign(to_bytes("guess-1"));
    TransformedSignature<CH> forged{sig_->base_sig, CH::sample_randomness(pk_->ch_inst, rng_)};
    return Action::finish(to_bytes("guess-2"), serialize_signature(*pk_, forged));
  }

 private:
  Rng rng_;
  std::optional<TransformedPublicKey<CH>> pk_;
  std::optional<TransformedSignature<CH>> sig_;
};

/// Reuses (sigma_i, r_i) verbatim on a new message. Wins only when the
/// oracle maps the new frame to m_i.
template <ChameleonHash CH>
class ReuseAdversary final : public Adversary {
 public:
  void init(const Bytes&) override {}
  void on_signature(const Bytes&, const Bytes& sig) override { sig_ = sig; }
  Action next_action() override {
    if (!sig_) return Action::sign(to_bytes("reuse-1"));
    return Action::finish(to_bytes("reuse-2"), *sig_);
  }

 private:
  std::optional<Bytes> sig_;
};

/// Synthetic case-2 forger: holds the chameleon trapdoor, keeps sigma_i and
/// opens C_i to the oracle value of a fresh frame.
template <ChameleonHash CH>
class TrapdoorForger final : public Adversary {
 public:
  TrapdoorForger(typename CH::Trapdoor td, std::uint64_t seed)
      : td_(std::move(td)), rng_(Rng::from_u64(seed).derive("trapdoor-forger")) {}

  void init(const Bytes& pk) override { pk_ = detail::parse_pk<CH>(pk); }
  void on_signature(const Bytes& m, const Bytes& sig) override {
    message_ = m;
    sig_ = parse_signature<CH>(*pk_, sig);
  }
  void on_oracle(const Bytes&, const Bytes& value) override {
    values_.push_back(CH::message_from_integer(pk_->ch_inst, detail::oracle_value(value)));
  }
  Action next_action() override {
    switch (stage_++) {
      case 0: return Action::sign(to_bytes("td-signed"));
      case 1: return Action::oracle(frame(message_, sig_->base_sig.bytes));
      case 2: return Action::oracle(frame(forged_message(), sig_->base_sig.bytes));
      default: {
        const auto& inst = pk_->ch_inst;
        chameleon::RangeSample<CH> target{CH::hash(inst, values_[0], sig_->randomness), values_[0], sig_->randomness};
        auto r = CH::invert(inst, td_, values_[1], target, rng_);
        return Action::finish(forged_message(), serialize_signature(*pk_, TransformedSignature<CH>{sig_->base_sig, r}));
      }
    }
  }

 private:
  static Bytes forged_message() { return to_bytes("td-forged"); }

  typename CH::Trapdoor td_;
  Rng rng_;
  int stage_ = 0;
  std::optional<TransformedPublicKey<CH>> pk_;
  Bytes message_;
  std::optional<TransformedSignature<CH>> sig_;
  std::vector<typename CH::Message> values_;
};

/// Synthetic case-1 forger: holds a copy of the full signing key, moved to
/// the last Merkle leaf, and signs a fresh commitment distinct from every C_i
/// it has seen.
template <ChameleonHash CH>
class ForeignKeyForger final : public Adversary {
 public:
  ForeignKeyForger(TransformedKeyPair<CH> keys, std::uint64_t seed)
      : keys_(std::move(keys)), rng_(Rng::from_u64(seed).derive("foreign-key-forger")) {
    if ((keys_.base.descriptor.scheme_id & ~kMalleableFlag) == merkle::kSchemeId) {
      auto st = merkle::decode_state(keys_.base);
      keys_.base.state = merkle::encode_state(st.capacity() - 1);
    }
  }

  void init(const Bytes& pk) override { pk_ = detail::parse_pk<CH>(pk); }
  void on_signature(const Bytes& m, const Bytes& sig) override { received_.emplace_back(m, parse_signature<CH>(*pk_, sig)); }
  void on_oracle(const Bytes&, const Bytes& value) override {
    values_.push_back(CH::message_from_integer(pk_->ch_inst, detail::oracle_value(value)));
  }
  Action next_action() override {
    if (stage_ == 0) {
      ++stage_;
      return Action::sign(to_bytes("fk-signed"));
    }
    if (stage_ == 1) {
      ++stage_;
      const auto& [m, sig] = received_.front();
      return Action::oracle(frame(m, sig.base_sig.bytes));
    }
    const auto& inst = pk_->ch_inst;
    if (stage_ == 2) {
      ++stage_;
      const auto& sig = received_.front().second;
      auto seen = CH::hash(inst, values_.front(), sig.randomness);
      do {
        target_ = chameleon::sample_range<CH>(inst, rng_);
      } while (target_->element == seen);
      auto signed_c = scheme_sign(keys_.base, encode_commitment<CH>(keys_.base.descriptor, inst, target_->element), rng_);
      base_sig_ = signed_c.signature;
      return Action::oracle(frame(forged_message(), base_sig_->bytes));
    }
    auto r = CH::invert(inst, keys_.ch_td, values_.back(), *target_, rng_);
    return Action::finish(forged_message(), serialize_signature(*pk_, TransformedSignature<CH>{*base_sig_, r}));
  }

 private:
  static Bytes forged_message() { return to_bytes("fk-forged"); }

  TransformedKeyPair<CH> keys_;
  Rng rng_;
  int stage_ = 0;
  std::optional<TransformedPublicKey<CH>> pk_;
  std::vector<std::pair<Bytes, TransformedSignature<CH>>> received_;
  std::vector<typename CH::Message> values_;
  std::optional<chameleon::RangeSample<CH>> target_;
  std::optional<Signature> base_sig_;
};

}  // namespace too::games
