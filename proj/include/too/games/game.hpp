#pragma once

// Executable unforgeability games against the transformed scheme, with the
// three challenger variants used by the security argument:
//
//   hyd0  standard signer
//   hyd1  fresh m_i is drawn and O(frame(M_i, sigma_i)) is programmed to it;
//         r_i still comes from trapdoor inversion
//   hyd2  C_i = h(m_i, r_i) from fresh (m_i, r_i); programmed as in hyd1;
//         the trapdoor is never used

#include <optional>
#include <string>

#include "too/transform.hpp"

namespace too::games {

enum class GameKind { eu, su };
enum class Variant { hyd0, hyd1, hyd2 };
enum class Outcome { lose, win };

inline const char* to_string(GameKind k) { return k == GameKind::eu ? "eu" : "su"; }
inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::hyd0: return "hyd0";
    case Variant::hyd1: return "hyd1";
    case Variant::hyd2: return "hyd2";
  }
  return "?";
}

struct Action {
  enum class Kind { sign, oracle, finish };
  Kind kind = Kind::finish;
  Bytes message;    // M for sign/finish, x for oracle
  Bytes signature;  // finish only

  static Action sign(Bytes m) { return {Kind::sign, std::move(m), {}}; }
  static Action oracle(Bytes x) { return {Kind::oracle, std::move(x), {}}; }
  static Action finish(Bytes m, Bytes sig) { return {Kind::finish, std::move(m), std::move(sig)}; }
};

/// A forger. Adversaries are deterministic given their construction seed and
/// see only serialized bytes: the public key, signatures and oracle answers.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void init(const Bytes& public_key) = 0;
  virtual void on_signature(const Bytes& message, const Bytes& signature) = 0;
  virtual void on_oracle(const Bytes& /*input*/, const Bytes& /*value*/) {}
  virtual Action next_action() = 0;
};

struct GameConfig {
  GameKind kind = GameKind::su;
  Variant variant = Variant::hyd0;
  std::size_t budget = 1;         // signing queries
  std::size_t max_steps = 100000;  // all actions
  /// Sign every commitment with the base scheme before the adversary starts,
  /// so the base scheme sees only non-adaptive queries. hyd0 and hyd1 only.
  bool presign_commitments = false;
};

template <ChameleonHash CH>
struct QueryRecord {
  Bytes message;
  Signature base_sig;
  typename CH::Randomness randomness;
  typename CH::Range commitment;      // C_i
  typename CH::Message oracle_value;  // m_i
  Bytes serialized;                   // sigma'_i as sent
  bool adversary_prequeried = false;  // frame(M_i, sigma_i) was queried before release
};

template <ChameleonHash CH>
struct ForgeryRecord {
  Bytes message;
  Bytes serialized;
  std::optional<TransformedSignature<CH>> signature;
  std::optional<typename CH::Message> oracle_value;  // m*
  std::optional<typename CH::Range> commitment;      // C*
};

template <ChameleonHash CH>
struct GameTranscript {
  GameConfig config;
  Bytes public_key;
  TransformedPublicKey<CH> pk;
  std::vector<QueryRecord<CH>> queries;
  std::optional<ForgeryRecord<CH>> forgery;
  Outcome verdict = Outcome::lose;
  bool budget_violation = false;
  bool step_limit = false;
  std::size_t trapdoor_invocations = 0;
  /// Adversary-visible events, each a TOO1 record; equal views mean the adversary could not tell runs apart.
  std::vector<Bytes> view;
  RandomOracle oracle;

  bool won() const { return verdict == Outcome::win; }
};

namespace detail {

enum class ViewTag : std::uint8_t { public_key = 1, signature = 2, oracle = 3 };

inline Bytes view_event(ViewTag t, std::vector<Bytes> fields) {
  return encode_record(static_cast<std::uint8_t>(t), fields);
}

template <ChameleonHash CH>
QueryRecord<CH> sign_standard(TransformedKeyPair<CH>& keys, ByteView message, RandomOracle& oracle, Rng& rng,
                              std::size_t& trapdoor_uses, std::optional<Presigned<CH>> pre = std::nullopt) {
  ++trapdoor_uses;
  auto trace = pre ? complete_presigned<CH>(keys, std::move(*pre), message, oracle, rng)
                   : s_prime_traced<CH>(keys, message, oracle, rng);
  QueryRecord<CH> q;
  q.message.assign(message.begin(), message.end());
  q.base_sig = std::move(trace.signature.base_sig);
  q.randomness = std::move(trace.signature.randomness);
  q.commitment = std::move(trace.target.element);
  q.oracle_value = std::move(trace.oracle_value);
  return q;
}

template <ChameleonHash CH>
QueryRecord<CH> sign_programming(TransformedKeyPair<CH>& keys, ByteView message, RandomOracle& oracle, Rng& rng,
                                 std::size_t& trapdoor_uses, std::optional<Presigned<CH>> pre = std::nullopt) {
  const bool adopt_state = !pre;
  if (!pre) pre = presign<CH>(keys, rng);
  auto target = std::move(pre->target);
  auto signed_c = std::move(pre->signed_c);
  auto point = frame(message, signed_c.signature.bytes);
  QueryRecord<CH> q;
  q.adversary_prequeried = oracle.queried_by(point, Party::adversary);
  auto fresh = oracle.draw_fresh();
  oracle.program(point, fresh);
  q.oracle_value = CH::message_from_integer(keys.ch_inst, fresh);
  ++trapdoor_uses;
  q.randomness = CH::invert(keys.ch_inst, keys.ch_td, q.oracle_value, target, rng);
  if (adopt_state) keys.base.state = std::move(signed_c.state);
  q.message.assign(message.begin(), message.end());
  q.base_sig = std::move(signed_c.signature);
  q.commitment = std::move(target.element);
  return q;
}

/// Trapdoor-free signer: only the public instance and the base key are in scope.
template <ChameleonHash CH>
QueryRecord<CH> sign_trapdoor_free(const typename CH::Instance& inst, KeyPair& base, ByteView message,
                                   RandomOracle& oracle, Rng& rng) {
  auto fresh = oracle.draw_fresh();
  QueryRecord<CH> q;
  q.oracle_value = CH::message_from_integer(inst, fresh);
  q.randomness = CH::sample_randomness(inst, rng);
  q.commitment = CH::hash(inst, q.oracle_value, q.randomness);
  auto signed_c = scheme_sign(base, encode_commitment<CH>(base.descriptor, inst, q.commitment), rng);
  auto point = frame(message, signed_c.signature.bytes);
  q.adversary_prequeried = oracle.queried_by(point, Party::adversary);
  oracle.program(point, fresh);
  base.state = std::move(signed_c.state);
  q.message.assign(message.begin(), message.end());
  q.base_sig = std::move(signed_c.signature);
  return q;
}

}  // namespace detail

/// Plays one game. `oracle` must be programmable; it is moved into the transcript.
template <ChameleonHash CH>
GameTranscript<CH> run_game(const GameConfig& config, TransformedKeyPair<CH> keys, RandomOracle oracle,
                            Adversary& adversary, Rng& rng) {
  if (oracle.mode() != OracleMode::programmable) throw PreconditionError("games require a programmable oracle");
  check_oracle_range<CH>(keys.ch_inst, oracle);
  GameTranscript<CH> t{config, {}, public_part(keys), {}, std::nullopt, Outcome::lose, false, false, 0, {},
                       std::move(oracle)};
  t.public_key = serialize_public_key(t.pk);
  std::vector<Presigned<CH>> presigned;
  if (config.presign_commitments) {
    if (config.variant == Variant::hyd2) throw PreconditionError("hyd2 cannot presign: C_i depends on fresh m_i");
    for (std::size_t i = 0; i < config.budget; ++i) {
      presigned.push_back(presign<CH>(keys, rng));
      keys.base.state = presigned.back().signed_c.state;
    }
  }
  auto next_presigned = [&]() -> std::optional<Presigned<CH>> {
    if (presigned.empty()) return std::nullopt;
    return std::move(presigned[t.queries.size()]);
  };
  t.view.push_back(detail::view_event(detail::ViewTag::public_key, {t.public_key}));
  adversary.init(t.public_key);

  std::optional<Action> final_action;
  for (std::size_t step = 0; step < config.max_steps; ++step) {
    auto action = adversary.next_action();
    if (action.kind == Action::Kind::finish) {
      final_action = std::move(action);
      break;
    }
    if (action.kind == Action::Kind::oracle) {
      auto value = t.oracle.encode_value(t.oracle.eval(action.message, Party::adversary));
      t.view.push_back(detail::view_event(detail::ViewTag::oracle, {action.message, value}));
      adversary.on_oracle(action.message, value);
      continue;
    }
    if (t.queries.size() >= config.budget) {
      t.budget_violation = true;
      return t;
    }
    QueryRecord<CH> q;
    switch (config.variant) {
      case Variant::hyd0:
        q = detail::sign_standard<CH>(keys, action.message, t.oracle, rng, t.trapdoor_invocations, next_presigned());
        q.adversary_prequeried = t.oracle.queried_by(frame(q.message, q.base_sig.bytes), Party::adversary);
        break;
      case Variant::hyd1:
        q = detail::sign_programming<CH>(keys, action.message, t.oracle, rng, t.trapdoor_invocations,
                                         next_presigned());
        break;
      case Variant::hyd2:
        q = detail::sign_trapdoor_free<CH>(keys.ch_inst, keys.base, action.message, t.oracle, rng);
        break;
    }
    q.serialized = serialize_signature(t.pk, TransformedSignature<CH>{q.base_sig, q.randomness});
    t.view.push_back(detail::view_event(detail::ViewTag::signature, {q.message, q.serialized}));
    adversary.on_signature(q.message, q.serialized);
    t.queries.push_back(std::move(q));
  }
  if (!final_action) {
    t.step_limit = true;
    return t;
  }

  ForgeryRecord<CH> f{final_action->message, final_action->signature, std::nullopt, std::nullopt, std::nullopt};
  bool accepted_sig = false;
  try {
    auto sig = parse_signature<CH>(t.pk, f.serialized);
    f.oracle_value = oracle_message<CH>(t.pk.ch_inst, t.oracle, f.message, sig.base_sig.bytes, Party::challenger);
    f.commitment = CH::hash(t.pk.ch_inst, *f.oracle_value, sig.randomness);
    f.signature = std::move(sig);
    accepted_sig = accepted(v_prime<CH>(t.pk, f.message, *f.signature, t.oracle));
  } catch (const Error&) {
    accepted_sig = false;
  }
  bool fresh = true;
  for (const auto& q : t.queries) {
    if (config.kind == GameKind::eu ? q.message == f.message : (q.message == f.message && q.serialized == f.serialized)) {
      fresh = false;
    }
  }
  t.verdict = accepted_sig && fresh ? Outcome::win : Outcome::lose;
  t.forgery = std::move(f);
  return t;
}

// ---------------------------------------------------------------------------
// Forgery classification and extraction

enum class ForgeryCase { case1, case2 };

struct Classification {
  ForgeryCase which = ForgeryCase::case1;
  std::size_t index = 0;  // matching query for case 2
};

/// Case 1 when C* differs from every C_i, otherwise case 2 with the smallest matching i.
template <ChameleonHash CH>
Classification classify_forgery(GameTranscript<CH>& t) {
  if (!t.won() || t.config.kind != GameKind::su || !t.forgery || !t.forgery->signature) {
    throw PreconditionError("classification needs a winning SU transcript");
  }
  auto c_star = recompute_commitment<CH>(t.pk.ch_inst, t.forgery->message, *t.forgery->signature, t.oracle);
  for (std::size_t i = 0; i < t.queries.size(); ++i) {
    if (t.queries[i].commitment == c_star) return {ForgeryCase::case2, i};
  }
  return {ForgeryCase::case1, 0};
}

struct BaseForgery {
  Bytes message;  // encode(C*)
  Signature signature;
};

/// A valid existential forgery (encode(C*), sigma*) against the base scheme.
template <ChameleonHash CH>
BaseForgery case1_extract(GameTranscript<CH>& t) {
  auto cls = classify_forgery(t);
  if (cls.which != ForgeryCase::case1) throw PreconditionError("transcript is not a case-1 win");
  const auto& f = *t.forgery;
  if (!f.commitment) throw ExtractionError("forgery carries no commitment");
  BaseForgery out{encode_commitment<CH>(t.pk.descriptor, t.pk.ch_inst, *f.commitment), f.signature->base_sig};
  if (!accepted(scheme_verify(t.pk.base_pk, out.message, out.signature))) {
    throw ExtractionError("extracted pair does not verify under the base scheme");
  }
  for (const auto& q : t.queries) {
    if (encode_commitment<CH>(t.pk.descriptor, t.pk.ch_inst, q.commitment) == out.message) {
      throw ExtractionError("extracted message was signed by the challenger");
    }
  }
  return out;
}

template <ChameleonHash CH>
struct CollisionExtraction {
  chameleon::Preimage<CH> forged;   // (O(M* || sigma*), r*)
  chameleon::Preimage<CH> queried;  // (O(M_i || sigma_i), r_i)
  std::size_t index = 0;
  chameleon::CollisionStatus status = chameleon::CollisionStatus::not_collision;
  bool oracle_collision = false;  // trivial pair: the oracle mapped both frames to one value
};

template <ChameleonHash CH>
CollisionExtraction<CH> case2_extract(GameTranscript<CH>& t, RandomOracle& oracle) {
  auto cls = classify_forgery(t);
  if (cls.which != ForgeryCase::case2) throw PreconditionError("transcript is not a case-2 win");
  const auto& f = *t.forgery;
  const auto& q = t.queries[cls.index];
  CollisionExtraction<CH> out;
  out.index = cls.index;
  out.forged = {oracle_message<CH>(t.pk.ch_inst, oracle, f.message, f.signature->base_sig.bytes, Party::challenger),
                f.signature->randomness};
  out.queried = {oracle_message<CH>(t.pk.ch_inst, oracle, q.message, q.base_sig.bytes, Party::challenger),
                 q.randomness};
  out.status = chameleon::check_collision<CH>(t.pk.ch_inst, out.forged, out.queried);
  out.oracle_collision = out.status == chameleon::CollisionStatus::trivial;
  return out;
}

// ---------------------------------------------------------------------------
// Games against the raw base scheme (no transformation)

struct BaseTranscript {
  GameConfig config;
  Bytes public_key;
  std::vector<std::pair<Bytes, Bytes>> queries;  // (M_i, sigma_i)
  std::optional<std::pair<Bytes, Bytes>> forgery;
  Outcome verdict = Outcome::lose;
  bool budget_violation = false;
  std::vector<Bytes> view;

  bool won() const { return verdict == Outcome::win; }
};

inline BaseTranscript run_base_game(const GameConfig& config, KeyPair keys, Adversary& adversary, Rng& rng) {
  BaseTranscript t{config, serialize_base_public_key(keys), {}, std::nullopt, Outcome::lose, false, {}};
  t.view.push_back(detail::view_event(detail::ViewTag::public_key, {t.public_key}));
  adversary.init(t.public_key);
  for (std::size_t step = 0; step < config.max_steps; ++step) {
    auto action = adversary.next_action();
    if (action.kind == Action::Kind::finish) {
      const auto& d = keys.descriptor;
      bool ok = accepted(scheme_verify(keys.public_key, prepare_message(d, action.message), {action.signature, d}));
      bool fresh = true;
      for (const auto& [m, s] : t.queries) {
        if (config.kind == GameKind::eu ? m == action.message : (m == action.message && s == action.signature)) {
          fresh = false;
        }
      }
      t.verdict = ok && fresh ? Outcome::win : Outcome::lose;
      t.forgery = {action.message, action.signature};
      return t;
    }
    if (action.kind == Action::Kind::oracle) continue;  // no oracle in the base scheme
    if (t.queries.size() >= config.budget) {
      t.budget_violation = true;
      return t;
    }
    auto res = scheme_sign(keys, prepare_message(keys.descriptor, action.message), rng);
    keys.state = res.state;
    t.view.push_back(detail::view_event(detail::ViewTag::signature, {action.message, res.signature.bytes}));
    adversary.on_signature(action.message, res.signature.bytes);
    t.queries.emplace_back(action.message, res.signature.bytes);
  }
  return t;
}

}  // namespace too::games
