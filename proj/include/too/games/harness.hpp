#pragma once

// Seeded game runs, aggregate statistics and hybrid comparisons.

#include <functional>
#include <memory>

#include "too/games/adversaries.hpp"
#include "too/stats.hpp"

namespace too::games {

template <ChameleonHash CH>
struct GameSetup {
  GameConfig config;
  SchemeDescriptor base;
  typename CH::Params ch_params;
  std::string oracle_tag = std::string(kDefaultOracleTag);
};

/// What an adversary factory may look at. Honest adversaries use only the
/// seed; synthetic forgers are also handed secret material.
template <ChameleonHash CH>
struct GameContext {
  std::uint64_t seed;
  const TransformedKeyPair<CH>& keys;
};

template <ChameleonHash CH>
using AdversaryFactory = std::function<std::unique_ptr<Adversary>(const GameContext<CH>&)>;

/// Keys of the run with this seed; a pure function of (setup, seed).
template <ChameleonHash CH>
TransformedKeyPair<CH> game_keys(const GameSetup<CH>& setup, std::uint64_t seed) {
  auto rng = Rng::from_u64(seed).derive("keys");
  return g_prime<CH>(setup.base, setup.ch_params, rng);
}

template <ChameleonHash CH>
GameTranscript<CH> play(const GameSetup<CH>& setup, TransformedKeyPair<CH> keys, Adversary& adversary,
                        std::uint64_t seed) {
  const auto root = Rng::from_u64(seed);
  auto oracle = RandomOracle::programmable(CH::message_range(keys.ch_inst), root.derive("oracle").seed(),
                                           setup.oracle_tag);
  auto rng = root.derive("challenger");
  return run_game<CH>(setup.config, std::move(keys), std::move(oracle), adversary, rng);
}

template <ChameleonHash CH>
GameTranscript<CH> play(const GameSetup<CH>& setup, const AdversaryFactory<CH>& factory, std::uint64_t seed) {
  auto keys = game_keys(setup, seed);
  auto adversary = factory(GameContext<CH>{seed, keys});
  return play(setup, std::move(keys), *adversary, seed);
}

/// Base signature the challenger of run `seed` will produce for its first
/// signing query, reconstructed from the coupled randomness. Feeds
/// PrescientProbingAdversary.
template <ChameleonHash CH>
Bytes predict_first_base_signature(const GameSetup<CH>& setup, const TransformedKeyPair<CH>& keys,
                                   std::uint64_t seed) {
  auto rng = Rng::from_u64(seed).derive("challenger");
  auto target = chameleon::sample_range<CH>(keys.ch_inst, rng);
  return scheme_sign(keys.base, encode_commitment<CH>(setup.base, keys.ch_inst, target.element), rng).signature.bytes;
}

struct GameStats {
  std::size_t runs = 0;
  std::size_t wins = 0;
  std::size_t case1 = 0;
  std::size_t case2 = 0;
  std::size_t oracle_collisions = 0;
  std::size_t extractor_failures = 0;
  std::size_t budget_violations = 0;
  std::size_t prequeried = 0;

  double win_rate() const { return runs == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(runs); }
};

/// Folds one transcript into the statistics, classifying and extracting SU wins.
template <ChameleonHash CH>
void record(GameStats& s, GameTranscript<CH>& t) {
  ++s.runs;
  if (t.budget_violation) ++s.budget_violations;
  for (const auto& q : t.queries) s.prequeried += q.adversary_prequeried ? 1 : 0;
  if (!t.won()) return;
  ++s.wins;
  if (t.config.kind != GameKind::su) return;
  try {
    auto cls = classify_forgery(t);
    if (cls.which == ForgeryCase::case1) {
      ++s.case1;
      case1_extract(t);
    } else {
      ++s.case2;
      auto ext = case2_extract(t, t.oracle);
      if (ext.oracle_collision) {
        ++s.oracle_collisions;
      } else if (ext.status != chameleon::CollisionStatus::valid) {
        ++s.extractor_failures;
      }
    }
  } catch (const Error&) {
    ++s.extractor_failures;
  }
}

inline void record(GameStats& s, const BaseTranscript& t) {
  ++s.runs;
  if (t.budget_violation) ++s.budget_violations;
  if (t.won()) ++s.wins;
}

template <ChameleonHash CH>
GameStats run_many(const GameSetup<CH>& setup, const AdversaryFactory<CH>& factory, std::uint64_t first_seed,
                   std::size_t count) {
  GameStats s;
  for (std::size_t i = 0; i < count; ++i) {
    auto t = play(setup, factory, first_seed + i);
    record(s, t);
  }
  return s;
}

/// Games against the untransformed base scheme.
struct BaseSetup {
  GameConfig config;
  SchemeDescriptor base;
};

using BaseAdversaryFactory = std::function<std::unique_ptr<Adversary>(std::uint64_t seed)>;

inline BaseTranscript play_base(const BaseSetup& setup, const BaseAdversaryFactory& factory, std::uint64_t seed) {
  const auto root = Rng::from_u64(seed);
  auto key_rng = root.derive("keys");
  auto keys = scheme_keygen(setup.base, key_rng);
  auto adversary = factory(seed);
  auto rng = root.derive("challenger");
  return run_base_game(setup.config, std::move(keys), *adversary, rng);
}

inline GameStats run_many_base(const BaseSetup& setup, const BaseAdversaryFactory& factory, std::uint64_t first_seed,
                               std::size_t count) {
  GameStats s;
  for (std::size_t i = 0; i < count; ++i) record(s, play_base(setup, factory, first_seed + i));
  return s;
}

// ---------------------------------------------------------------------------
// Hybrid comparison

struct HybridReport {
  std::size_t seeds = 0;
  std::size_t view_matches = 0;
  std::vector<std::uint64_t> divergent_seeds;
  std::size_t wins_a = 0;
  std::size_t wins_b = 0;
  stats::ChiSquare win_rate_test;
  stats::ChiSquare feature_test;

  double win_rate_a() const { return seeds ? static_cast<double>(wins_a) / static_cast<double>(seeds) : 0.0; }
  double win_rate_b() const { return seeds ? static_cast<double>(wins_b) / static_cast<double>(seeds) : 0.0; }
};

/// Maps a transcript to a categorical feature whose distribution is compared across variants.
template <ChameleonHash CH>
using FeatureFn = std::function<std::string(const GameTranscript<CH>&)>;

/// Runs variants a and b on identical seeds (same keys, oracle stream and
/// challenger stream), comparing adversary views seed by seed and the win
/// and feature distributions in aggregate.
template <ChameleonHash CH>
HybridReport hybrid_transcript_compare(GameSetup<CH> setup, const AdversaryFactory<CH>& factory,
                                       std::uint64_t first_seed, std::size_t count, Variant a, Variant b,
                                       const FeatureFn<CH>& feature = {}) {
  HybridReport rep;
  std::map<std::string, std::uint64_t> wins_a, wins_b, feat_a, feat_b;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    const auto keys = game_keys(setup, seed);
    setup.config.variant = a;
    auto adv_a = factory(GameContext<CH>{seed, keys});
    auto ta = play(setup, keys, *adv_a, seed);
    setup.config.variant = b;
    auto adv_b = factory(GameContext<CH>{seed, keys});
    auto tb = play(setup, keys, *adv_b, seed);
    ++rep.seeds;
    if (ta.view == tb.view) {
      ++rep.view_matches;
    } else {
      rep.divergent_seeds.push_back(seed);
    }
    rep.wins_a += ta.won();
    rep.wins_b += tb.won();
    ++wins_a[ta.won() ? "win" : "lose"];
    ++wins_b[tb.won() ? "win" : "lose"];
    if (feature) {
      ++feat_a[feature(ta)];
      ++feat_b[feature(tb)];
    }
  }
  rep.win_rate_test = stats::homogeneity(wins_a, wins_b);
  if (feature) rep.feature_test = stats::homogeneity(feat_a, feat_b);
  return rep;
}

}  // namespace too::games
