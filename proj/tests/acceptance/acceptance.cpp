// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "../support/sis_oracle.hpp"
#include "too/chameleon/dl.hpp"
#include "too/chameleon/sis.hpp"
#include "too/games/harness.hpp"
#include "too/stats.hpp"

namespace {

using namespace too;
using namespace too::games;
using chameleon::Dl;
using chameleon::Sis;
using chameleon::SisParams;

const SisParams kDesk{4, 8, 12, 257, 17, 0};
const SisParams kTiny{2, 2, 8, 7, 2, 0};
const SisParams kWide{4, 16, 92, 1048583, 2, 0};

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  [%2d] %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GameSetup<Dl> toy_setup(Variant v = Variant::hyd0, std::size_t budget = 1) {
  return {{GameKind::su, v, budget}, merkle::descriptor(2), Dl::Params::with_group(chameleon::toy_group())};
}

// ---------------------------------------------------------------------------

template <ChameleonHash CH>
std::size_t sweep(const SchemeDescriptor& d, const typename CH::Params& params, std::uint64_t seed, int count) {
  auto rng = Rng::from_u64(seed);
  auto kp = g_prime<CH>(d, params, rng);
  auto pk = public_part(kp);
  auto oracle = RandomOracle::production(CH::message_range(kp.ch_inst));
  std::size_t ok = 0;
  for (int i = 0; i < count; ++i) {
    auto msg = rng.bytes(rng.uniform(257));
    auto sig = serialize_signature(pk, s_prime<CH>(kp, msg, oracle, rng));
    ok += accepted(v_prime<CH>(pk, msg, sig, oracle));
  }
  return ok;
}

void correctness_sweep() {
  const int n = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t ok = 0;
  const auto lm = merkle::descriptor(10);
  const auto mal = wrap_malleable(merkle::descriptor(10));
  ok += sweep<Dl>(lm, Dl::Params::standard(), 1, n);
  ok += sweep<Dl>(mal, Dl::Params::standard(), 2, n);
  ok += sweep<Sis>(lm, kDesk, 3, n);
  ok += sweep<Sis>(mal, kDesk, 4, n);
  const double secs = seconds_since(t0);
  report(1, "correctness sweep", ok == 4 * n && secs < 60.0,
         fmt("%zu/%d accepted over {lamport-merkle, malleable} x {dl-2048, sis-desk}, %.1f s (limit 60 s)", ok, 4 * n,
             secs));
}

// ---------------------------------------------------------------------------

void overhead_formulas() {
  auto rng = Rng::from_u64(11);
  auto kp = g_prime<Sis>(merkle::descriptor(1), kDesk, rng);
  auto pk = public_part(kp);
  auto oracle = RandomOracle::production(Sis::message_range(kp.ch_inst));
  auto sig = s_prime<Sis>(kp, to_bytes("overhead"), oracle, rng);
  const auto w = Sis::entry_bytes(kp.ch_inst);

  auto inst = decode_record(Sis::serialize_instance(kp.ch_inst));
  auto td = decode_record(Sis::serialize_trapdoor(kp.ch_inst, kp.ch_td));
  auto sig_rec = decode_record(serialize_signature(pk, sig));
  const std::size_t d_pk = (inst.fields[1].size() + inst.fields[2].size()) / w;
  const std::size_t d_sk = td.fields[0].size() / w;
  const std::size_t d_sig = sig_rec.fields[1].size() / w;

  // The byte deltas must be explained by those entries plus fixed framing.
  const auto pk_bytes = serialize_public_key(pk).size() - serialize_base_public_key(kp.base).size();
  const auto sk_bytes = serialize_secret_key(kp).size() - serialize_base_secret_key(kp.base).size();
  const auto sig_bytes = serialize_signature(pk, sig).size() - sig.base_sig.bytes.size();
  const bool framing = pk_bytes >= d_pk * w && sk_bytes >= d_sk * w && sig_bytes >= d_sig * w;

  const auto& p = kDesk;
  const bool ok = d_pk == p.n * (p.k + p.m) && d_sk == p.m * p.m && d_sig == p.m && framing;
  report(2, "overhead formulas", ok,
         fmt("elements pk %zu/%zu sk %zu/%zu sig %zu/%zu (measured/predicted), bytes +%zu/+%zu/+%zu at %zu B/entry", d_pk,
             p.n * (p.k + p.m), d_sk, p.m * p.m, d_sig, p.m, pk_bytes, sk_bytes, sig_bytes, w));
}

// ---------------------------------------------------------------------------

void chameleon_inversion() {
  auto keys = Dl::from_trapdoor(chameleon::toy_group(), 3);
  const auto& inst = keys.instance;
  auto rng = Rng::from_u64(12);
  std::size_t dl_trials = 0, dl_fail = 0;
  for (long mt = 0; mt < 11; ++mt) {
    for (long rt = 0; rt < 11; ++rt) {
      chameleon::RangeSample<Dl> target{Dl::hash(inst, mt, rt), BigInt(mt), BigInt(rt)};
      for (long m = 0; m < 11; ++m) {
        ++dl_trials;
        auto r = Dl::invert(inst, keys.trapdoor, m, target, rng);
        dl_fail += Dl::hash(inst, m, r) != target.element;
      }
    }
  }

  auto sis_run = [&](const SisParams& params, std::uint64_t seed, double& worst_ratio) {
    auto srng = Rng::from_u64(seed);
    auto k = Sis::generate(params, srng);
    std::size_t fail = 0;
    for (int i = 0; i < 1000; ++i) {
      auto target = chameleon::sample_range<Sis>(k.instance, srng);
      auto msg = Sis::sample_message(k.instance, srng);
      auto r = Sis::invert(k.instance, k.trapdoor, msg, target, srng);
      const double ratio = gaussian::norm(r) / k.instance.norm_bound();
      worst_ratio = std::max(worst_ratio, ratio);
      fail += Sis::hash(k.instance, msg, r) != target.element || ratio > 1.0;
    }
    return fail;
  };
  double desk_ratio = 0, wide_ratio = 0;
  const auto desk_fail = sis_run(kDesk, 13, desk_ratio);
  const auto wide_fail = sis_run(kWide, 14, wide_ratio);
  report(3, "chameleon inversion", dl_fail == 0 && desk_fail == 0 && wide_fail == 0,
         fmt("dl p=23 exhaustive %zu trials %zu failures; sis 1000 trials desk %zu / wide %zu failures, "
             "max |r|/(s sqrt m) desk %.3f wide %.3f",
             dl_trials, dl_fail, desk_fail, wide_fail, desk_ratio, wide_ratio));
}

// ---------------------------------------------------------------------------

void uniformity() {
  auto keys = Dl::from_trapdoor(chameleon::toy_group(), 3);
  const auto& inst = keys.instance;
  std::set<BigInt> subgroup;
  BigInt e = 1;
  for (int i = 0; i < 11; ++i, e = mod(e * 4, BigInt(23))) subgroup.insert(e);
  bool dl_exact = subgroup.size() == 11;
  for (long m = 0; m < 11; ++m) {
    std::map<BigInt, int> hits;
    for (long r = 0; r < 11; ++r) ++hits[Dl::hash(inst, m, r)];
    dl_exact = dl_exact && hits.size() == 11;
    for (const auto& [y, c] : hits) dl_exact = dl_exact && c == 1 && subgroup.contains(y);
  }

  auto rng = Rng::from_u64(15);
  auto k = Sis::generate(kTiny, rng);
  const auto& sinst = k.instance;
  const std::size_t cells = 49;
  const std::vector<double> flat(cells, 1.0 / cells);
  double worst_emp = 0, worst_exact = 0, min_p = 1;
  for (std::uint8_t a = 0; a < 2; ++a) {
    for (std::uint8_t b = 0; b < 2; ++b) {
      const Sis::Message msg{a, b};
      auto exact = too::testing::sis_hash_distribution(2, 2, 8, 7, sinst.A.data, sinst.B.data, msg, sinst.params.s);
      std::vector<std::uint64_t> counts(cells, 0);
      const int samples = 100000;
      for (int i = 0; i < samples; ++i) {
        ++counts[too::testing::flat_index(Sis::hash(sinst, msg, Sis::sample_randomness(sinst, rng)), 7)];
      }
      std::vector<double> emp(cells);
      for (std::size_t i = 0; i < cells; ++i) emp[i] = static_cast<double>(counts[i]) / samples;
      worst_emp = std::max(worst_emp, stats::statistical_distance(emp, flat));
      worst_exact = std::max(worst_exact, stats::statistical_distance(exact, flat));
      min_p = std::min(min_p, stats::goodness_of_fit(counts, exact).p_value);
    }
  }
  report(4, "uniformity", dl_exact && worst_emp < 0.05 && worst_exact < 0.05,
         fmt("dl p=23 exact for all 11 m: %s; sis tiny 1e5 samples per m: SD(empirical, uniform) max %.4f, "
             "SD(enumeration, uniform) max %.2e (limit 0.05), fit to enumeration min p %.3f",
             dl_exact ? "yes" : "no", worst_emp, worst_exact, min_p));
}

// ---------------------------------------------------------------------------

void hyd0_hyd1() {
  AdversaryFactory<Dl> fd = [](const GameContext<Dl>& c) { return std::make_unique<RandomWalkAdversary>(c.seed, 3); };
  auto dl = hybrid_transcript_compare<Dl>(toy_setup(Variant::hyd0, 3), fd, 0, 100, Variant::hyd0, Variant::hyd1);

  GameSetup<Sis> sis_setup{{GameKind::su, Variant::hyd0, 3}, merkle::descriptor(2), kDesk};
  AdversaryFactory<Sis> fs = [](const GameContext<Sis>& c) { return std::make_unique<RandomWalkAdversary>(c.seed, 3); };
  auto sis = hybrid_transcript_compare<Sis>(sis_setup, fs, 0, 100, Variant::hyd0, Variant::hyd1);
  report(5, "hyd0 = hyd1 (non-probing)", dl.view_matches == 100 && sis.view_matches == 100,
         fmt("byte-identical views dl p=23 %zu/100, sis desk %zu/100", dl.view_matches, sis.view_matches));
}

void hyd1_hyd2() {
  AdversaryFactory<Dl> f = [](const GameContext<Dl>& c) {
    return std::make_unique<RandomnessGuessAdversary<Dl>>(c.seed);
  };
  FeatureFn<Dl> commitment_and_randomness = [](const GameTranscript<Dl>& t) {
    if (t.queries.empty()) return std::string("none");
    const auto& q = t.queries.front();
    return q.commitment.get_str() + "/" + q.randomness.get_str();
  };
  auto rep = hybrid_transcript_compare<Dl>(toy_setup(), f, 0, 10000, Variant::hyd1, Variant::hyd2,
                                           commitment_and_randomness);
  report(6, "hyd1 ~ hyd2 (dl p=23)", rep.win_rate_test.p_value > 0.001 && rep.feature_test.p_value > 0.001,
         fmt("10^4 seeds: win rate %.4f vs %.4f (chi2 p %.3f); (C_1, r_1) distribution chi2 p %.3f, dof %.0f",
             rep.win_rate_a(), rep.win_rate_b(), rep.win_rate_test.p_value, rep.feature_test.p_value,
             rep.feature_test.dof));
}

// ---------------------------------------------------------------------------

void case2_extractor() {
  const auto setup = toy_setup();
  AdversaryFactory<Dl> f = [](const GameContext<Dl>& c) {
    return std::make_unique<TrapdoorForger<Dl>>(c.keys.ch_td, c.seed);
  };
  std::size_t wins = 0, valid = 0, oracle_collisions = 0, bad = 0, recovered = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto t = play(setup, f, seed);
    if (!t.won()) continue;
    ++wins;
    try {
      auto ext = case2_extract(t, t.oracle);
      if (ext.oracle_collision) {
        ++oracle_collisions;
        continue;
      }
      if (ext.status != chameleon::CollisionStatus::valid) {
        ++bad;
        continue;
      }
      ++valid;
      const auto x = chameleon::dl_recover_trapdoor(t.pk.ch_inst, ext.forged, ext.queried);
      const auto& g = t.pk.ch_inst.group;
      recovered += powm(g.g, x, g.p) == t.pk.ch_inst.y;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(7, "case-2 extractor", wins == 1000 && bad == 0 && recovered == valid && valid + oracle_collisions == wins,
         fmt("%zu/1000 wins: %zu valid collisions, %zu counted oracle collisions, %zu failures; g^x = y in %zu/%zu",
             wins, valid, oracle_collisions, bad, recovered, valid));
}

void case1_extractor() {
  const auto setup = toy_setup();
  AdversaryFactory<Dl> f = [](const GameContext<Dl>& c) {
    return std::make_unique<ForeignKeyForger<Dl>>(c.keys, c.seed);
  };
  std::size_t wins = 0, extracted = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto t = play(setup, f, seed);
    if (!t.won()) continue;
    ++wins;
    try {
      auto out = case1_extract(t);
      bool fresh = true;
      for (const auto& q : t.queries) {
        fresh = fresh && encode_commitment<Dl>(t.pk.descriptor, t.pk.ch_inst, q.commitment) != out.message;
      }
      extracted += fresh && accepted(scheme_verify(t.pk.base_pk, out.message, out.signature));
    } catch (const Error&) {
    }
  }
  report(8, "case-1 extractor", wins == 1000 && extracted == wins,
         fmt("%zu/1000 wins, %zu extracted (C*, sigma*) verify under the base key with fresh C*", wins, extracted));
}

// ---------------------------------------------------------------------------

void malleability_closure() {
  BaseSetup raw{{GameKind::su, Variant::hyd0, 1}, wrap_malleable(merkle::descriptor(1))};
  auto r = run_many_base(
      raw, [](std::uint64_t) { return std::make_unique<MaulingAdversary>(MaulingAdversary::Target::raw); }, 0, 100);

  GameSetup<Dl> tr{{GameKind::su, Variant::hyd0, 1}, wrap_malleable(merkle::descriptor(1)), Dl::Params::standard()};
  AdversaryFactory<Dl> f = [](const GameContext<Dl>&) {
    return std::make_unique<MaulingAdversary>(MaulingAdversary::Target::transformed);
  };
  auto t = run_many(tr, f, 0, 1000);
  report(9, "malleability closure", r.runs == 100 && r.wins == 100 && t.runs == 1000 && t.wins == 0,
         fmt("flip-byte win rate %.3f vs wrapped base (%zu seeds), %.3f vs transformed dl-2048 (%zu seeds)",
             r.win_rate(), r.runs, t.win_rate(), t.runs));
}

// ---------------------------------------------------------------------------

void sis_short_vectors() {
  auto run = [](const SisParams& params, std::size_t& trivial, double& worst) {
    GameSetup<Sis> setup{{GameKind::su, Variant::hyd0, 1}, merkle::descriptor(2), params};
    AdversaryFactory<Sis> f = [](const GameContext<Sis>& c) {
      return std::make_unique<TrapdoorForger<Sis>>(c.keys.ch_td, c.seed);
    };
    std::size_t good = 0;
    for (std::uint64_t seed = 0; good + trivial < 100; ++seed) {
      auto t = play(setup, f, seed);
      if (!t.won()) return std::size_t{0};
      try {
        auto ext = case2_extract(t, t.oracle);
        if (ext.oracle_collision) {
          ++trivial;
          continue;
        }
        auto sv = chameleon::sis_collision_to_short_vector(t.pk.ch_inst, ext.forged, ext.queried);
        worst = std::max(worst, sv.norm / sv.bound);
        good += sv.norm > 0 && sv.norm <= sv.bound;
      } catch (const Error&) {
        return std::size_t{0};
      }
    }
    return good;
  };
  std::size_t trivial_desk = 0, trivial_wide = 0;
  double worst_desk = 0, worst_wide = 0;
  const auto desk = run(kDesk, trivial_desk, worst_desk);
  const auto wide = run(kWide, trivial_wide, worst_wide);
  report(10, "sis collision -> short z", desk + trivial_desk == 100 && wide + trivial_wide == 100,
         fmt("nonzero z with [A|B]z = 0 mod q within sqrt(k) + 2 s sqrt(m): desk %zu/100 (max ratio %.3f), "
             "wide %zu/100 (max ratio %.3f); oracle collisions %zu/%zu",
             desk, worst_desk, wide, worst_wide, trivial_desk, trivial_wide));
}

}  // namespace

int main() {
  correctness_sweep();
  overhead_formulas();
  chameleon_inversion();
  uniformity();
  hyd0_hyd1();
  hyd1_hyd2();
  case2_extractor();
  case1_extractor();
  malleability_closure();
  sis_short_vectors();
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
