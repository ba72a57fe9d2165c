#include "cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "too/chameleon/dl.hpp"
#include "too/chameleon/sis.hpp"
#include "too/games/harness.hpp"
#include "too/transform.hpp"

namespace too::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using chameleon::Dl;
using chameleon::Sis;
using chameleon::SisParams;
using namespace games;

/// Carries an exit status out of a subcommand.
struct Exit : std::runtime_error {
  Exit(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  int code;
};

// ---------------------------------------------------------------------------
// Files

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit(kMalformed, "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

/// Reads a TOO1 object stored either in binary or as hex text.
Bytes read_object(const fs::path& path) {
  auto raw = read_file(path);
  if (raw.size() >= kMagic.size() && std::equal(kMagic.begin(), kMagic.end(), raw.begin())) return raw;
  try {
    return from_hex(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
  } catch (const FormatError&) {
    throw Exit(kMalformed, path.string() + " is neither TOO1 binary nor hex text");
  }
}

Bytes render(const Bytes& data, bool armor) {
  if (!armor) return data;
  auto text = to_hex(data);
  text.push_back('\n');
  return Bytes(text.begin(), text.end());
}

void write_file(const fs::path& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Exit(kMalformed, "cannot write " + path.string());
}

void sync_path(const fs::path& path, int flags) {
  int fd = ::open(path.c_str(), flags);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

/// Replaces `path` atomically: temp file, fsync, rename, fsync of the directory.
void write_durable(const fs::path& path, const Bytes& data) {
  fs::path tmp = path;
  tmp += ".tmp";
  write_file(tmp, data);
  sync_path(tmp, O_RDONLY);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Exit(kMalformed, "cannot replace " + path.string() + ": " + ec.message());
  auto dir = path.parent_path();
  sync_path(dir.empty() ? fs::path(".") : dir, O_RDONLY | O_DIRECTORY);
}

/// Exclusive, non-blocking lock on `<key>.lock`. The key file itself is
/// replaced by rename on every signature, so it cannot carry the lock.
class KeyLock {
 public:
  explicit KeyLock(const fs::path& key) {
    fs::path lock = key;
    lock += ".lock";
    fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT, 0600);
    if (fd_ < 0) throw Exit(kMalformed, "cannot open lock file " + lock.string() + ": " + std::strerror(errno));
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw Exit(kLocked, "key " + key.string() + " is locked by another signer");
    }
  }
  ~KeyLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  KeyLock(const KeyLock&) = delete;
  KeyLock& operator=(const KeyLock&) = delete;

 private:
  int fd_ = -1;
};

// ---------------------------------------------------------------------------
// Argument parsing helpers

/// A decimal u64 or 64 hex digits. Absent seeds are drawn from the OS and reported.
Rng seeded_rng(const std::string& text, std::ostream& err, const char* what) {
  if (text.empty()) {
    auto seed = Rng::os_seed();
    err << what << " seed: " << to_hex(seed) << "\n";
    return Rng(seed);
  }
  if (text.size() == 64) {
    auto b = from_hex(text);
    Seed s{};
    std::copy(b.begin(), b.end(), s.begin());
    return Rng(s);
  }
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used, 10);
    if (used == text.size()) return Rng::from_u64(v);
  } catch (const std::exception&) {
  }
  throw Exit(kMalformed, "seed must be a decimal integer or 64 hex digits");
}

std::uint64_t seed_u64(const std::string& text, std::ostream& err) {
  if (text.empty()) {
    auto s = Rng(Rng::os_seed()).next_u64() >> 1;
    err << "first seed: " << s << "\n";
    return s;
  }
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used, 10);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Exit(kMalformed, "--seed must be a decimal integer for games");
}

/// lamport-merkle[:H] or malleable[:H] (the byte-appending wrapper around lamport-merkle).
SchemeDescriptor parse_scheme(const std::string& text, unsigned default_height) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  unsigned height = default_height;
  if (colon != std::string::npos) {
    try {
      height = static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Exit(kMalformed, "bad tree height in --scheme " + text);
    }
  }
  if (name == "lamport-merkle") return merkle::descriptor(height);
  if (name == "malleable") return wrap_malleable(merkle::descriptor(height));
  throw Exit(kMalformed, "unknown scheme " + name + " (expected lamport-merkle[:H] or malleable[:H])");
}

struct SisFlags {
  std::size_t n = 4, k = 8, m = 12;
  std::uint64_t q = 257, base = 17;
  double s = 0;

  SisParams params() const { return {n, k, m, q, base, s}; }

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "SIS rows")->capture_default_str();
    app->add_option("--k", k, "SIS message length in bits")->capture_default_str();
    app->add_option("--m", m, "SIS randomness dimension")->capture_default_str();
    app->add_option("--q", q, "SIS modulus")->capture_default_str();
    app->add_option("--base", base, "gadget base")->capture_default_str();
    app->add_option("--s", s, "Gaussian width (0 = smallest admissible)")->capture_default_str();
  }
};

/// dl (RFC 3526 2048-bit group) or dl:BITS (freshly generated safe-prime group).
Dl::Params dl_params(const std::string& text, Rng& group_rng) {
  if (text == "dl") return Dl::Params::standard();
  if (text.rfind("dl:", 0) == 0) {
    unsigned bits = 0;
    try {
      bits = static_cast<unsigned>(std::stoul(text.substr(3)));
    } catch (const std::exception&) {
      throw Exit(kMalformed, "bad modulus size in --chameleon " + text);
    }
    return Dl::Params::with_group(chameleon::generate_group(bits, group_rng));
  }
  throw Exit(kMalformed, "unknown chameleon " + text + " (expected dl, dl:BITS or sis)");
}

bool is_sis(const std::string& text) { return text == "sis"; }

/// Calls f with a value of the chameleon type named by the key's instance tag.
template <class F>
int with_chameleon_of(const Bytes& key, F&& f) {
  std::uint8_t tag = 0;
  try {
    tag = chameleon_tag_of(key);
  } catch (const FormatError& e) {
    throw Exit(kMalformed, e.what());
  }
  if (tag == chameleon::tag(chameleon::Tag::dl_instance)) return f(Dl{});
  if (tag == chameleon::tag(chameleon::Tag::sis_instance)) return f(Sis{});
  throw Exit(kMalformed, "unknown chameleon instance tag");
}

// ---------------------------------------------------------------------------
// keygen / sign / verify

struct GlobalFlags {
  std::string ro_tag = std::string(kDefaultOracleTag);
  bool armor = false;
};

template <ChameleonHash CH>
RandomOracle production_oracle(const typename CH::Instance& inst, const GlobalFlags& g) {
  return RandomOracle::production(CH::message_range(inst), g.ro_tag);
}

struct KeygenFlags {
  std::string scheme = "lamport-merkle";
  std::string chameleon = "dl";
  std::string out;
  std::string seed;
  SisFlags sis;
};

int cmd_keygen(const KeygenFlags& f, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
  auto desc = parse_scheme(f.scheme, 10);
  auto rng = seeded_rng(f.seed, err, "keygen");
  fs::path key = f.out + ".tookey";
  fs::path pub = f.out + ".toopub";
  auto emit = [&](const auto& keys) {
    write_durable(key, render(serialize_key_pair(keys), g.armor));
    write_file(pub, render(serialize_public_key(public_part(keys)), g.armor));
  };
  if (is_sis(f.chameleon)) {
    emit(g_prime<Sis>(desc, f.sis.params(), rng));
  } else {
    auto group_rng = rng.derive("dl-group");
    emit(g_prime<Dl>(desc, dl_params(f.chameleon, group_rng), rng));
  }
  out << "wrote " << key.string() << " and " << pub.string() << "\n";
  return kOk;
}

struct SignFlags {
  std::string key, in, out, seed;
};

int cmd_sign(const SignFlags& f, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
  KeyLock lock(f.key);
  auto key_bytes = read_object(f.key);
  auto message = read_file(f.in);
  return with_chameleon_of(key_bytes, [&](auto tag) {
    using CH = decltype(tag);
    TransformedKeyPair<CH> kp;
    try {
      kp = parse_key_pair<CH>(key_bytes);
    } catch (const Error& e) {
      throw Exit(kMalformed, std::string("bad key file: ") + e.what());
    }
    auto rng = seeded_rng(f.seed, err, "sign");
    auto oracle = production_oracle<CH>(kp.ch_inst, g);
    TransformedSignature<CH> sig;
    try {
      sig = s_prime<CH>(kp, message, oracle, rng);
    } catch (const CapacityError& e) {
      throw Exit(kExhausted, e.what());
    }
    // The advanced state reaches disk before the signature is released.
    write_durable(f.key, render(serialize_key_pair(kp), g.armor));
    write_file(f.out, render(serialize_signature(public_part(kp), sig), g.armor));
    out << "signed " << f.in << " -> " << f.out << "\n";
    return kOk;
  });
}

struct VerifyFlags {
  std::string pub, in, sig;
};

int cmd_verify(const VerifyFlags& f, const GlobalFlags& g, std::ostream& out, std::ostream&) {
  auto pub_bytes = read_object(f.pub);
  auto message = read_file(f.in);
  auto sig_bytes = read_object(f.sig);
  return with_chameleon_of(pub_bytes, [&](auto tag) {
    using CH = decltype(tag);
    TransformedPublicKey<CH> pk;
    TransformedSignature<CH> sig;
    try {
      pk = parse_public_key<CH>(pub_bytes);
    } catch (const Error& e) {
      throw Exit(kMalformed, std::string("bad public key: ") + e.what());
    }
    try {
      sig = parse_signature<CH>(pk, sig_bytes);
    } catch (const FormatError& e) {
      throw Exit(kMalformed, std::string("bad signature: ") + e.what());
    } catch (const Error& e) {
      out << "reject: " << e.what() << "\n";
      return static_cast<int>(kReject);
    }
    auto oracle = production_oracle<CH>(pk.ch_inst, g);
    bool ok = accepted(v_prime<CH>(pk, message, sig, oracle));
    out << (ok ? "accept" : "reject") << "\n";
    return static_cast<int>(ok ? kOk : kReject);
  });
}

// ---------------------------------------------------------------------------
// bench

struct BenchFlags {
  std::string chameleon = "sis";
  std::string scheme = "lamport-merkle:1";
  std::string seed = "0";
  SisFlags sis;
};

json delta(std::size_t base_bytes, std::size_t bytes, std::size_t elements, std::size_t predicted) {
  return {{"base_bytes", base_bytes},
          {"bytes", bytes},
          {"delta_bytes", bytes - base_bytes},
          {"elements", elements},
          {"predicted_elements", predicted},
          {"match", elements == predicted}};
}

/// Measured size deltas of pk', sk' and sigma' over the base scheme.
template <ChameleonHash CH>
struct Measured {
  TransformedKeyPair<CH> kp;
  std::size_t pk_base, pk, sk_base, sk, sig_base, sig;
  Bytes instance, trapdoor, randomness;
};

template <ChameleonHash CH>
Measured<CH> measure(const SchemeDescriptor& desc, const typename CH::Params& params, Rng& rng) {
  auto kp = g_prime<CH>(desc, params, rng);
  auto pk = public_part(kp);
  auto oracle = RandomOracle::production(CH::message_range(kp.ch_inst));
  auto sig = s_prime<CH>(kp, to_bytes("overhead probe"), oracle, rng);
  auto sig_bytes = serialize_signature(pk, sig);
  return {kp,
          serialize_base_public_key(kp.base).size(),
          serialize_public_key(pk).size(),
          serialize_base_secret_key(kp.base).size(),
          serialize_secret_key(kp).size(),
          sig.base_sig.bytes.size(),
          sig_bytes.size(),
          CH::serialize_instance(kp.ch_inst),
          CH::serialize_trapdoor(kp.ch_inst, kp.ch_td),
          decode_record(sig_bytes).fields[1]};
}

std::size_t count_entries(std::size_t payload_bytes, std::size_t width) {
  if (width == 0 || payload_bytes % width != 0) throw Error("payload is not a whole number of Z_q entries");
  return payload_bytes / width;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  auto desc = parse_scheme(f.scheme, 1);
  auto rng = seeded_rng(f.seed, err, "bench");
  json report;
  bool ok = true;
  if (is_sis(f.chameleon)) {
    auto p = f.sis.params();
    auto m = measure<Sis>(desc, p, rng);
    const auto& inst = m.kp.ch_inst;
    const auto w = Sis::entry_bytes(inst);
    auto irec = decode_record(m.instance);
    auto trec = decode_record(m.trapdoor);
    const std::size_t pk_el = count_entries(irec.fields[1].size() + irec.fields[2].size(), w);
    const std::size_t sk_el = count_entries(trec.fields[0].size(), w);
    const std::size_t sig_el = count_entries(m.randomness.size(), w);
    report["chameleon"] = "sis";
    report["params"] = {{"n", p.n}, {"k", p.k}, {"m", p.m}, {"q", p.q}, {"base", p.base}, {"s", inst.params.s}};
    report["entry_bytes"] = w;
    report["delta_pk"] = delta(m.pk_base, m.pk, pk_el, p.n * (p.k + p.m));
    report["delta_sk"] = delta(m.sk_base, m.sk, sk_el, p.m * p.m);
    report["delta_sig"] = delta(m.sig_base, m.sig, sig_el, p.m);
  } else {
    auto group_rng = rng.derive("dl-group");
    auto m = measure<Dl>(desc, dl_params(f.chameleon, group_rng), rng);
    const auto& grp = m.kp.ch_inst.group;
    auto irec = decode_record(m.instance);
    auto trec = decode_record(m.trapdoor);
    // Integers: p, q, g, y in the instance; x in the trapdoor; r in the signature.
    const std::size_t r_el = count_entries(m.randomness.size(), Dl::randomness_width(m.kp.ch_inst));
    report["chameleon"] = "dl";
    report["params"] = {{"modulus_bits", bit_length(grp.p)}, {"order_bits", bit_length(grp.q)}};
    report["delta_pk"] = delta(m.pk_base, m.pk, irec.fields.size(), 4);
    report["delta_sk"] = delta(m.sk_base, m.sk, trec.fields.size(), 1);
    report["delta_sig"] = delta(m.sig_base, m.sig, r_el, 1);
  }
  for (const char* k : {"delta_pk", "delta_sk", "delta_sig"}) ok = ok && report[k]["match"].get<bool>();
  report["match"] = ok;
  out << report.dump(2) << "\n";
  return ok ? kOk : kReject;
}

// ---------------------------------------------------------------------------
// game

struct GameFlags {
  std::string kind = "su";
  std::string variant = "hyd0";
  std::string adversary = "mauling";
  std::size_t seeds = 100;
  std::string seed;
  std::string report = "json";
  std::string target = "transformed";
  std::string scheme = "malleable";
  std::string chameleon = "dl";
  std::size_t budget = 1;
  bool presign = false;
  SisFlags sis;
};

GameConfig game_config(const GameFlags& f) {
  GameConfig c;
  if (f.kind == "su") {
    c.kind = GameKind::su;
  } else if (f.kind == "eu") {
    c.kind = GameKind::eu;
  } else {
    throw Exit(kMalformed, "--kind must be eu or su");
  }
  if (f.variant == "hyd0") {
    c.variant = Variant::hyd0;
  } else if (f.variant == "hyd1") {
    c.variant = Variant::hyd1;
  } else if (f.variant == "hyd2") {
    c.variant = Variant::hyd2;
  } else {
    throw Exit(kMalformed, "--variant must be hyd0, hyd1 or hyd2");
  }
  if (f.presign && c.variant == Variant::hyd2) throw Exit(kMalformed, "--presign is not available with hyd2");
  c.budget = f.budget;
  c.presign_commitments = f.presign;
  return c;
}

/// Smallest tree that covers the budget plus one spare leaf.
unsigned tree_height_for(std::size_t budget) {
  unsigned h = 1;
  while ((std::size_t{1} << h) < budget + 1) ++h;
  return h;
}

std::unique_ptr<Adversary> byte_adversary(const std::string& name, std::uint64_t seed, std::size_t budget,
                                          MaulingAdversary::Target target) {
  if (name == "replay") return std::make_unique<ReplayAdversary>();
  if (name == "garbage") return std::make_unique<GarbageAdversary>(seed);
  if (name == "mauling") return std::make_unique<MaulingAdversary>(target);
  if (name == "walk") return std::make_unique<RandomWalkAdversary>(seed, budget);
  return nullptr;
}

template <ChameleonHash CH>
AdversaryFactory<CH> transformed_factory(const std::string& name, const GameSetup<CH>& setup) {
  if (byte_adversary(name, 0, 1, MaulingAdversary::Target::transformed)) {
    return [name, budget = setup.config.budget](const GameContext<CH>& c) {
      return byte_adversary(name, c.seed, budget, MaulingAdversary::Target::transformed);
    };
  }
  if (name == "guess") return [](const GameContext<CH>& c) { return std::make_unique<RandomnessGuessAdversary<CH>>(c.seed); };
  if (name == "reuse") return [](const GameContext<CH>&) { return std::make_unique<ReuseAdversary<CH>>(); };
  if (name == "trapdoor") {
    return [](const GameContext<CH>& c) { return std::make_unique<TrapdoorForger<CH>>(c.keys.ch_td, c.seed); };
  }
  if (name == "foreign-key") {
    return [](const GameContext<CH>& c) { return std::make_unique<ForeignKeyForger<CH>>(c.keys, c.seed); };
  }
  if (name == "probing") {
    return [setup](const GameContext<CH>& c) {
      return std::make_unique<PrescientProbingAdversary>(to_bytes("probe"),
                                                         predict_first_base_signature(setup, c.keys, c.seed));
    };
  }
  throw Exit(kMalformed, "unknown adversary " + name);
}

json stats_json(const GameStats& s) {
  return {{"runs", s.runs},
          {"wins", s.wins},
          {"win_rate", s.win_rate()},
          {"case1_count", s.case1},
          {"case2_count", s.case2},
          {"oracle_collisions", s.oracle_collisions},
          {"extractor_failures", s.extractor_failures}};
}

int cmd_game(const GameFlags& f, std::ostream& out, std::ostream& err) {
  auto config = game_config(f);
  auto desc = parse_scheme(f.scheme, tree_height_for(f.budget));
  const auto first = seed_u64(f.seed, err);
  GameStats stats;
  if (f.target == "raw") {
    if (!byte_adversary(f.adversary, 0, 1, MaulingAdversary::Target::raw)) {
      throw Exit(kMalformed, "adversary " + f.adversary + " needs --target transformed");
    }
    BaseSetup setup{config, desc};
    stats = run_many_base(
        setup,
        [&](std::uint64_t seed) { return byte_adversary(f.adversary, seed, f.budget, MaulingAdversary::Target::raw); },
        first, f.seeds);
  } else if (f.target == "transformed") {
    if (is_sis(f.chameleon)) {
      GameSetup<Sis> setup{config, desc, f.sis.params()};
      stats = run_many<Sis>(setup, transformed_factory<Sis>(f.adversary, setup), first, f.seeds);
    } else {
      auto group_rng = Rng::from_u64(first).derive("dl-group");
      GameSetup<Dl> setup{config, desc, dl_params(f.chameleon, group_rng)};
      stats = run_many<Dl>(setup, transformed_factory<Dl>(f.adversary, setup), first, f.seeds);
    }
  } else {
    throw Exit(kMalformed, "--target must be raw or transformed");
  }
  json report = stats_json(stats);
  report["kind"] = f.kind;
  report["variant"] = f.variant;
  report["adversary"] = f.adversary;
  report["target"] = f.target;
  report["first_seed"] = first;
  if (f.report == "json") {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& [k, v] : report.items()) out << k << ": " << v.dump() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strongly unforgeable signatures from EU signatures, a chameleon hash and a random oracle"};
  app.name("too-sign");
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--ro-tag", g.ro_tag, "domain-separation tag of the random oracle")->capture_default_str();
  app.add_flag("--armor", g.armor, "write keys and signatures as hex text");

  KeygenFlags kf;
  auto* keygen = app.add_subcommand("keygen", "generate a transformed key pair");
  keygen->add_option("--scheme", kf.scheme, "lamport-merkle[:H] or malleable[:H]")->capture_default_str();
  keygen->add_option("--chameleon", kf.chameleon, "dl, dl:BITS or sis")->capture_default_str();
  keygen->add_option("--out", kf.out, "output prefix; writes PREFIX.tookey and PREFIX.toopub")->required();
  keygen->add_option("--seed", kf.seed, "decimal integer or 64 hex digits");
  kf.sis.add_to(keygen);

  SignFlags sf;
  auto* sign = app.add_subcommand("sign", "sign a file, advancing the key state first");
  sign->add_option("--key", sf.key, "key file (.tookey)")->required();
  sign->add_option("--in", sf.in, "message file")->required();
  sign->add_option("--out", sf.out, "signature output file")->required();
  sign->add_option("--seed", sf.seed, "signing randomness seed");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "verify a signature; exit 0 accept, 1 reject, 2 malformed");
  verify->add_option("--pub", vf.pub, "public key file (.toopub)")->required();
  verify->add_option("--in", vf.in, "message file")->required();
  verify->add_option("--sig", vf.sig, "signature file")->required();

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "measure key and signature overhead against the size formulas");
  bench->add_option("--chameleon", bf.chameleon, "sis, dl or dl:BITS")->capture_default_str();
  bench->add_option("--scheme", bf.scheme, "base scheme")->capture_default_str();
  bench->add_option("--seed", bf.seed, "key generation seed")->capture_default_str();
  bf.sis.add_to(bench);

  GameFlags gf;
  auto* game = app.add_subcommand("game", "run seeded unforgeability games and report statistics");
  game->add_option("--kind", gf.kind, "eu or su")->capture_default_str();
  game->add_option("--variant", gf.variant, "hyd0, hyd1 or hyd2")->capture_default_str();
  game->add_option("--adversary", gf.adversary,
                   "replay, garbage, mauling, walk, guess, reuse, probing, trapdoor or foreign-key")
      ->capture_default_str();
  game->add_option("--seeds", gf.seeds, "number of runs")->capture_default_str();
  game->add_option("--seed", gf.seed, "first run seed (decimal)");
  game->add_option("--report", gf.report, "json or text")->capture_default_str();
  game->add_option("--target", gf.target, "raw or transformed")->capture_default_str();
  game->add_option("--scheme", gf.scheme, "base scheme")->capture_default_str();
  game->add_option("--chameleon", gf.chameleon, "dl, dl:BITS or sis")->capture_default_str();
  game->add_option("--budget", gf.budget, "signing queries allowed")->capture_default_str();
  game->add_flag("--presign", gf.presign, "base-sign all commitments before the adversary starts");
  gf.sis.add_to(game);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*keygen) return cmd_keygen(kf, g, out, err);
    if (*sign) return cmd_sign(sf, g, out, err);
    if (*verify) return cmd_verify(vf, g, out, err);
    if (*bench) return cmd_bench(bf, out, err);
    if (*game) return cmd_game(gf, out, err);
  } catch (const Exit& e) {
    err << "too-sign: " << e.what() << "\n";
    return e.code;
  } catch (const Error& e) {
    err << "too-sign: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace too::cli
