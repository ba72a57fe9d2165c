#pragma once

// SIS chameleon hash with a gadget trapdoor:
//   h(m, r) = A m + B r mod q,  m in {0,1}^k,  r in Z^m short,
//   B = [Bbar | G - Bbar R],  G = I_n (x) (1, b, ..., b^(l-1)),  R in {-1,+1}^(mbar x n l).
// Inversion samples a spherical perturbation p, then a gadget preimage z of
// the remaining syndrome, and returns p + [R z ; z].

#include <bit>
#include <cmath>
#include <cstring>
#include <memory>

#include "too/chameleon/common.hpp"
#include "too/encoding.hpp"
#include "too/gaussian.hpp"

namespace too::chameleon {

using IntVec = std::vector<std::int64_t>;

/// Row-major matrix with entries in [0, q).
struct ZqMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;

  ZqMatrix() = default;
  ZqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::uint64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const ZqMatrix&, const ZqMatrix&) = default;
};

struct SisParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t q = 0;
  std::uint64_t base = 2;
  /// Gaussian width; 0 selects the smallest width the gadget sampler supports.
  double s = 0.0;

  friend bool operator==(const SisParams&, const SisParams&) = default;
};

namespace sis_detail {

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;
/// Smoothing factor eta for epsilon = 2^-40.
inline const double kEta = std::sqrt(std::log(2.0 * (1.0 + std::ldexp(1.0, 40))) / std::numbers::pi);
inline constexpr int kMaxInversionAttempts = 64;

inline std::size_t digits(std::uint64_t q, std::uint64_t base) {
  std::size_t l = 0;
  std::uint64_t pw = 1;
  while (pw < q) {
    if (pw > q / base) {  // pw * base >= q without overflow
      ++l;
      break;
    }
    pw *= base;
    ++l;
  }
  return std::max<std::size_t>(l, 1);
}

/// Basis (as columns) of the lattice {z : <g, z> = 0 mod q} for g = (1, b, ..., b^(l-1)).
inline std::vector<IntVec> gadget_basis(std::uint64_t q, std::uint64_t base, std::size_t l) {
  std::vector<IntVec> cols(l, IntVec(l, 0));
  for (std::size_t i = 0; i + 1 < l; ++i) {
    cols[i][i] = static_cast<std::int64_t>(base);
    cols[i][i + 1] = -1;
  }
  std::uint64_t rest = q;
  for (std::size_t i = 0; i < l; ++i) {
    cols[l - 1][i] = static_cast<std::int64_t>(rest % base);
    rest /= base;
  }
  // q = b^l exactly: the top digit overflows into position l
  if (rest != 0) {
    std::fill(cols[l - 1].begin(), cols[l - 1].end(), 0);
    cols[l - 1][l - 1] = static_cast<std::int64_t>(base);
  }
  return cols;
}

inline std::uint64_t reduce(std::int64_t v, std::uint64_t q) {
  auto r = v % static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

inline std::size_t entry_bytes(std::uint64_t q) {
  const auto bits = static_cast<std::size_t>(std::bit_width(q - 1));
  return std::max<std::size_t>(1, (bits + 7) / 8);
}

inline void put_entry(Bytes& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_entry(ByteView in, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 8) | in[i];
  return v;
}

inline Bytes encode_entries(std::span<const std::uint64_t> entries, std::uint64_t q) {
  const auto w = entry_bytes(q);
  Bytes out;
  out.reserve(entries.size() * w);
  for (auto e : entries) put_entry(out, e, w);
  return out;
}

inline std::vector<std::uint64_t> decode_entries(ByteView in, std::size_t count, std::uint64_t q) {
  const auto w = entry_bytes(q);
  if (in.size() != count * w) throw FormatError("matrix field has wrong length");
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = get_entry(in.subspan(i * w, w), w);
    if (out[i] >= q) throw FormatError("matrix entry not reduced mod q");
  }
  return out;
}

}  // namespace sis_detail

class Sis {
 public:
  static constexpr const char* kName = "sis";

  using Params = SisParams;

  struct Instance {
    SisParams params;  // s resolved
    std::size_t ell = 0;
    std::size_t mbar = 0;
    ZqMatrix A;  // n x k
    ZqMatrix B;  // n x m
    std::shared_ptr<const gaussian::KleinSampler> gadget;

    double norm_bound() const { return params.s * std::sqrt(static_cast<double>(params.m)); }
    /// Width of the spherical perturbation.
    double perturbation_width() const { return params.s / 2.0; }
    /// Width of the gadget preimage sampler.
    double gadget_width() const {
      return params.s / (2.0 * (std::sqrt(static_cast<double>(mbar)) +
                                std::sqrt(static_cast<double>(params.n * ell)) + 1.0));
    }

    friend bool operator==(const Instance& a, const Instance& b) {
      return a.params == b.params && a.A == b.A && a.B == b.B;
    }
  };

  struct Trapdoor {
    std::vector<std::int8_t> R;  // mbar x (n * ell), entries +-1, row-major

    friend bool operator==(const Trapdoor&, const Trapdoor&) = default;
  };

  using Message = std::vector<std::uint8_t>;  // k bits, each 0 or 1
  using Randomness = IntVec;                  // length m
  using Range = std::vector<std::uint64_t>;   // length n, entries mod q

  /// Checks dimensions and fills ell, mbar, s and the gadget sampler.
  static Instance layout(const SisParams& p) {
    if (p.n == 0 || p.k == 0) throw DimensionError("n and k must be positive");
    if (p.q < 3 || p.q >= sis_detail::kMaxModulus) throw DimensionError("q must lie in [3, 2^31)");
    if (p.base < 2) throw DimensionError("gadget base must be at least 2");
    Instance inst;
    inst.ell = sis_detail::digits(p.q, p.base);
    if (p.m < p.n * inst.ell + p.n) {
      throw DimensionError("m = " + std::to_string(p.m) + " is below n*ceil(log_b q) + n = " +
                           std::to_string(p.n * inst.ell + p.n));
    }
    inst.mbar = p.m - p.n * inst.ell;
    inst.gadget = std::make_shared<const gaussian::KleinSampler>(sis_detail::gadget_basis(p.q, p.base, inst.ell));
    inst.params = p;
    const double min_s = minimum_width(inst);
    if (p.s == 0.0) {
      inst.params.s = min_s;
    } else if (p.s < min_s) {
      throw DomainError("Gaussian width s below the gadget sampler minimum " + std::to_string(min_s));
    }
    return inst;
  }

  /// Smallest s for which the gadget width reaches eta times the largest Gram-Schmidt norm.
  static double minimum_width(const Instance& inst) {
    const double sigma_g = sis_detail::kEta * inst.gadget->max_gso_norm();
    return 2.0 * sigma_g *
           (std::sqrt(static_cast<double>(inst.mbar)) + std::sqrt(static_cast<double>(inst.params.n * inst.ell)) +
            1.0);
  }

  static ZqMatrix gadget_matrix(const Instance& inst) {
    const auto& p = inst.params;
    ZqMatrix G(p.n, p.n * inst.ell);
    for (std::size_t i = 0; i < p.n; ++i) {
      std::uint64_t pw = 1;
      for (std::size_t j = 0; j < inst.ell; ++j) {
        G.at(i, i * inst.ell + j) = pw % p.q;
        pw = (pw * p.base) % p.q;
      }
    }
    return G;
  }

  static Keys<Sis> generate(const Params& params, Rng& rng) {
    Instance inst = layout(params);
    const auto& p = inst.params;
    const std::size_t w = p.n * inst.ell;
    inst.A = ZqMatrix(p.n, p.k);
    for (auto& e : inst.A.data) e = rng.uniform(p.q);
    ZqMatrix bbar(p.n, inst.mbar);
    for (auto& e : bbar.data) e = rng.uniform(p.q);
    Trapdoor td;
    td.R.resize(inst.mbar * w);
    for (auto& e : td.R) e = rng.uniform(2) ? 1 : -1;

    const auto G = gadget_matrix(inst);
    inst.B = ZqMatrix(p.n, p.m);
    for (std::size_t i = 0; i < p.n; ++i) {
      for (std::size_t j = 0; j < inst.mbar; ++j) inst.B.at(i, j) = bbar.at(i, j);
      for (std::size_t j = 0; j < w; ++j) {
        std::int64_t acc = static_cast<std::int64_t>(G.at(i, j));
        for (std::size_t t = 0; t < inst.mbar; ++t) {
          acc -= static_cast<std::int64_t>(bbar.at(i, t)) * td.R[t * w + j];
          acc %= static_cast<std::int64_t>(p.q);
        }
        inst.B.at(i, inst.mbar + j) = sis_detail::reduce(acc, p.q);
      }
    }
    return {std::move(inst), std::move(td)};
  }

  /// B * [R ; I] = G entry-wise mod q.
  static bool check_trapdoor(const Instance& inst, const Trapdoor& td) {
    const auto& p = inst.params;
    const std::size_t w = p.n * inst.ell;
    if (td.R.size() != inst.mbar * w) return false;
    const auto G = gadget_matrix(inst);
    for (std::size_t i = 0; i < p.n; ++i) {
      for (std::size_t j = 0; j < w; ++j) {
        std::int64_t acc = static_cast<std::int64_t>(inst.B.at(i, inst.mbar + j));
        for (std::size_t t = 0; t < inst.mbar; ++t) {
          acc += static_cast<std::int64_t>(inst.B.at(i, t)) * td.R[t * w + j];
          acc %= static_cast<std::int64_t>(p.q);
        }
        if (sis_detail::reduce(acc, p.q) != G.at(i, j)) return false;
      }
    }
    return true;
  }

  static double norm(const Randomness& r) { return gaussian::norm(r); }

  /// A m + B r mod q.
  static Range hash(const Instance& inst, const Message& msg, const Randomness& r) {
    check_message(inst, msg);
    check_randomness(inst, r);
    return syndrome(inst, IntVec(msg.begin(), msg.end()), r);
  }

  /// A m + B r mod q without the norm check; used on collision differences.
  static Range syndrome(const Instance& inst, std::span<const std::int64_t> mcoef, std::span<const std::int64_t> r) {
    const auto& p = inst.params;
    const auto q = static_cast<std::int64_t>(p.q);
    Range out(p.n, 0);
    for (std::size_t i = 0; i < p.n; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < p.k; ++j) {
        if (mcoef[j] != 0) acc = (acc + static_cast<std::int64_t>(inst.A.at(i, j)) * (mcoef[j] % q)) % q;
      }
      for (std::size_t j = 0; j < p.m; ++j) {
        if (r[j] != 0) acc = (acc + static_cast<std::int64_t>(inst.B.at(i, j)) * (r[j] % q)) % q;
      }
      out[i] = sis_detail::reduce(acc, p.q);
    }
    return out;
  }

  static Randomness invert(const Instance& inst, const Trapdoor& td, const Message& msg,
                           const RangeSample<Sis>& target, Rng& rng) {
    check_message(inst, msg);
    const auto& p = inst.params;
    if (target.element.size() != p.n) throw DomainError("target has wrong dimension");
    if (td.R.size() != inst.mbar * p.n * inst.ell) throw TrapdoorError("trapdoor has wrong shape");
    const auto am = syndrome(inst, IntVec(msg.begin(), msg.end()), IntVec(p.m, 0));
    std::vector<std::uint64_t> v(p.n);
    for (std::size_t i = 0; i < p.n; ++i) v[i] = (target.element[i] + p.q - am[i]) % p.q;

    const std::size_t w = p.n * inst.ell;
    for (int attempt = 0; attempt < sis_detail::kMaxInversionAttempts; ++attempt) {
      IntVec x(p.m);
      for (auto& e : x) e = gaussian::sample_z(rng, inst.perturbation_width());
      const auto bp = syndrome(inst, IntVec(p.k, 0), x);
      IntVec z;
      z.reserve(w);
      for (std::size_t i = 0; i < p.n; ++i) {
        auto block = gadget_preimage(inst, (v[i] + p.q - bp[i]) % p.q, rng);
        z.insert(z.end(), block.begin(), block.end());
      }
      for (std::size_t t = 0; t < inst.mbar; ++t) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < w; ++j) acc += td.R[t * w + j] * z[j];
        x[t] += acc;
      }
      for (std::size_t j = 0; j < w; ++j) x[inst.mbar + j] += z[j];
      if (norm(x) <= inst.norm_bound()) return x;
    }
    throw SamplingError("SIS preimage sampler exceeded its rejection budget");
  }

  /// z in Z^ell with <(1, b, ..., b^(l-1)), z> = u mod q, Gaussian of width gadget_width().
  static IntVec gadget_preimage(const Instance& inst, std::uint64_t u, Rng& rng) {
    const auto& p = inst.params;
    IntVec t(inst.ell);
    std::vector<double> center(inst.ell);
    for (std::size_t i = 0; i < inst.ell; ++i) {
      t[i] = static_cast<std::int64_t>(u % p.base);
      center[i] = static_cast<double>(t[i]);
      u /= p.base;
    }
    auto lattice_vec = inst.gadget->sample(rng, inst.gadget_width(), center);
    for (std::size_t i = 0; i < inst.ell; ++i) t[i] -= lattice_vec[i];
    return t;
  }

  /// D_{Z^m, s} conditioned on the norm bound.
  static Randomness sample_randomness(const Instance& inst, Rng& rng) {
    for (int attempt = 0; attempt < sis_detail::kMaxInversionAttempts; ++attempt) {
      IntVec r(inst.params.m);
      for (auto& e : r) e = gaussian::sample_z(rng, inst.params.s);
      if (norm(r) <= inst.norm_bound()) return r;
    }
    throw SamplingError("randomness sampler exceeded its rejection budget");
  }

  static Message sample_message(const Instance& inst, Rng& rng) {
    Message msg(inst.params.k);
    auto raw = rng.bytes((inst.params.k + 7) / 8);
    for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = (raw[i / 8] >> (7 - i % 8)) & 1;
    return msg;
  }

  static MessageRange message_range(const Instance& inst) { return MessageRange::bit_strings(inst.params.k); }

  /// Bit i of the message is bit (k-1-i) of v.
  static Message message_from_integer(const Instance& inst, const BigInt& v) {
    const auto k = inst.params.k;
    if (v < 0 || bit_length(v) > k) throw DomainError("integer outside message space");
    Message msg(k);
    for (std::size_t i = 0; i < k; ++i) msg[i] = mpz_tstbit(v.get_mpz_t(), k - 1 - i) ? 1 : 0;
    return msg;
  }

  static BigInt message_to_integer(const Instance& inst, const Message& msg) {
    check_message(inst, msg);
    BigInt v = 0;
    for (auto b : msg) v = 2 * v + b;
    return v;
  }

  static Bytes serialize_instance(const Instance& inst) {
    const auto& p = inst.params;
    Bytes hdr;
    append_u32_be(hdr, static_cast<std::uint32_t>(p.n));
    append_u32_be(hdr, static_cast<std::uint32_t>(p.k));
    append_u32_be(hdr, static_cast<std::uint32_t>(p.m));
    append_u64_be(hdr, p.q);
    append_u64_be(hdr, p.base);
    append_u64_be(hdr, std::bit_cast<std::uint64_t>(p.s));
    return encode_record(tag(Tag::sis_instance), {hdr, sis_detail::encode_entries(inst.A.data, p.q),
                                                  sis_detail::encode_entries(inst.B.data, p.q)});
  }

  static Instance parse_instance(ByteView in) {
    auto rec = decode_record(in, tag(Tag::sis_instance), 3);
    const auto& hdr = rec.fields[0];
    if (hdr.size() != 36) throw FormatError("bad SIS parameter header");
    ByteView h(hdr);
    SisParams p;
    p.n = read_u32_be(h.subspan(0, 4));
    p.k = read_u32_be(h.subspan(4, 4));
    p.m = read_u32_be(h.subspan(8, 4));
    p.q = read_u64_be(h.subspan(12, 8));
    p.base = read_u64_be(h.subspan(20, 8));
    p.s = std::bit_cast<double>(read_u64_be(h.subspan(28, 8)));
    if (!(p.s > 0.0) || !std::isfinite(p.s)) throw FormatError("bad Gaussian width");
    if (p.n > 4096 || p.k > 65536 || p.m > 65536) throw FormatError("SIS dimensions too large");
    Instance inst;
    try {
      inst = layout(p);
    } catch (const Error& e) {
      throw FormatError(std::string("invalid SIS parameters: ") + e.what());
    }
    inst.A = ZqMatrix(p.n, p.k);
    inst.A.data = sis_detail::decode_entries(rec.fields[1], p.n * p.k, p.q);
    inst.B = ZqMatrix(p.n, p.m);
    inst.B.data = sis_detail::decode_entries(rec.fields[2], p.n * p.m, p.q);
    return inst;
  }

  /// The trapdoor is stored as the m x m transform T = [[I, R], [0, I]] with B T = [Bbar | G].
  static Bytes serialize_trapdoor(const Instance& inst, const Trapdoor& td) {
    const auto& p = inst.params;
    const std::size_t w = p.n * inst.ell;
    std::vector<std::uint64_t> t(p.m * p.m, 0);
    for (std::size_t i = 0; i < p.m; ++i) t[i * p.m + i] = 1;
    for (std::size_t r = 0; r < inst.mbar; ++r) {
      for (std::size_t c = 0; c < w; ++c) t[r * p.m + inst.mbar + c] = sis_detail::reduce(td.R[r * w + c], p.q);
    }
    return encode_record(tag(Tag::sis_trapdoor), {sis_detail::encode_entries(t, p.q)});
  }

  static Trapdoor parse_trapdoor(const Instance& inst, ByteView in) {
    const auto& p = inst.params;
    const std::size_t w = p.n * inst.ell;
    auto rec = decode_record(in, tag(Tag::sis_trapdoor), 1);
    auto t = sis_detail::decode_entries(rec.fields[0], p.m * p.m, p.q);
    Trapdoor td;
    td.R.resize(inst.mbar * w);
    for (std::size_t r = 0; r < p.m; ++r) {
      for (std::size_t c = 0; c < p.m; ++c) {
        const auto e = t[r * p.m + c];
        if (r < inst.mbar && c >= inst.mbar) {
          if (e == 1) {
            td.R[r * w + c - inst.mbar] = 1;
          } else if (e == p.q - 1) {
            td.R[r * w + c - inst.mbar] = -1;
          } else {
            throw FormatError("trapdoor entry is not +-1");
          }
        } else if (e != (r == c ? 1u : 0u)) {
          throw FormatError("trapdoor transform has wrong identity blocks");
        }
      }
    }
    if (!check_trapdoor(inst, td)) throw FormatError("trapdoor does not match instance");
    return td;
  }

  /// m entries mod q; decoding returns the centered representatives.
  static Bytes encode_randomness(const Instance& inst, const Randomness& r) {
    check_randomness(inst, r);
    std::vector<std::uint64_t> e(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) e[i] = sis_detail::reduce(r[i], inst.params.q);
    return sis_detail::encode_entries(e, inst.params.q);
  }

  static Randomness decode_randomness(const Instance& inst, ByteView in) {
    const auto q = inst.params.q;
    auto e = sis_detail::decode_entries(in, inst.params.m, q);
    Randomness r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      r[i] = e[i] > q / 2 ? static_cast<std::int64_t>(e[i]) - static_cast<std::int64_t>(q)
                          : static_cast<std::int64_t>(e[i]);
    }
    if (norm(r) > inst.norm_bound()) throw DomainError("randomness exceeds norm bound");
    return r;
  }

  static Bytes encode_range(const Instance& inst, const Range& y) {
    if (y.size() != inst.params.n) throw DomainError("range element has wrong dimension");
    return encode_record(tag(Tag::sis_range), {sis_detail::encode_entries(y, inst.params.q)});
  }

  static std::size_t entry_bytes(const Instance& inst) { return sis_detail::entry_bytes(inst.params.q); }

 private:
  static void check_message(const Instance& inst, const Message& msg) {
    if (msg.size() != inst.params.k) throw DomainError("message has wrong length");
    for (auto b : msg) {
      if (b > 1) throw DomainError("message entries must be bits");
    }
  }

  static void check_randomness(const Instance& inst, const Randomness& r) {
    if (r.size() != inst.params.m) throw DomainError("randomness has wrong length");
    if (norm(r) > inst.norm_bound()) throw DomainError("randomness exceeds norm bound");
  }
};

struct ShortVector {
  IntVec z;        // (m - m' || r - r')
  double norm = 0;
  double bound = 0;  // sqrt(k) + 2 s sqrt(m)
};

/// Maps a valid collision to a nonzero z with [A | B] z = 0 mod q.
inline ShortVector sis_collision_to_short_vector(const Sis::Instance& inst, const Preimage<Sis>& a,
                                                 const Preimage<Sis>& b) {
  const auto& p = inst.params;
  if (a == b) throw DegenerateCollision("pairs are equal");
  if (check_collision<Sis>(inst, a, b) != CollisionStatus::valid) throw PreconditionError("not a valid collision");
  ShortVector out;
  out.z.reserve(p.k + p.m);
  for (std::size_t i = 0; i < p.k; ++i) {
    out.z.push_back(static_cast<std::int64_t>(a.message[i]) - static_cast<std::int64_t>(b.message[i]));
  }
  for (std::size_t i = 0; i < p.m; ++i) out.z.push_back(a.randomness[i] - b.randomness[i]);
  out.norm = gaussian::norm(out.z);
  out.bound = std::sqrt(static_cast<double>(p.k)) + 2.0 * inst.norm_bound();
  auto lhs = Sis::syndrome(inst, std::span(out.z).first(p.k), std::span(out.z).subspan(p.k));
  for (auto e : lhs) {
    if (e != 0) throw ExtractionError("[A|B] z is not zero mod q");
  }
  return out;
}

}  // namespace too::chameleon
