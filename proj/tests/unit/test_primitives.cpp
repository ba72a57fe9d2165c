#include <gtest/gtest.h>

#include <set>

#include "too/bigint.hpp"
#include "too/encoding.hpp"
#include "too/hash.hpp"
#include "too/rng.hpp"
#include "too/stats.hpp"

namespace too {
namespace {

TEST(Hex, RoundTripAndWhitespace) {
  Bytes b{0x00, 0x7f, 0x80, 0xff};
  EXPECT_EQ(to_hex(b), "007f80ff");
  EXPECT_EQ(from_hex("00 7f\n80FF\n"), b);
  EXPECT_THROW(from_hex("abc"), FormatError);
  EXPECT_THROW(from_hex("zz"), FormatError);
}

TEST(Sha256, KnownAnswers) {
  EXPECT_EQ(to_hex(sha256(to_bytes("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(to_hex(sha256(Bytes{})), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  // Split input hashes like the concatenation.
  EXPECT_EQ(sha256({to_bytes("a"), to_bytes("bc")}), sha256(to_bytes("abc")));
  Sha256 h;
  h.update(to_bytes("ab")).update(to_bytes("c"));
  EXPECT_EQ(h.finish(), sha256(to_bytes("abc")));
}

TEST(Shake256, KnownAnswer) {
  EXPECT_EQ(to_hex(shake256({}, 32)), "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");
  // Longer outputs extend shorter ones.
  auto a = shake256({to_bytes("x")}, 16);
  auto b = shake256({to_bytes("x")}, 64);
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
}

TEST(Record, RoundTrip) {
  std::vector<Bytes> fields{{}, {1, 2, 3}, Bytes(300, 7)};
  auto enc = encode_record(0x42, fields);
  EXPECT_EQ(enc.size(), 4u + 1 + 3 * 4 + 303);
  auto rec = decode_record(enc, 0x42, 3);
  EXPECT_EQ(rec.tag, 0x42);
  EXPECT_EQ(rec.fields, fields);
}

TEST(Record, StrictDecoding) {
  auto enc = encode_record(1, {{9, 9}});
  EXPECT_THROW(decode_record(enc, 2), FormatError);
  EXPECT_THROW(decode_record(enc, 1, 2), FormatError);
  auto trailing = enc;
  trailing.push_back(0);
  EXPECT_THROW(decode_record(trailing), FormatError);
  for (std::size_t cut = 0; cut < enc.size(); ++cut) {
    Bytes part(enc.begin(), enc.begin() + static_cast<std::ptrdiff_t>(cut));
    if (cut == 5) continue;  // header alone is a valid empty record
    EXPECT_THROW(decode_record(part), FormatError) << "prefix of length " << cut;
  }
  auto bad_magic = enc;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_record(bad_magic), FormatError);
}

TEST(BigInt, FixedWidthEncoding) {
  EXPECT_EQ(to_hex(to_fixed_bytes(BigInt(0x1234), 4)), "00001234");
  EXPECT_EQ(from_bytes(Bytes{0x01, 0x00}), BigInt(256));
  EXPECT_THROW(to_fixed_bytes(BigInt(0x10000), 2), DomainError);
  EXPECT_EQ(bit_length(BigInt(255)), 8u);
  EXPECT_EQ(byte_length(BigInt(256)), 2u);
  EXPECT_EQ(invert(BigInt(3), BigInt(11)), BigInt(4));
  EXPECT_THROW(invert(BigInt(0), BigInt(11)), DomainError);
}

TEST(Rng, DeterministicAndDerivationIsPure) {
  auto a = Rng::from_u64(7);
  auto b = Rng::from_u64(7);
  EXPECT_EQ(a.bytes(100), b.bytes(100));
  auto before = a.derive("child").bytes(32);
  a.bytes(10);
  EXPECT_EQ(a.derive("child").bytes(32), before);
  EXPECT_NE(a.derive("child").bytes(32), a.derive("other").bytes(32));
  EXPECT_NE(a.derive(1).bytes(32), a.derive(2).bytes(32));
  EXPECT_NE(Rng::from_u64(7).bytes(32), Rng::from_u64(8).bytes(32));
}

TEST(Rng, FirstBlockMatchesDefinition) {
  auto rng = Rng::from_u64(1);
  Bytes ctr(8, 0);
  auto expect = sha256({to_bytes("TOO-RNG"), rng.seed(), ctr});
  auto got = rng.bytes(32);
  EXPECT_TRUE(std::equal(expect.begin(), expect.end(), got.begin()));
}

TEST(Rng, UniformPassesChiSquare) {
  auto rng = Rng::from_u64(99);
  std::vector<std::uint64_t> counts(13, 0);
  for (int i = 0; i < 130000; ++i) ++counts[rng.uniform(13)];
  EXPECT_GT(stats::uniformity(counts).p_value, 0.001);
  EXPECT_THROW(rng.uniform(0), DomainError);
}

TEST(Rng, UniformBelowBigBound) {
  auto rng = Rng::from_u64(3);
  std::vector<std::uint64_t> counts(11, 0);
  for (int i = 0; i < 55000; ++i) {
    auto v = uniform_below(rng, BigInt(11));
    ASSERT_TRUE(v >= 0 && v < 11);
    ++counts[v.get_ui()];
  }
  EXPECT_GT(stats::uniformity(counts).p_value, 0.001);
}

TEST(Stats, ChiSquareSurvivalKnownValues) {
  EXPECT_NEAR(stats::chi_square_sf(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(stats::chi_square_sf(18.307038053275146, 10), 0.05, 1e-9);
  EXPECT_DOUBLE_EQ(stats::chi_square_sf(0, 3), 1.0);
}

TEST(Stats, HomogeneityAndDistance) {
  std::map<int, std::uint64_t> a{{0, 500}, {1, 500}}, b{{0, 490}, {1, 510}};
  EXPECT_GT(stats::homogeneity(a, b).p_value, 0.5);
  std::map<int, std::uint64_t> c{{0, 900}, {1, 100}};
  EXPECT_LT(stats::homogeneity(a, c).p_value, 1e-6);
  std::vector<double> p{0.5, 0.5}, q{0.25, 0.75};
  EXPECT_DOUBLE_EQ(stats::statistical_distance(p, q), 0.25);
}

}  // namespace
}  // namespace too
