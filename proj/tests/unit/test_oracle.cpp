#include <gtest/gtest.h>

#include <set>

#include "too/oracle.hpp"
#include "too/stats.hpp"

namespace too {
namespace {

TEST(Frame, Layout) {
  auto f = frame(to_bytes("ab"), to_bytes("xyz"));
  EXPECT_EQ(to_hex(f), "00000002" "6162" "78797a");
  EXPECT_EQ(frame({}, {}), Bytes(4, 0));
}

TEST(Frame, InjectiveOnRandomPairs) {
  // Pairs share a pool of short strings so that concatenations often coincide.
  auto rng = Rng::from_u64(1);
  std::map<Bytes, std::pair<Bytes, Bytes>> seen;
  std::size_t concat_clashes = 0;
  std::set<Bytes> concats;
  for (int i = 0; i < 100000; ++i) {
    Bytes m = rng.bytes(rng.uniform(4));
    Bytes s = rng.bytes(rng.uniform(4));
    for (auto& b : m) b &= 0x01;
    for (auto& b : s) b &= 0x01;
    Bytes cat = m;
    append(cat, s);
    auto [it, inserted] = seen.emplace(frame(m, s), std::make_pair(m, s));
    if (!inserted) {
      ASSERT_EQ(it->second, std::make_pair(m, s)) << "frame collision";
    }
    if (!concats.insert(cat).second) ++concat_clashes;
  }
  // The unframed concatenation does collide on distinct pairs; the frame never does.
  EXPECT_GT(concat_clashes, 0u);
}

TEST(ProductionOracle, DeterministicTaggedAndInRange) {
  auto range = MessageRange::modular(11);
  auto a = RandomOracle::production(range);
  auto b = RandomOracle::production(range);
  auto other = RandomOracle::production(range, "another-tag");
  std::size_t differ = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = to_bytes("x" + std::to_string(i));
    auto v = a.eval(x);
    EXPECT_EQ(v, b.eval(x));
    EXPECT_TRUE(v >= 0 && v < 11);
    differ += v != other.eval(x);
  }
  EXPECT_GT(differ, 150u);
}

TEST(ProductionOracle, MatchesShakeDefinition) {
  auto o = RandomOracle::production(MessageRange::modular(11));
  EXPECT_EQ(o.output_bits(), 4u + 128u);
  auto input = to_bytes("hello");
  auto digest = shake256({to_bytes(kDefaultOracleTag), input}, 17);
  BigInt v = from_bytes(digest) >> 4;  // 136 bits, keep the first 132
  EXPECT_EQ(o.eval(input), mod(v, 11));

  auto bits = RandomOracle::production(MessageRange::bit_strings(12));
  EXPECT_EQ(bits.output_bits(), 12u);
  auto d2 = shake256({to_bytes(kDefaultOracleTag), input}, 2);
  EXPECT_EQ(bits.eval(input), from_bytes(d2) >> 4);
}

TEST(ProductionOracle, OutputsLookUniform) {
  auto o = RandomOracle::production(MessageRange::modular(11));
  std::vector<std::uint64_t> counts(11, 0);
  for (int i = 0; i < 22000; ++i) ++counts[o.eval(to_bytes(std::to_string(i))).get_ui()];
  EXPECT_GT(stats::uniformity(counts).p_value, 0.001);
}

TEST(ProductionOracle, ProgrammingIsUnsupported) {
  auto o = RandomOracle::production(MessageRange::modular(11));
  EXPECT_THROW(o.program(to_bytes("x"), 1), UnsupportedOperation);
  EXPECT_THROW(o.draw_fresh(), UnsupportedOperation);
  EXPECT_THROW((void)o.log_contains(to_bytes("x")), UnsupportedOperation);
}

TEST(ProgrammableOracle, LazyConsistentAndLogged) {
  Seed seed{};
  seed[0] = 9;
  auto o = RandomOracle::programmable(MessageRange::modular(11), seed);
  auto x = to_bytes("point");
  auto v = o.eval(x, Party::challenger);
  EXPECT_EQ(o.eval(x), v);
  EXPECT_TRUE(o.log_contains(x));
  EXPECT_TRUE(o.queried_by(x, Party::challenger));
  EXPECT_TRUE(o.queried_by(x, Party::adversary));
  EXPECT_FALSE(o.log_contains(to_bytes("other")));
  EXPECT_EQ(o.log().size(), 2u);
}

TEST(ProgrammableOracle, ProgramOverridesAndIsNotAQuery) {
  auto o = RandomOracle::programmable(MessageRange::modular(11), Seed{});
  auto x = to_bytes("p");
  o.program(x, 7);
  EXPECT_FALSE(o.log_contains(x));
  EXPECT_EQ(o.eval(x), BigInt(7));
  o.program(x, 3);
  EXPECT_EQ(o.eval(x), BigInt(3));
  EXPECT_THROW(o.program(x, 11), DomainError);
  EXPECT_THROW(o.program(x, -1), DomainError);
}

TEST(ProgrammableOracle, FreshStreamMatchesLazyAnswers) {
  Seed seed{};
  seed[5] = 1;
  auto a = RandomOracle::programmable(MessageRange::modular(1000003), seed);
  auto b = RandomOracle::programmable(MessageRange::modular(1000003), seed);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(a.eval(to_bytes(std::to_string(i))), b.draw_fresh());
}

TEST(ProgrammableOracle, ReproducibleFromSeed) {
  Seed seed{};
  seed[31] = 4;
  auto a = RandomOracle::programmable(MessageRange::bit_strings(8), seed);
  auto b = RandomOracle::programmable(MessageRange::bit_strings(8), seed);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.eval(to_bytes(std::to_string(i))), b.eval(to_bytes(std::to_string(i))));
  EXPECT_EQ(a.encode_value(255).size(), 1u);
}

}  // namespace
}  // namespace too
