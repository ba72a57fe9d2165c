#include <gtest/gtest.h>

#include "too/chameleon/dl.hpp"
#include "too/chameleon/sis.hpp"
#include "too/transform.hpp"

namespace too {
namespace {

using chameleon::Dl;
using chameleon::Sis;

template <class CH>
struct Fixture;

template <>
struct Fixture<Dl> {
  static Dl::Params params() { return Dl::Params::standard(); }
};
template <>
struct Fixture<Sis> {
  static Sis::Params params() { return {4, 8, 12, 257, 17, 0}; }
};

template <class CH>
class TransformTest : public ::testing::Test {
 protected:
  void SetUp() override {
    rng = Rng::from_u64(21);
    keys = g_prime<CH>(merkle::descriptor(4), Fixture<CH>::params(), rng);
    pk = public_part(keys);
  }

  RandomOracle oracle() const { return RandomOracle::production(CH::message_range(keys.ch_inst)); }

  Rng rng;
  TransformedKeyPair<CH> keys;
  TransformedPublicKey<CH> pk;
};

using Families = ::testing::Types<Dl, Sis>;
TYPED_TEST_SUITE(TransformTest, Families);

TYPED_TEST(TransformTest, SignVerifyRoundTrip) {
  using CH = TypeParam;
  auto o = this->oracle();
  for (int i = 0; i < 16; ++i) {
    auto msg = this->rng.bytes(this->rng.uniform(100));
    auto sig = s_prime<CH>(this->keys, msg, o, this->rng);
    EXPECT_TRUE(accepted(v_prime<CH>(this->pk, msg, sig, o)));
    auto bytes = serialize_signature(this->pk, sig);
    // Randomness is stored modulo q, so compare the re-encoding rather than the raw vector.
    auto parsed = parse_signature<CH>(this->pk, bytes);
    EXPECT_EQ(parsed.base_sig, sig.base_sig);
    EXPECT_EQ(serialize_signature(this->pk, parsed), bytes);
    EXPECT_TRUE(accepted(v_prime<CH>(this->pk, msg, bytes, o)));
  }
  EXPECT_THROW(s_prime<CH>(this->keys, to_bytes("17th"), o, this->rng), CapacityError);
}

TYPED_TEST(TransformTest, WrongMessageAndMutationsReject) {
  using CH = TypeParam;
  auto o = this->oracle();
  auto msg = to_bytes("payload");
  auto bytes = serialize_signature(this->pk, s_prime<CH>(this->keys, msg, o, this->rng));
  EXPECT_FALSE(accepted(v_prime<CH>(this->pk, to_bytes("payloae"), bytes, o)));
  // Flip one bit at positions spread over the whole signature, including both fields.
  std::size_t accepted_mutants = 0;
  for (std::size_t i = 0; i < bytes.size(); i += 7) {
    auto bad = bytes;
    bad[i] ^= 0x01;
    accepted_mutants += accepted(v_prime<CH>(this->pk, msg, bad, o));
  }
  for (std::size_t i = bytes.size() - 40; i < bytes.size(); ++i) {
    auto bad = bytes;
    bad[i] ^= 0x80;
    accepted_mutants += accepted(v_prime<CH>(this->pk, msg, bad, o));
  }
  EXPECT_EQ(accepted_mutants, 0u);
  Bytes truncated(bytes.begin(), bytes.end() - 1);
  EXPECT_FALSE(accepted(v_prime<CH>(this->pk, msg, truncated, o)));
  EXPECT_FALSE(accepted(v_prime<CH>(this->pk, msg, Bytes{}, o)));
}

TYPED_TEST(TransformTest, VerificationDependsOnOracleTag) {
  using CH = TypeParam;
  auto o = this->oracle();
  auto msg = to_bytes("tagged");
  auto sig = s_prime<CH>(this->keys, msg, o, this->rng);
  auto other = RandomOracle::production(CH::message_range(this->keys.ch_inst), "other-tag");
  EXPECT_FALSE(accepted(v_prime<CH>(this->pk, msg, sig, other)));
}

TYPED_TEST(TransformTest, KeySerializationRoundTrip) {
  using CH = TypeParam;
  auto o = this->oracle();
  s_prime<CH>(this->keys, to_bytes("advance"), o, this->rng);
  auto kp = parse_key_pair<CH>(serialize_key_pair(this->keys));
  EXPECT_EQ(kp, this->keys);
  EXPECT_EQ(parse_public_key<CH>(serialize_public_key(this->pk)), this->pk);
  EXPECT_EQ(merkle::decode_state(kp.base).next_leaf, 1u);
}

TYPED_TEST(TransformTest, KeyWithStateBeyondCapacityRefused) {
  using CH = TypeParam;
  auto kp = this->keys;
  kp.base.state = merkle::encode_state(17);
  EXPECT_THROW(parse_key_pair<CH>(serialize_key_pair(kp)), FormatError);
}

TYPED_TEST(TransformTest, OracleRangeMustMatch) {
  using CH = TypeParam;
  auto wrong = RandomOracle::production(MessageRange::modular(11));
  EXPECT_THROW(s_prime<CH>(this->keys, to_bytes("m"), wrong, this->rng), DomainError);
}

TYPED_TEST(TransformTest, CommitmentRecomputes) {
  using CH = TypeParam;
  auto o = this->oracle();
  auto msg = to_bytes("trace");
  auto trace = s_prime_traced<CH>(this->keys, msg, o, this->rng);
  EXPECT_EQ(recompute_commitment<CH>(this->pk.ch_inst, msg, trace.signature, o), trace.target.element);
  EXPECT_EQ(CH::hash(this->pk.ch_inst, trace.oracle_value, trace.signature.randomness), trace.target.element);
}

TEST(TransformDl, FailedInversionLeavesStateUntouched) {
  auto rng = Rng::from_u64(2);
  auto keys = g_prime<Dl>(merkle::descriptor(2), Dl::Params::with_group(chameleon::toy_group()), rng);
  keys.ch_td.x = 0;  // inversion now fails
  auto o = RandomOracle::production(Dl::message_range(keys.ch_inst));
  auto before = keys.base.state;
  EXPECT_THROW(s_prime<Dl>(keys, to_bytes("m"), o, rng), TrapdoorError);
  EXPECT_EQ(keys.base.state, before);
}

TEST(TransformDl, ForeignDescriptorRejected) {
  auto rng = Rng::from_u64(3);
  auto keys = g_prime<Dl>(merkle::descriptor(2), Dl::Params::with_group(chameleon::toy_group()), rng);
  auto pk = public_part(keys);
  auto o = RandomOracle::production(Dl::message_range(keys.ch_inst));
  auto sig = s_prime<Dl>(keys, to_bytes("m"), o, rng);
  sig.base_sig.descriptor = wrap_malleable(merkle::descriptor(2));
  EXPECT_FALSE(accepted(v_prime<Dl>(pk, to_bytes("m"), sig, o)));
}

TEST(TransformDl, ChameleonTagDispatch) {
  auto rng = Rng::from_u64(4);
  auto dl = g_prime<Dl>(merkle::descriptor(1), Dl::Params::with_group(chameleon::toy_group()), rng);
  auto sis = g_prime<Sis>(merkle::descriptor(1), Sis::Params{4, 8, 12, 257, 17, 0}, rng);
  EXPECT_EQ(chameleon_tag_of(serialize_key_pair(dl)), chameleon::tag(chameleon::Tag::dl_instance));
  EXPECT_EQ(chameleon_tag_of(serialize_public_key(public_part(dl))), chameleon::tag(chameleon::Tag::dl_instance));
  EXPECT_EQ(chameleon_tag_of(serialize_key_pair(sis)), chameleon::tag(chameleon::Tag::sis_instance));
  EXPECT_THROW(chameleon_tag_of(encode_record(1, {{}})), FormatError);
}

TEST(TransformDl, SecretKeyOverheadIsTrapdoorOnly) {
  auto rng = Rng::from_u64(5);
  auto kp = g_prime<Sis>(merkle::descriptor(1), Sis::Params{4, 8, 12, 257, 17, 0}, rng);
  const auto delta = serialize_secret_key(kp).size() - serialize_base_secret_key(kp.base).size();
  EXPECT_EQ(delta, 4 + Sis::serialize_trapdoor(kp.ch_inst, kp.ch_td).size());
}

}  // namespace
}  // namespace too
