// Signs three messages with a transformed Lamport-Merkle key over the SIS
// chameleon hash, then shows that a mauled signature no longer verifies.

#include <iostream>

#include "too/chameleon/sis.hpp"
#include "too/transform.hpp"

int main() {
  using too::chameleon::Sis;
  auto rng = too::Rng::from_u64(2024);
  auto keys = too::g_prime<Sis>(too::merkle::descriptor(2), too::chameleon::SisParams{4, 8, 12, 257, 17, 0}, rng);
  auto pk = too::public_part(keys);
  auto oracle = too::RandomOracle::production(Sis::message_range(keys.ch_inst));

  too::Bytes last;
  for (const char* text : {"alpha", "beta", "gamma"}) {
    auto msg = too::to_bytes(text);
    auto sig = too::serialize_signature(pk, too::s_prime<Sis>(keys, msg, oracle, rng));
    bool ok = too::accepted(too::v_prime<Sis>(pk, msg, sig, oracle));
    std::cout << text << ": " << sig.size() << "-byte signature, " << (ok ? "accept" : "reject") << "\n";
    last = sig;
  }

  last[last.size() / 2] ^= 0x01;
  bool ok = too::accepted(too::v_prime<Sis>(pk, too::to_bytes("gamma"), last, oracle));
  std::cout << "gamma with one flipped bit: " << (ok ? "accept" : "reject") << "\n";
  return ok ? 1 : 0;
}
