#pragma once

#include <openssl/evp.h>

#include <array>
#include <initializer_list>
#include <memory>
#include <string>

#include "too/bytes.hpp"

namespace too {

using Digest = std::array<std::uint8_t, 32>;

namespace detail {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

/// Explicitly fetched algorithms; the legacy EVP_sha256() handles re-fetch on every init.
inline const EVP_MD* fetched(const char* name) {
  const EVP_MD* md = EVP_MD_fetch(nullptr, name, nullptr);
  if (md == nullptr) throw Error(std::string("digest unavailable: ") + name);
  return md;
}

inline const EVP_MD* sha256_md() {
  static const EVP_MD* md = fetched("SHA256");
  return md;
}

inline const EVP_MD* shake256_md() {
  static const EVP_MD* md = fetched("SHAKE256");
  return md;
}

inline MdCtx new_ctx(const EVP_MD* md) {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1) throw Error("EVP digest init failed");
  return ctx;
}

}  // namespace detail

/// Incremental SHA-256.
class Sha256 {
 public:
  Sha256() : ctx_(detail::new_ctx(detail::sha256_md())) {}

  Sha256& update(ByteView data) {
    if (!data.empty()) EVP_DigestUpdate(ctx_.get(), data.data(), data.size());
    return *this;
  }

  Digest finish() {
    Digest out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), out.data(), &len);
    return out;
  }

 private:
  detail::MdCtx ctx_;
};

inline Digest sha256(ByteView data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, detail::sha256_md(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  return out;
}

inline Digest sha256(std::initializer_list<ByteView> parts) {
  thread_local detail::MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), detail::sha256_md(), nullptr) != 1) throw Error("EVP digest init failed");
  for (auto p : parts) {
    if (!p.empty()) EVP_DigestUpdate(ctx.get(), p.data(), p.size());
  }
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), out.data(), &len);
  return out;
}

/// SHAKE256 with `out_len` bytes of output over the concatenation of `parts`.
inline Bytes shake256(std::initializer_list<ByteView> parts, std::size_t out_len) {
  auto ctx = detail::new_ctx(detail::shake256_md());
  for (auto p : parts) {
    if (!p.empty()) EVP_DigestUpdate(ctx.get(), p.data(), p.size());
  }
  Bytes out(out_len);
  if (out_len > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw Error("SHAKE256 failed");
  }
  return out;
}

}  // namespace too
