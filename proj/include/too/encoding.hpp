#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "too/bytes.hpp"

namespace too {

/// Magic prefix of every serialized object: ASCII "TOO1".
inline constexpr std::array<std::uint8_t, 4> kMagic{0x54, 0x4F, 0x4F, 0x31};

/// Decoded TOO1 record: a one-byte tag followed by length-prefixed fields.
struct Record {
  std::uint8_t tag = 0;
  std::vector<Bytes> fields;

  friend bool operator==(const Record&, const Record&) = default;
};

/// magic || tag || for each field: be32(len) || bytes
inline Bytes encode_record(std::uint8_t tag, const std::vector<Bytes>& fields) {
  Bytes out(kMagic.begin(), kMagic.end());
  out.push_back(tag);
  for (const auto& f : fields) {
    if (f.size() > UINT32_MAX) throw DomainError("field longer than 2^32-1 bytes");
    append_u32_be(out, static_cast<std::uint32_t>(f.size()));
    append(out, f);
  }
  return out;
}

inline Bytes encode_record(const Record& r) { return encode_record(r.tag, r.fields); }

/// Parses a complete record. Throws FormatError on any deviation, including trailing bytes.
inline Record decode_record(ByteView in, std::optional<std::uint8_t> expected_tag = std::nullopt,
                            std::optional<std::size_t> expected_fields = std::nullopt) {
  if (in.size() < kMagic.size() + 1) throw FormatError("record shorter than header");
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (in[i] != kMagic[i]) throw FormatError("bad magic");
  }
  Record r;
  r.tag = in[kMagic.size()];
  if (expected_tag && r.tag != *expected_tag) throw FormatError("unexpected record tag");
  std::size_t pos = kMagic.size() + 1;
  while (pos < in.size()) {
    if (in.size() - pos < 4) throw FormatError("truncated field length");
    std::size_t len = read_u32_be(in.subspan(pos, 4));
    pos += 4;
    if (len > in.size() - pos) throw FormatError("field overruns record");
    r.fields.emplace_back(in.begin() + static_cast<std::ptrdiff_t>(pos),
                          in.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  if (expected_fields && r.fields.size() != *expected_fields) throw FormatError("unexpected field count");
  return r;
}

}  // namespace too
