#pragma once

#include "qosmw/errors.hpp"
#include "qosmw/message.hpp"

namespace qosmw {

inline constexpr int kDefaultDeflateLevel = 6;

/// Raw RFC 1951 stream (no zlib/gzip wrapper).
Result<Bytes> deflate_bytes(const Bytes& in, int level = kDefaultDeflateLevel);

/// Inflates a raw RFC 1951 stream. The whole input must form exactly one
/// complete stream; anything else is CORRUPT_STREAM.
Result<Bytes> inflate_bytes(const Bytes& in);

}  // namespace qosmw
