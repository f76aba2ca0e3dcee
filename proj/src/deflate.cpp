#include "qosmw/deflate.hpp"

#include <zlib.h>

namespace qosmw {

namespace {
constexpr int kRawWindowBits = -15;  // negative = raw deflate, 32K window
constexpr std::size_t kChunk = 16384;
}  // namespace

Result<Bytes> deflate_bytes(const Bytes& in, int level) {
  z_stream strm{};
  if (deflateInit2(&strm, level, Z_DEFLATED, kRawWindowBits, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    return {Errc::kCorruptStream, "deflate init"};
  }
  strm.next_in = const_cast<Bytef*>(in.data());
  strm.avail_in = static_cast<uInt>(in.size());

  Bytes out;
  std::uint8_t buf[kChunk];
  int rc = Z_OK;
  do {
    strm.next_out = buf;
    strm.avail_out = kChunk;
    rc = deflate(&strm, Z_FINISH);
    out.insert(out.end(), buf, buf + (kChunk - strm.avail_out));
  } while (strm.avail_out == 0);
  deflateEnd(&strm);
  if (rc != Z_STREAM_END) return {Errc::kCorruptStream, "deflate did not finish"};
  return out;
}

Result<Bytes> inflate_bytes(const Bytes& in) {
  z_stream strm{};
  if (inflateInit2(&strm, kRawWindowBits) != Z_OK) {
    return {Errc::kCorruptStream, "inflate init"};
  }
  strm.next_in = const_cast<Bytef*>(in.data());
  strm.avail_in = static_cast<uInt>(in.size());

  Bytes out;
  std::uint8_t buf[kChunk];
  int rc = Z_OK;
  do {
    strm.next_out = buf;
    strm.avail_out = kChunk;
    rc = inflate(&strm, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR) {
      inflateEnd(&strm);
      return {Errc::kCorruptStream, "invalid stream"};
    }
    out.insert(out.end(), buf, buf + (kChunk - strm.avail_out));
    if (rc == Z_BUF_ERROR) break;  // no further progress possible (truncated)
  } while (rc != Z_STREAM_END);

  const bool complete = (rc == Z_STREAM_END) && strm.avail_in == 0;
  inflateEnd(&strm);
  if (!complete) return {Errc::kCorruptStream, "incomplete or trailing data"};
  return out;
}

}  // namespace qosmw
