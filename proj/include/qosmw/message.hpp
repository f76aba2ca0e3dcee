#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qosmw/errors.hpp"

namespace qosmw {

using Bytes = std::vector<std::uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_text(const Bytes& b);

/// Address of a REST resource: owning node plus a non-empty path.
/// Canonical text form is "node_id/seg1/seg2/..." and round-trips via parse().
struct ResourceAddress {
  std::string node_id;
  std::vector<std::string> path;

  std::string to_string() const;
  std::string path_string() const;  // segments joined by '/'

  static Result<ResourceAddress> create(std::string node_id,
                                        std::vector<std::string> path);
  static Result<ResourceAddress> parse(std::string_view text);

  bool operator==(const ResourceAddress&) const = default;
};

enum class MessageKind { kRequest, kResponse };
enum class Verb { kCreate, kRetrieve, kUpdate, kDelete };
enum class Encoding { kIdentity, kDeflate };

std::string_view to_string(MessageKind k);
std::string_view to_string(Verb v);
std::string_view to_string(Encoding e);

/// The unit exchanged between middleware nodes. Immutable by convention:
/// handlers copy-and-transform rather than share mutable state.
struct Message {
  MessageKind kind = MessageKind::kRequest;
  Verb verb = Verb::kRetrieve;
  std::string correlation_id;
  ResourceAddress source;
  std::optional<ResourceAddress> destination;
  Bytes payload;
  Encoding encoding = Encoding::kIdentity;
  double created_at_s = 0.0;

  bool operator==(const Message&) const = default;
};

/// Canonical wire encoding: a UTF-8 JSON object with exactly the keys
/// kind, verb, cid, src, dst, enc, payload_b64, t, in that order, no
/// insignificant whitespace. `dst` is null when absent. The length of this
/// encoding is the size used for all bandwidth accounting.
Bytes serialize(const Message& m);
std::size_t serialized_size(const Message& m);

/// Inverse of serialize. Rejects anything that is not a well-formed canonical
/// object (missing/extra keys, bad enum values, invalid base64, bad address
/// text) with MALFORMED_MESSAGE.
Result<Message> deserialize(const Bytes& b);

/// Response construction helpers. A response answers exactly one request:
/// it carries the request's correlation id, sources at the serving node with
/// the request's resource path, and is addressed back to the requester.
Message make_response(const Message& req, Bytes payload,
                      const std::string& serving_node, double now_s);
Message make_error_response(const Message& req, Errc code,
                            const std::string& serving_node, double now_s);
bool is_error_response(const Message& m, Errc code);

namespace detail {
std::string base64_encode(const Bytes& in);
Result<Bytes> base64_decode(std::string_view in);
std::string format_double(double v);  // shortest text that round-trips
}  // namespace detail

}  // namespace qosmw
