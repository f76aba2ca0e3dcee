#include "qosmw/message.hpp"

#include <array>
#include <charconv>
#include <cstring>

#include "json.hpp"

namespace qosmw {

std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::kMalformedMessage: return "MALFORMED_MESSAGE";
    case Errc::kDuplicatePlugin: return "DUPLICATE_PLUGIN";
    case Errc::kInvalidPosition: return "INVALID_POSITION";
    case Errc::kUnknownPlugin: return "UNKNOWN_PLUGIN";
    case Errc::kAlreadyStarted: return "ALREADY_STARTED";
    case Errc::kNotStarted: return "NOT_STARTED";
    case Errc::kUninstallWhileStarted: return "UNINSTALL_WHILE_STARTED";
    case Errc::kInvalidState: return "INVALID_STATE";
    case Errc::kNotFound: return "NOT_FOUND";
    case Errc::kUpstreamUnreachable: return "UPSTREAM_UNREACHABLE";
    case Errc::kDoubleCompression: return "DOUBLE_COMPRESSION";
    case Errc::kCorruptStream: return "CORRUPT_STREAM";
    case Errc::kNoPlacement: return "NO_PLACEMENT";
    case Errc::kFatalInconsistent: return "FATAL_INCONSISTENT";
    case Errc::kConfigInvalid: return "CONFIG_INVALID";
    case Errc::kUnreachableTarget: return "UNREACHABLE_TARGET";
  }
  return "UNKNOWN_ERROR";
}

Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

std::string to_text(const Bytes& b) {
  return std::string(b.begin(), b.end());
}

std::string ResourceAddress::path_string() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) out += '/';
    out += path[i];
  }
  return out;
}

std::string ResourceAddress::to_string() const {
  return node_id + "/" + path_string();
}

Result<ResourceAddress> ResourceAddress::create(std::string node_id,
                                                std::vector<std::string> path) {
  if (node_id.empty() || node_id.find('/') != std::string::npos) {
    return {Errc::kMalformedMessage, "bad node id"};
  }
  if (path.empty()) return {Errc::kMalformedMessage, "empty path"};
  for (const auto& seg : path) {
    if (seg.empty() || seg.find('/') != std::string::npos) {
      return {Errc::kMalformedMessage, "bad path segment"};
    }
  }
  ResourceAddress a;
  a.node_id = std::move(node_id);
  a.path = std::move(path);
  return a;
}

Result<ResourceAddress> ResourceAddress::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find('/', start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      break;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (parts.size() < 2) return {Errc::kMalformedMessage, "address needs node and path"};
  std::string node = std::move(parts.front());
  parts.erase(parts.begin());
  return create(std::move(node), std::move(parts));
}

std::string_view to_string(MessageKind k) {
  return k == MessageKind::kRequest ? "REQUEST" : "RESPONSE";
}

std::string_view to_string(Verb v) {
  switch (v) {
    case Verb::kCreate: return "CREATE";
    case Verb::kRetrieve: return "RETRIEVE";
    case Verb::kUpdate: return "UPDATE";
    case Verb::kDelete: return "DELETE";
  }
  return "RETRIEVE";
}

std::string_view to_string(Encoding e) {
  return e == Encoding::kIdentity ? "identity" : "deflate";
}

namespace detail {

namespace {
constexpr char kB64Table[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}
}  // namespace

std::string base64_encode(const Bytes& in) {
  std::string out;
  out.reserve(((in.size() + 2) / 3) * 4);
  std::size_t i = 0;
  for (; i + 3 <= in.size(); i += 3) {
    std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8) | in[i + 2];
    out += kB64Table[(v >> 18) & 63];
    out += kB64Table[(v >> 12) & 63];
    out += kB64Table[(v >> 6) & 63];
    out += kB64Table[v & 63];
  }
  std::size_t rem = in.size() - i;
  if (rem == 1) {
    std::uint32_t v = in[i] << 16;
    out += kB64Table[(v >> 18) & 63];
    out += kB64Table[(v >> 12) & 63];
    out += "==";
  } else if (rem == 2) {
    std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8);
    out += kB64Table[(v >> 18) & 63];
    out += kB64Table[(v >> 12) & 63];
    out += kB64Table[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

Result<Bytes> base64_decode(std::string_view in) {
  if (in.size() % 4 != 0) return {Errc::kMalformedMessage, "base64 length"};
  Bytes out;
  out.reserve((in.size() / 4) * 3);
  for (std::size_t i = 0; i < in.size(); i += 4) {
    int pad = 0;
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      char c = in[i + k];
      if (c == '=') {
        // Padding is only legal in the final group, trailing positions only.
        if (i + 4 != in.size() || k < 2) {
          return {Errc::kMalformedMessage, "base64 padding"};
        }
        ++pad;
        v <<= 6;
        continue;
      }
      if (pad > 0) return {Errc::kMalformedMessage, "base64 padding"};
      int d = b64_value(c);
      if (d < 0) return {Errc::kMalformedMessage, "base64 alphabet"};
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  }
  return out;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace detail

namespace {

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof(esc), "\\u%04x", c);
          out += esc;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

Bytes serialize(const Message& m) {
  std::string out;
  out.reserve(160 + ((m.payload.size() + 2) / 3) * 4);
  out += "{\"kind\":";
  append_json_string(out, to_string(m.kind));
  out += ",\"verb\":";
  append_json_string(out, to_string(m.verb));
  out += ",\"cid\":";
  append_json_string(out, m.correlation_id);
  out += ",\"src\":";
  append_json_string(out, m.source.to_string());
  out += ",\"dst\":";
  if (m.destination) {
    append_json_string(out, m.destination->to_string());
  } else {
    out += "null";
  }
  out += ",\"enc\":";
  append_json_string(out, to_string(m.encoding));
  out += ",\"payload_b64\":";
  append_json_string(out, detail::base64_encode(m.payload));
  out += ",\"t\":";
  out += detail::format_double(m.created_at_s);
  out += '}';
  return to_bytes(out);
}

std::size_t serialized_size(const Message& m) {
  return serialize(m).size();
}

Result<Message> deserialize(const Bytes& b) {
  const auto j = nlohmann::json::parse(b.begin(), b.end(), nullptr,
                                       /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return {Errc::kMalformedMessage, "not a JSON object"};
  }
  static constexpr std::array<std::string_view, 8> kKeys = {
      "kind", "verb", "cid", "src", "dst", "enc", "payload_b64", "t"};
  if (j.size() != kKeys.size()) {
    return {Errc::kMalformedMessage, "wrong key set"};
  }
  for (auto key : kKeys) {
    if (!j.contains(key)) {
      return {Errc::kMalformedMessage, std::string("missing key ") + std::string(key)};
    }
  }
  for (auto key : {"kind", "verb", "cid", "src", "enc", "payload_b64"}) {
    if (!j.at(key).is_string()) {
      return {Errc::kMalformedMessage, std::string("non-string ") + key};
    }
  }

  Message m;
  const auto& kind = j.at("kind").get_ref<const std::string&>();
  if (kind == "REQUEST") {
    m.kind = MessageKind::kRequest;
  } else if (kind == "RESPONSE") {
    m.kind = MessageKind::kResponse;
  } else {
    return {Errc::kMalformedMessage, "bad kind"};
  }

  const auto& verb = j.at("verb").get_ref<const std::string&>();
  if (verb == "CREATE") {
    m.verb = Verb::kCreate;
  } else if (verb == "RETRIEVE") {
    m.verb = Verb::kRetrieve;
  } else if (verb == "UPDATE") {
    m.verb = Verb::kUpdate;
  } else if (verb == "DELETE") {
    m.verb = Verb::kDelete;
  } else {
    return {Errc::kMalformedMessage, "bad verb"};
  }

  m.correlation_id = j.at("cid").get<std::string>();

  auto src = ResourceAddress::parse(j.at("src").get_ref<const std::string&>());
  if (!src.ok()) return src.error();
  m.source = std::move(src).value();

  const auto& dst = j.at("dst");
  if (dst.is_null()) {
    m.destination.reset();
  } else if (dst.is_string()) {
    auto parsed = ResourceAddress::parse(dst.get_ref<const std::string&>());
    if (!parsed.ok()) return parsed.error();
    m.destination = std::move(parsed).value();
  } else {
    return {Errc::kMalformedMessage, "bad dst"};
  }

  const auto& enc = j.at("enc").get_ref<const std::string&>();
  if (enc == "identity") {
    m.encoding = Encoding::kIdentity;
  } else if (enc == "deflate") {
    m.encoding = Encoding::kDeflate;
  } else {
    return {Errc::kMalformedMessage, "bad enc"};
  }

  auto payload = detail::base64_decode(j.at("payload_b64").get_ref<const std::string&>());
  if (!payload.ok()) return payload.error();
  m.payload = std::move(payload).value();

  const auto& t = j.at("t");
  if (!t.is_number()) return {Errc::kMalformedMessage, "bad t"};
  m.created_at_s = t.get<double>();

  return m;
}

Message make_response(const Message& req, Bytes payload,
                      const std::string& serving_node, double now_s) {
  Message r;
  r.kind = MessageKind::kResponse;
  r.verb = req.verb;
  r.correlation_id = req.correlation_id;
  r.source.node_id = serving_node;
  r.source.path = req.destination ? req.destination->path
                                  : std::vector<std::string>{"error"};
  r.destination = req.source;
  r.payload = std::move(payload);
  r.encoding = Encoding::kIdentity;
  r.created_at_s = now_s;
  return r;
}

Message make_error_response(const Message& req, Errc code,
                            const std::string& serving_node, double now_s) {
  return make_response(req, to_bytes(to_string(code)), serving_node, now_s);
}

bool is_error_response(const Message& m, Errc code) {
  return m.kind == MessageKind::kResponse && m.payload == to_bytes(to_string(code));
}

}  // namespace qosmw
