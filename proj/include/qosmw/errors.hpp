#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace qosmw {

enum class Errc {
  kMalformedMessage,
  kDuplicatePlugin,
  kInvalidPosition,
  kUnknownPlugin,
  kAlreadyStarted,
  kNotStarted,
  kUninstallWhileStarted,
  kInvalidState,
  kNotFound,
  kUpstreamUnreachable,
  kDoubleCompression,
  kCorruptStream,
  kNoPlacement,
  kFatalInconsistent,
  kConfigInvalid,
  kUnreachableTarget,
};

/// Stable upper-snake name, e.g. "NOT_FOUND". Used in error-response payloads
/// and diagnostics.
std::string_view to_string(Errc e);

struct Error {
  Errc code;
  std::string detail;
};

template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : data_(std::move(value)) {}
  Result(Error err) : data_(std::move(err)) {}
  Result(Errc code, std::string detail = {})
      : data_(Error{code, std::move(detail)}) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<T>(data_); }
  const T& value() const& { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }

  const Error& error() const { return std::get<Error>(data_); }
  Errc code() const { return error().code; }

 private:
  std::variant<T, Error> data_;
};

template <>
class [[nodiscard]] Result<void> {
 public:
  Result() : err_() {}
  Result(Error err) : err_(std::move(err)) {}
  Result(Errc code, std::string detail = {}) : err_(Error{code, std::move(detail)}) {}

  static Result success() { return Result(); }

  bool ok() const { return !err_.has_value(); }
  explicit operator bool() const { return ok(); }

  const Error& error() const { return *err_; }
  Errc code() const { return err_->code; }

 private:
  std::optional<Error> err_;
};

}  // namespace qosmw
