#pragma once

#include <any>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "qosmw/errors.hpp"
#include "qosmw/message.hpp"

namespace qosmw {

enum class NodeRole { kApplication, kServer, kFog, kGateway, kDevice };
enum class PluginKind { kRedirector, kCompressor, kDecompressor, kCore };
enum class PluginState { kInstalled, kStarted, kStopped };

std::string_view to_string(NodeRole r);
std::string_view to_string(PluginKind k);
std::string_view to_string(PluginState s);

Result<NodeRole> parse_node_role(std::string_view text);

/// The CORE plugin occupies this position; every other plugin sits below it.
inline constexpr std::uint32_t kCoreChainPosition = 0xFFFFFFFFu;
inline constexpr std::string_view kCorePluginId = "core";

struct PluginDescriptor {
  std::string plugin_id;
  PluginKind kind = PluginKind::kCore;
  PluginState state = PluginState::kInstalled;
  std::any config;
  std::uint32_t chain_position = 0;
};

class MessageHandler;
using HandlerPtr = std::shared_ptr<MessageHandler>;

/// Callback delivering a response together with the time it became available.
using ReplyFn = std::function<void(Message, double)>;

/// Carries a message toward the node owning a destination. Implementations
/// may be synchronous (tests) or event-driven (the simulator). on_response
/// fires exactly once; forwarding failures arrive as UPSTREAM_UNREACHABLE
/// error responses, never as dropped messages.
class Forwarder {
 public:
  virtual ~Forwarder() = default;
  virtual void forward(const std::string& from_node, Message m,
                       const ResourceAddress& dst, double now_s,
                       ReplyFn on_response) = 0;
};

/// Per-message state for one traversal of a node's handler chain. A message
/// is processed entirely under the snapshot recorded here, even if the chain
/// is reconfigured while the message is in flight.
struct ChainContext {
  std::uint64_t snapshot_id = 0;
  std::string node_id;
  std::optional<std::string> ingress_peer;  // node that delivered the message
  double now_s = 0.0;
  Forwarder* forwarder = nullptr;
};
using ChainContextPtr = std::shared_ptr<ChainContext>;

struct Pass {
  Message m;  // continue down the chain with this (possibly transformed) message
};
struct Respond {
  Message response;  // terminate the chain; unwind through earlier handlers
};
using HandlerOutcome = std::variant<Pass, Respond>;
using HandlerCont = std::function<void(HandlerOutcome)>;

/// A chain element. Handlers must be reentrant: no mutable state beyond
/// their construction-time config; per-message state lives in ChainContext.
class MessageHandler {
 public:
  virtual ~MessageHandler() = default;

  /// Processes a request travelling into the node. Must invoke done exactly
  /// once, possibly after suspending on a Forwarder round trip.
  virtual void on_request(Message m, const ChainContextPtr& ctx,
                          HandlerCont done) = 0;

  /// Transforms the response as it leaves the node, in reverse chain order.
  virtual Message on_response(Message r, const ChainContextPtr& ctx) {
    (void)ctx;
    return r;
  }
};

struct SnapshotEntry {
  std::string plugin_id;
  PluginKind kind = PluginKind::kCore;
  std::any config;
  HandlerPtr handler;
};

/// Immutable view of the started chain, CORE last. Published atomically;
/// in-flight messages keep the snapshot they were admitted under alive.
struct HandlerChainSnapshot {
  std::uint64_t id = 0;
  std::vector<SnapshotEntry> entries;
};
using SnapshotPtr = std::shared_ptr<const HandlerChainSnapshot>;

/// Builds handlers for plugin kinds from their opaque config. Per-deployment
/// registries let tests substitute probe handlers for any kind.
class HandlerRegistry {
 public:
  using Factory = std::function<Result<HandlerPtr>(const std::any& config)>;

  void register_kind(PluginKind kind, Factory factory);
  Result<HandlerPtr> make(PluginKind kind, const std::any& config) const;

 private:
  std::map<PluginKind, Factory> factories_;
};

/// A middleware node: role, resource store, plugin lifecycle and the ordered
/// handler chain. Lifecycle operations serialize with each other and never
/// block message processing; snapshot publication is atomic with respect to
/// admission. The node must outlive any in-flight message it admitted.
class NodeRuntime {
 public:
  NodeRuntime(std::string node_id, NodeRole role,
              std::shared_ptr<const HandlerRegistry> registry);

  const std::string& id() const { return node_id_; }
  NodeRole role() const { return role_; }

  // -- plugin lifecycle -----------------------------------------------------
  Result<PluginDescriptor> install_plugin(PluginDescriptor d);
  Result<SnapshotPtr> start_plugin(const std::string& plugin_id);
  Result<SnapshotPtr> stop_plugin(const std::string& plugin_id);
  Result<SnapshotPtr> update_plugin(const std::string& plugin_id, std::any config);
  Result<void> uninstall_plugin(const std::string& plugin_id);

  SnapshotPtr snapshot() const;
  std::vector<PluginDescriptor> plugins() const;  // inventory, sorted by id

  // -- resource store -------------------------------------------------------
  void put_resource(const std::string& path, Bytes content);
  std::optional<Bytes> get_resource(const std::string& path) const;
  bool erase_resource(const std::string& path);

  // -- data path ------------------------------------------------------------
  void set_forwarder(Forwarder* f) { forwarder_ = f; }

  /// Admits a request and drives it through the current snapshot. reply is
  /// invoked exactly once with the response.
  void handle_message(Message m, std::optional<std::string> ingress_peer,
                      double now_s, ReplyFn reply);

  struct Counters {
    std::uint64_t admitted = 0;
    std::uint64_t completed = 0;
    std::uint64_t failed = 0;
  };
  Counters counters() const;

 private:
  void republish_locked();
  void step(const SnapshotPtr& snap, std::size_t index, Message m,
            const ChainContextPtr& ctx, const ReplyFn& reply);

  std::string node_id_;
  NodeRole role_;
  std::shared_ptr<const HandlerRegistry> registry_;
  Forwarder* forwarder_ = nullptr;

  mutable std::mutex admin_mu_;  // serializes lifecycle operations
  std::map<std::string, PluginDescriptor> descriptors_;
  std::uint64_t next_snapshot_id_ = 1;

  mutable std::shared_mutex snap_mu_;
  SnapshotPtr snapshot_;

  mutable std::shared_mutex store_mu_;
  std::map<std::string, Bytes> resource_store_;

  std::atomic<std::uint64_t> admitted_{0};
  std::atomic<std::uint64_t> completed_{0};
  std::atomic<std::uint64_t> failed_{0};
};

using NodePtr = std::shared_ptr<NodeRuntime>;

}  // namespace qosmw
