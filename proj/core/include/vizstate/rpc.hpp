#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "vizstate/renderer.hpp"
#include "vizstate/view_state.hpp"

namespace vizstate {

struct ToolDescriptor {
  std::string name;
  std::string description;
  Json input_schema;  // JSON Schema: {type, properties, required}

  Json to_json() const;
};

struct ServiceConfig {
  /// When true, sessions live in a process-wide engine shared by every
  /// service instance (collaboration mode). Off by default: each connection
  /// gets its own engine, so plot ids never leak across connections.
  bool shared_sessions = false;
  std::string out_dir;  // empty -> default_output_dir()
  RenderOptions render;
};

/// One connection's tool dispatcher: the seven figure tools over JSON-RPC 2.0.
class ToolService {
 public:
  explicit ToolService(ServiceConfig config = {});

  static const std::vector<ToolDescriptor>& list_tools();

  /// Routes a tool call to the engine/renderer. Throws Error on bad tool
  /// names, malformed arguments, and domain failures.
  Json dispatch(const std::string& tool_name, const Json& args);

  /// Handles one parsed JSON-RPC request object and returns the response
  /// object. Methods: "tools/list", "tools/call" {name, arguments}, or a
  /// tool name directly.
  Json handle_request(const Json& request);

  /// Parses one newline-delimited frame; malformed JSON yields -32700.
  Json handle_frame(const std::string& frame);

  /// Blocking serve loop: one request per line, responses in request order,
  /// clean exit at end-of-input. Returns the process exit status.
  int serve(std::istream& in, std::ostream& out);

  StateEngine& engine() { return *engine_; }

 private:
  ServiceConfig config_;
  std::shared_ptr<StateEngine> engine_;
};

}  // namespace vizstate
