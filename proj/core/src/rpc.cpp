#include "vizstate/rpc.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace vizstate {
namespace {

Json number_arg(const char* desc) {
  return {{"type", "number"}, {"description", desc}};
}

Json integer_arg(const char* desc) {
  return {{"type", "integer"}, {"description", desc}};
}

std::vector<ToolDescriptor> build_descriptors() {
  std::vector<ToolDescriptor> tools;
  auto add = [&](const char* name, const char* description, Json properties,
                 Json required) {
    ToolDescriptor d;
    d.name = name;
    d.description = description;
    d.input_schema = {{"type", "object"},
                      {"properties", std::move(properties)},
                      {"required", std::move(required)}};
    tools.push_back(std::move(d));
  };

  add("show_plot", "Creates figure; returns plot_id",
      {{"figure", {{"type", "object"}, {"description", "figure specification document with data and layout"}}}},
      Json::array({"figure"}));
  add("get_plot_image", "Returns current view as an image file",
      {{"plot_id", integer_arg("plot identifier from show_plot")},
       {"interaction_id", integer_arg("specific interaction snapshot id; latest view if omitted")}},
      Json::array({"plot_id"}));
  add("get_plot_json", "Returns full figure specification",
      {{"plot_id", integer_arg("plot identifier from show_plot")}},
      Json::array({"plot_id"}));
  add("relayout", "Zoom/Pan axis bounds",
      {{"plot_id", integer_arg("plot identifier")},
       {"x_min", number_arg("x-axis range lower bound")},
       {"x_max", number_arg("x-axis range upper bound")},
       {"y_min", number_arg("y-axis range lower bound")},
       {"y_max", number_arg("y-axis range upper bound")}},
      Json::array({"plot_id"}));
  add("legendclick", "Toggle trace visibility",
      {{"plot_id", integer_arg("plot identifier")},
       {"curve_number", integer_arg("zero-indexed trace index")}},
      Json::array({"plot_id", "curve_number"}));
  add("selected", "Returns points in region",
      {{"plot_id", integer_arg("plot identifier")},
       {"x_min", number_arg("x-axis selection lower bound")},
       {"x_max", number_arg("x-axis selection upper bound")},
       {"y_min", number_arg("y-axis selection lower bound")},
       {"y_max", number_arg("y-axis selection upper bound")}},
      Json::array({"plot_id"}));
  add("query_interactions", "Returns interaction history",
      {{"plot_id", integer_arg("plot identifier")},
       {"event_type", {{"type", "string"}, {"description", "filter: init, relayout, legendclick, selected"}}}},
      Json::array({"plot_id"}));
  return tools;
}

int require_int(const Json& args, const char* key) {
  if (!args.contains(key) || !args.at(key).is_number_integer())
    throw Error(ErrorCode::InvalidArgs, std::string("missing or non-integer '") + key + "'");
  return args.at(key).get<int>();
}

std::optional<double> opt_number(const Json& args, const char* key) {
  if (!args.contains(key) || args.at(key).is_null()) return std::nullopt;
  if (!args.at(key).is_number())
    throw Error(ErrorCode::InvalidArgs, std::string("non-numeric '") + key + "'");
  return args.at(key).get<double>();
}

std::optional<int> opt_int(const Json& args, const char* key) {
  if (!args.contains(key) || args.at(key).is_null()) return std::nullopt;
  if (!args.at(key).is_number_integer())
    throw Error(ErrorCode::InvalidArgs, std::string("non-integer '") + key + "'");
  return args.at(key).get<int>();
}

std::shared_ptr<StateEngine> shared_engine() {
  static auto engine = std::make_shared<StateEngine>();
  return engine;
}

Json error_response(const Json& id, int code, const std::string& message,
                    Json data = nullptr) {
  Json err = {{"code", code}, {"message", message}};
  if (!data.is_null()) err["data"] = std::move(data);
  return {{"jsonrpc", "2.0"}, {"id", id}, {"error", std::move(err)}};
}

}  // namespace

Json ToolDescriptor::to_json() const {
  return {{"name", name}, {"description", description}, {"inputSchema", input_schema}};
}

ToolService::ToolService(ServiceConfig config) : config_(std::move(config)) {
  engine_ = config_.shared_sessions ? shared_engine() : std::make_shared<StateEngine>();
  if (config_.out_dir.empty()) config_.out_dir = default_output_dir();
}

const std::vector<ToolDescriptor>& ToolService::list_tools() {
  static const std::vector<ToolDescriptor> tools = build_descriptors();
  return tools;
}

Json ToolService::dispatch(const std::string& tool_name, const Json& args) {
  if (!args.is_object()) throw Error(ErrorCode::InvalidArgs, "arguments must be an object");

  if (tool_name == "show_plot") {
    if (!args.contains("figure"))
      throw Error(ErrorCode::InvalidArgs, "missing 'figure'");
    const Json& fig = args.at("figure");
    const FigureSpec spec =
        fig.is_string() ? parse_figure(fig.get<std::string>()) : parse_figure_json(fig);
    return {{"plot_id", engine_->create_plot(spec)}};
  }
  if (tool_name == "get_plot_image") {
    const int plot_id = require_int(args, "plot_id");
    const auto interaction_id = opt_int(args, "interaction_id");
    const std::string path =
        render_at(*engine_, plot_id, interaction_id, config_.render, config_.out_dir);
    return {{"image_path", path}};
  }
  if (tool_name == "get_plot_json") {
    return figure_to_json(engine_->get_plot_json(require_int(args, "plot_id")));
  }
  if (tool_name == "relayout") {
    engine_->relayout(require_int(args, "plot_id"), opt_number(args, "x_min"),
                      opt_number(args, "x_max"), opt_number(args, "y_min"),
                      opt_number(args, "y_max"));
    return {{"status", "ok"}};
  }
  if (tool_name == "legendclick") {
    engine_->legendclick(require_int(args, "plot_id"), require_int(args, "curve_number"));
    return {{"status", "ok"}};
  }
  if (tool_name == "selected") {
    const SelectionResult result =
        engine_->selected(require_int(args, "plot_id"), opt_number(args, "x_min"),
                          opt_number(args, "x_max"), opt_number(args, "y_min"),
                          opt_number(args, "y_max"));
    return result.to_json();
  }
  if (tool_name == "query_interactions") {
    const int plot_id = require_int(args, "plot_id");
    std::optional<EventType> filter;
    if (args.contains("event_type") && !args.at("event_type").is_null()) {
      if (!args.at("event_type").is_string())
        throw Error(ErrorCode::InvalidArgs, "non-string 'event_type'");
      filter = event_type_from_name(args.at("event_type").get<std::string>());
      if (!filter)
        throw Error(ErrorCode::InvalidArgs,
                    "unknown event_type '" + args.at("event_type").get<std::string>() + "'");
    }
    Json events = Json::array();
    for (const auto& e : engine_->query_interactions(plot_id, filter))
      events.push_back({{"id", e.id},
                        {"event_type", event_type_name(e.event_type)},
                        {"payload", e.payload},
                        {"has_screenshot", e.has_screenshot}});
    return {{"events", events}};
  }
  throw Error(ErrorCode::UnknownTool, "unknown tool '" + tool_name + "'");
}

Json ToolService::handle_request(const Json& request) {
  const Json id = request.is_object() && request.contains("id") ? request.at("id") : Json();
  if (!request.is_object() || request.value("jsonrpc", "") != "2.0" ||
      !request.contains("method") || !request.at("method").is_string())
    return error_response(id, -32600, "invalid request");

  const std::string method = request.at("method").get<std::string>();
  const Json params =
      request.contains("params") ? request.at("params") : Json::object();

  if (method == "tools/list") {
    Json tools = Json::array();
    for (const auto& d : list_tools()) tools.push_back(d.to_json());
    return {{"jsonrpc", "2.0"}, {"id", id}, {"result", {{"tools", tools}}}};
  }

  std::string tool_name;
  Json args;
  if (method == "tools/call") {
    if (!params.is_object() || !params.contains("name") || !params.at("name").is_string())
      return error_response(id, -32602, "tools/call needs params.name");
    tool_name = params.at("name").get<std::string>();
    args = params.value("arguments", Json::object());
  } else {
    tool_name = method;
    args = params;
  }

  try {
    Json result = dispatch(tool_name, args);
    return {{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownTool)
      return error_response(id, -32601, e.what(), {{"code", std::string(e.code_name())}});
    if (e.code() == ErrorCode::InvalidArgs)
      return error_response(id, -32602, e.what(), {{"code", std::string(e.code_name())}});
    return error_response(id, -32000, e.what(), {{"code", std::string(e.code_name())}});
  }
}

Json ToolService::handle_frame(const std::string& frame) {
  Json request = Json::parse(frame, nullptr, false);
  if (request.is_discarded()) return error_response(Json(), -32700, "parse error");
  return handle_request(request);
}

int ToolService::serve(std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out << handle_frame(line).dump() << "\n";
    out.flush();
    if (!out) return 1;
  }
  return in.eof() ? 0 : 1;
}

}  // namespace vizstate
