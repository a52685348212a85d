#include "exstack/service.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace exstack {

namespace fs = std::filesystem;
using nlohmann::json;

struct Service::Session {
  std::string id;
  const LiftedTemplate* tmpl = nullptr;
  std::mutex mutex;
  SelectionState state;
  std::uint64_t last_used = 0;
};

namespace {

Response error(int status, std::string_view code, std::string_view message) {
  json j;
  j["version"] = kServiceApiVersion;
  j["error"] = code;
  j["message"] = message;
  return {status, j.dump(), "application/json"};
}

Response ok(const json& j, int status = 200) { return {status, j.dump(), "application/json"}; }

std::vector<std::string_view> split_path(std::string_view path) {
  if (auto q = path.find_first_of("?#"); q != std::string_view::npos) {
    path = path.substr(0, q);
  }
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    auto slash = path.find('/');
    auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

json counterpart_json(const CounterpartInfo& c, std::size_t index) {
  return {{"index", index},         {"id", c.id},
          {"repo", c.repo},         {"path", c.path},
          {"url", c.url},           {"stars", c.stars},
          {"contributors", c.contributors}, {"watches", c.watches}};
}

}  // namespace

void TemplateStore::add(LiftedTemplate tmpl) {
  std::string id = tmpl.example_id;
  templates_.insert_or_assign(std::move(id), std::move(tmpl));
}

TemplateStore TemplateStore::load_dir(const std::string& dir) {
  TemplateStore store;
  fs::path root = fs::path(dir) / "templates";
  if (!fs::is_directory(root)) {
    throw std::runtime_error("no templates directory under " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      store.add(template_from_json(ss.str()));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
  }
  return store;
}

const LiftedTemplate* TemplateStore::find(std::string_view id) const {
  auto it = templates_.find(id);
  return it == templates_.end() ? nullptr : &it->second;
}

Service::Service(TemplateStore store, ServiceOptions options)
    : store_(std::make_shared<const TemplateStore>(std::move(store))),
      options_(options) {
  options_.max_sessions = std::max<std::size_t>(1, options_.max_sessions);
}

Service::~Service() = default;

std::size_t Service::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

Response Service::handle(std::string_view method, std::string_view path,
                         std::string_view body) {
  auto parts = split_path(path);
  bool get = method == "GET";
  bool post = method == "POST";
  try {
    if (parts.size() == 1 && parts[0] == "examples") {
      if (get) return list_examples();
    } else if (parts.size() == 3 && parts[0] == "examples" && parts[2] == "template") {
      if (get) return get_template(parts[1]);
    } else if (parts.size() == 1 && parts[0] == "sessions") {
      if (post) return create_session(body);
    } else if (parts.size() == 2 && parts[0] == "sessions") {
      if (get) return get_session(parts[1]);
    } else if (parts.size() == 3 && parts[0] == "sessions") {
      if (parts[2] == "select" && post) return post_selection(parts[1], body);
      if (parts[2] == "undo" && post) return post_undo(parts[1]);
      if (parts[2] == "render" && get) return get_render(parts[1]);
      if (parts[2] != "select" && parts[2] != "undo" && parts[2] != "render") {
        return error(404, "not_found", "no such endpoint");
      }
    } else {
      return error(404, "not_found", "no such endpoint");
    }
    return error(405, "method_not_allowed", "method not allowed on this endpoint");
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
}

Response Service::list_examples() const {
  json list = json::array();
  for (const auto& [id, tmpl] : store_->all()) {
    TemplateStats stats = template_stats(tmpl);
    list.push_back({{"id", id},
                    {"lines", stats.lines},
                    {"hotspots", stats.hotspot_count},
                    {"mean_options", stats.mean_options},
                    {"counterparts", tmpl.counterparts.size()}});
  }
  return ok({{"version", kServiceApiVersion}, {"examples", list}});
}

Response Service::get_template(std::string_view id) const {
  const LiftedTemplate* tmpl = store_->find(id);
  if (!tmpl) return error(404, "unknown_example", "no template for this example");
  return {200, template_to_json(*tmpl), "application/json"};
}

Response Service::create_session(std::string_view body) {
  json request;
  try {
    request = json::parse(body);
  } catch (const json::exception&) {
    return error(400, "bad_request", "body must be a JSON object");
  }
  if (!request.is_object() || !request.contains("example_id") ||
      !request["example_id"].is_string()) {
    return error(400, "bad_request", "example_id is required");
  }
  const LiftedTemplate* tmpl = store_->find(request["example_id"].get<std::string>());
  if (!tmpl) return error(404, "unknown_example", "no template for this example");

  auto session = std::make_shared<Session>();
  session->tmpl = tmpl;
  session->state = SelectionState(*tmpl);
  {
    std::lock_guard lock(mutex_);
    session->id = "s" + std::to_string(next_id_++);
    session->last_used = ++clock_;
    while (sessions_.size() >= options_.max_sessions) {
      auto oldest = std::min_element(
          sessions_.begin(), sessions_.end(), [](const auto& x, const auto& y) {
            return x.second->last_used < y.second->last_used;
          });
      sessions_.erase(oldest);
    }
    sessions_.emplace(session->id, session);
  }
  std::lock_guard lock(session->mutex);
  return {201, view(*session), "application/json"};
}

std::shared_ptr<Service::Session> Service::find_session(std::string_view id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_used = ++clock_;
  return it->second;
}

Response Service::get_session(std::string_view id) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown_session", "no such session");
  std::lock_guard lock(session->mutex);
  return {200, view(*session), "application/json"};
}

Response Service::post_selection(std::string_view id, std::string_view body) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown_session", "no such session");
  json request;
  try {
    request = json::parse(body);
  } catch (const json::exception&) {
    return error(400, "bad_request", "body must be a JSON object");
  }
  if (!request.is_object() || !request.contains("hotspot") ||
      !request.contains("option") || !request["hotspot"].is_number_unsigned() ||
      !request["option"].is_number_unsigned()) {
    return error(400, "bad_request", "hotspot and option must be non-negative integers");
  }
  std::lock_guard lock(session->mutex);
  try {
    session->state = select_option(*session->tmpl, session->state,
                                   request["hotspot"].get<std::size_t>(),
                                   request["option"].get<std::size_t>());
  } catch (const ConflictingSelection& e) {
    return error(409, "conflicting_selection", e.what());
  } catch (const InvalidSelection& e) {
    return error(400, "invalid_selection", e.what());
  }
  return {200, view(*session), "application/json"};
}

Response Service::post_undo(std::string_view id) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown_session", "no such session");
  std::lock_guard lock(session->mutex);
  try {
    session->state = undo(session->state);
  } catch (const EmptyHistory& e) {
    return error(410, "empty_history", e.what());
  }
  return {200, view(*session), "application/json"};
}

Response Service::get_render(std::string_view id) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown_session", "no such session");
  std::lock_guard lock(session->mutex);
  return {200, render(*session->tmpl, session->state), "text/plain; charset=utf-8"};
}

std::string Service::view(const Session& session) {
  const LiftedTemplate& tmpl = *session.tmpl;
  const SelectionState& state = session.state;
  json auto_chosen = json::array();
  for (std::size_t h = 0; h < state.chosen().size(); ++h) {
    if (state.chosen()[h] != 0 && !state.explicit_choices()[h]) auto_chosen.push_back(h);
  }
  json frequencies = json::array();
  for (std::size_t h = 0; h < tmpl.hotspots.size(); ++h) {
    json row = json::array();
    for (std::size_t o = 0; o < tmpl.hotspots[h].options.size(); ++o) {
      row.push_back(active_frequency(tmpl, state, h, o));
    }
    frequencies.push_back(std::move(row));
  }
  std::vector<std::size_t> ranked(state.active_counterparts().begin(),
                                  state.active_counterparts().end());
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
    return tmpl.counterparts[x].stars > tmpl.counterparts[y].stars;
  });
  json counterparts = json::array();
  for (std::size_t c : ranked) counterparts.push_back(counterpart_json(tmpl.counterparts[c], c));

  std::vector<bool> explicit_choices = state.explicit_choices();
  json j;
  j["version"] = kServiceApiVersion;
  j["session_id"] = session.id;
  j["example_id"] = tmpl.example_id;
  j["chosen"] = state.chosen();
  j["explicit"] = explicit_choices;
  j["auto_chosen"] = auto_chosen;
  j["active_counterparts"] = state.active_counterparts();
  j["counterparts"] = counterparts;
  j["frequencies"] = frequencies;
  j["history_depth"] = state.history_depth();
  return j.dump();
}

}  // namespace exstack
