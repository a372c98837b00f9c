// Copyright 2026 The stepcoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stepcoin/http_server.h"

#include <charconv>
#include <filesystem>
#include <string>
#include <utility>

#include "httplib.h"
#include "json_util.h"
#include "stepcoin/error.h"

namespace stepcoin {

using internal::Json;

namespace {

constexpr const char* kJsonType = "application/json; charset=utf-8";

Json SummaryToJson(const VideoSummary& s) {
  return {{"video_id", s.video_id},
          {"duration", s.duration},
          {"task_id", s.task_id},
          {"state", std::string(WorkflowStateName(s.state))},
          {"revision", s.revision},
          {"has_video_file", s.has_video_file}};
}

Json DraftToJson(const DraftAnnotation& d) {
  Json segments = Json::array();
  for (const Segment& s : d.segments) {
    segments.push_back({{"start", s.interval.start},
                        {"end", s.interval.end},
                        {"step_id", s.step_id}});
  }
  return {{"video_id", d.video_id},
          {"segments", std::move(segments)},
          {"author_pass", d.author_pass},
          {"worker", d.worker},
          {"saved_at", d.saved_at}};
}

DraftAnnotation DraftFromJson(const Json& j) {
  if (!j.is_object()) Throw(ErrorCode::kParseError, "draft must be an object");
  DraftAnnotation d;
  const Json& segments = internal::Member(j, "segments", "draft");
  if (!segments.is_array()) {
    Throw(ErrorCode::kParseError, "draft: segments must be an array");
  }
  for (const Json& s : segments) {
    d.segments.push_back({{internal::GetNumber(s, "start", "segment"),
                           internal::GetNumber(s, "end", "segment")},
                          internal::GetInt(s, "step_id", "segment")});
  }
  d.author_pass = internal::GetInt(j, "author_pass", "draft");
  if (auto it = j.find("worker"); it != j.end()) {
    if (!it->is_string()) {
      Throw(ErrorCode::kParseError, "draft: worker must be a string");
    }
    d.worker = it->get<std::string>();
  }
  return d;
}

std::int64_t GetRevision(const Json& body) {
  const Json& r = internal::Member(body, "expected_revision", "request");
  if (!r.is_number_integer()) {
    Throw(ErrorCode::kParseError, "request: expected_revision must be an integer");
  }
  return r.get<std::int64_t>();
}

Json ResultToJson(const SubmitResult& r) {
  return {{"revision", r.revision},
          {"state", std::string(WorkflowStateName(r.state))}};
}

void Reply(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(internal::Dump(body), kJsonType);
}

template <typename Handler>
httplib::Server::Handler Guard(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      Reply(res,
            {{"code", std::string(ErrorCodeName(e.code()))},
             {"message", e.what()}},
            HttpStatusFor(e.code()));
    } catch (const std::exception& e) {
      Reply(res, {{"code", "InternalError"}, {"message", e.what()}}, 500);
    }
  };
}

double ParseFps(const httplib::Request& req) {
  if (!req.has_param("fps")) return kDefaultFrameRate;
  const std::string text = req.get_param_value("fps");
  double fps = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), fps);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Throw(ErrorCode::kUnsupportedRate, "fps is not a number: '" + text + "'");
  }
  return fps;
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownProject:
    case ErrorCode::kUnknownVideo:
      return 404;
    case ErrorCode::kRevisionConflict:
    case ErrorCode::kWrongPass:
    case ErrorCode::kIncompleteProject:
      return 409;
    case ErrorCode::kValidationError:
    case ErrorCode::kUnknownTask:
      return 422;
    case ErrorCode::kIoError:
      return 500;
    default:
      return 400;
  }
}

struct HttpServer::Impl {
  AnnotationService& service;
  httplib::Server server;

  explicit Impl(AnnotationService& s) : service(s) { Routes(); }

  void Routes() {
    server.Get("/healthz", Guard([](const httplib::Request&,
                                    httplib::Response& res) {
                 Reply(res, {{"status", "ok"}});
               }));

    server.Get("/api/projects",
               Guard([this](const httplib::Request&, httplib::Response& res) {
                 Reply(res, {{"projects", service.ListProjects()}});
               }));

    server.Get("/api/projects/:p/videos",
               Guard([this](const httplib::Request& req,
                            httplib::Response& res) {
                 Json videos = Json::array();
                 for (const VideoSummary& s :
                      service.ListVideos(req.path_params.at("p"))) {
                   videos.push_back(SummaryToJson(s));
                 }
                 Reply(res, {{"videos", std::move(videos)}});
               }));

    server.Get("/api/projects/:p/videos/:v/frames",
               Guard([this](const httplib::Request& req,
                            httplib::Response& res) {
                 const double fps = ParseFps(req);
                 Json frames = Json::array();
                 for (const FrameRef& f :
                      service.GetFrames(req.path_params.at("p"),
                                        req.path_params.at("v"), fps)) {
                   frames.push_back({{"url", f.url}, {"timestamp", f.timestamp}});
                 }
                 Reply(res, {{"fps", fps}, {"frames", std::move(frames)}});
               }));

    server.Get("/api/projects/:p/videos/:v/annotation",
               Guard([this](const httplib::Request& req,
                            httplib::Response& res) {
                 const AnnotationView view = service.GetAnnotation(
                     req.path_params.at("p"), req.path_params.at("v"));
                 Json body = SummaryToJson(view.summary);
                 body["draft"] = view.draft ? DraftToJson(*view.draft) : Json();
                 Reply(res, body);
               }));

    server.Post("/api/projects/:p/videos/:v/annotation",
                Guard([this](const httplib::Request& req,
                             httplib::Response& res) {
                  const Json body = internal::ParseJson(req.body, "request");
                  DraftAnnotation draft =
                      DraftFromJson(internal::Member(body, "draft", "request"));
                  const std::int64_t revision = GetRevision(body);
                  bool complete = false;
                  if (auto it = body.find("complete"); it != body.end()) {
                    if (!it->is_boolean()) {
                      Throw(ErrorCode::kParseError,
                            "request: complete must be a boolean");
                    }
                    complete = it->get<bool>();
                  }
                  Reply(res, ResultToJson(service.SubmitAnnotation(
                                 req.path_params.at("p"),
                                 req.path_params.at("v"), std::move(draft),
                                 revision, complete)));
                }));

    server.Post("/api/projects/:p/videos/:v/advance",
                Guard([this](const httplib::Request& req,
                             httplib::Response& res) {
                  const Json body = internal::ParseJson(req.body, "request");
                  const int pass = internal::GetInt(body, "author_pass", "request");
                  Reply(res, ResultToJson(service.Advance(
                                 req.path_params.at("p"),
                                 req.path_params.at("v"), pass,
                                 GetRevision(body))));
                }));

    server.Get("/api/projects/:p/export",
               Guard([this](const httplib::Request& req,
                            httplib::Response& res) {
                 res.set_content(
                     service.ExportAnnotations(req.path_params.at("p")),
                     kJsonType);
               }));

    for (const char* name : {"frames", "videos"}) {
      const auto dir = service.data_dir() / name;
      if (std::filesystem::is_directory(dir)) {
        server.set_mount_point(std::string("/") + name, dir.string());
      }
    }
  }
};

HttpServer::HttpServer(AnnotationService& service)
    : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() = default;

int HttpServer::Bind(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    Throw(ErrorCode::kIoError,
          "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

int HttpServer::BindToAnyPort(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) Throw(ErrorCode::kIoError, "cannot bind " + host);
  return port;
}

void HttpServer::Listen() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace stepcoin
