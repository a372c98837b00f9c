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

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "stepcoin/io.h"
#include "support/test_util.h"

namespace stepcoin {
namespace {

using Json = nlohmann::json;
using test::MakeLexicon;
using test::TempDir;

class HttpServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    AnnotationService::CreateProject(
        dir_.path(),
        {"demo",
         {{"b", 10.0, 0, "b", {2.0}, ""}, {"a", 4.0, 1, "a", {10.0}, "a.mp4"}}},
        MakeLexicon({3, 2}));
    std::filesystem::create_directories(dir_.path() / "frames/a/10");
    WriteFileAtomic(dir_.path() / "frames/a/10/000003.jpg", "jpeg-bytes");
    std::filesystem::create_directories(dir_.path() / "videos");
    WriteFileAtomic(dir_.path() / "videos/a.mp4", "0123456789");

    service_ = std::make_unique<AnnotationService>(dir_.path());
    server_ = std::make_unique<HttpServer>(*service_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    thread_ = std::jthread([this] { server_->Listen(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_->Stop();
    thread_.join();
  }

  httplib::Result Post(const std::string& path, const Json& body) {
    return client_->Post(path, body.dump(), "application/json");
  }

  static Json Body(const httplib::Result& res) { return Json::parse(res->body); }

  TempDir dir_;
  std::unique_ptr<AnnotationService> service_;
  std::unique_ptr<HttpServer> server_;
  std::jthread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(HttpServerTest, Health) {
  const auto res = client_->Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Body(res)["status"], "ok");
}

TEST_F(HttpServerTest, ListProjectsAndVideos) {
  EXPECT_EQ(Body(client_->Get("/api/projects"))["projects"], Json::array({"demo"}));
  const auto res = client_->Get("/api/projects/demo/videos");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  const Json videos = Body(res)["videos"];
  ASSERT_EQ(videos.size(), 2u);
  EXPECT_EQ(videos[0]["video_id"], "a");
  EXPECT_EQ(videos[0]["state"], "PASS1");
  EXPECT_EQ(videos[0]["revision"], 0);
  EXPECT_EQ(videos[0]["has_video_file"], true);
  EXPECT_EQ(videos[1]["video_id"], "b");
  EXPECT_EQ(videos[1]["has_video_file"], false);
}

TEST_F(HttpServerTest, UnknownProjectIs404) {
  const auto res = client_->Get("/api/projects/nope/videos");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(Body(res)["code"], "UnknownProject");
}

TEST_F(HttpServerTest, Frames) {
  auto res = client_->Get("/api/projects/demo/videos/b/frames");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  Json body = Body(res);
  EXPECT_EQ(body["frames"].size(), 20u);
  EXPECT_EQ(body["frames"][1]["url"], "/frames/b/2/000001.jpg");
  EXPECT_EQ(body["frames"][1]["timestamp"], 0.5);

  res = client_->Get("/api/projects/demo/videos/a/frames?fps=5");
  body = Body(res);
  EXPECT_EQ(body["frames"].size(), 20u);
  EXPECT_EQ(body["frames"][1]["url"], "/frames/a/10/000002.jpg");

  res = client_->Get("/api/projects/demo/videos/a/frames?fps=7.3");
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(Body(res)["code"], "UnsupportedRate");
  res = client_->Get("/api/projects/demo/videos/a/frames?fps=fast");
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(Body(res)["code"], "UnsupportedRate");
}

TEST_F(HttpServerTest, StaticFramesAndVideoRanges) {
  auto res = client_->Get("/frames/a/10/000003.jpg");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "jpeg-bytes");

  res = client_->Get("/videos/a.mp4", {{"Range", "bytes=2-5"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 206);
  EXPECT_EQ(res->body, "2345");
}

TEST_F(HttpServerTest, SubmitAndRead) {
  const Json draft = {{"segments", {{{"start", 0.5}, {"end", 2.0}, {"step_id", 3}}}},
                      {"author_pass", 1},
                      {"worker", "w1"}};
  auto res = Post("/api/projects/demo/videos/a/annotation",
                  {{"draft", draft}, {"expected_revision", 0}, {"complete", true}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Body(res), (Json{{"revision", 1}, {"state", "PASS2"}}));

  res = client_->Get("/api/projects/demo/videos/a/annotation");
  const Json view = Body(res);
  EXPECT_EQ(view["revision"], 1);
  EXPECT_EQ(view["state"], "PASS2");
  EXPECT_EQ(view["draft"]["worker"], "w1");
  EXPECT_EQ(view["draft"]["segments"][0]["step_id"], 3);
  res = client_->Get("/api/projects/demo/videos/b/annotation");
  ASSERT_TRUE(res);
  EXPECT_TRUE(Body(res)["draft"].is_null());
}

TEST_F(HttpServerTest, ErrorStatuses) {
  const Json draft = {{"segments", Json::array()}, {"author_pass", 1}, {"worker", "w"}};
  auto res = Post("/api/projects/demo/videos/a/annotation",
                  {{"draft", draft}, {"expected_revision", 5}});
  EXPECT_EQ(res->status, 409);
  EXPECT_EQ(Body(res)["code"], "RevisionConflict");

  Json wrong = draft;
  wrong["author_pass"] = 2;
  res = Post("/api/projects/demo/videos/a/annotation",
             {{"draft", wrong}, {"expected_revision", 0}});
  EXPECT_EQ(res->status, 409);
  EXPECT_EQ(Body(res)["code"], "WrongPass");

  Json bad = draft;
  bad["segments"] = {{{"start", 3.0}, {"end", 1.0}, {"step_id", 0}}};
  res = Post("/api/projects/demo/videos/a/annotation",
             {{"draft", bad}, {"expected_revision", 0}});
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(Body(res)["code"], "ValidationError");

  res = client_->Post("/api/projects/demo/videos/a/annotation", "{not json",
                      "application/json");
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(Body(res)["code"], "ParseError");

  res = client_->Get("/api/projects/demo/videos/zz/annotation");
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(Body(res)["code"], "UnknownVideo");

  res = client_->Get("/api/projects/demo/export");
  EXPECT_EQ(res->status, 409);
  EXPECT_EQ(Body(res)["code"], "IncompleteProject");
}

TEST_F(HttpServerTest, AdvanceThroughExport) {
  for (const char* video : {"a", "b"}) {
    for (int pass = 1; pass <= 3; ++pass) {
      const auto res = Post(std::string("/api/projects/demo/videos/") + video + "/advance",
                            {{"author_pass", pass}, {"expected_revision", pass - 1}});
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 200) << res->body;
    }
  }
  const auto res = client_->Get("/api/projects/demo/export");
  ASSERT_EQ(res->status, 200);
  const auto videos = LoadAnnotations(res->body, MakeLexicon({3, 2}));
  ASSERT_EQ(videos.size(), 2u);
  EXPECT_EQ(videos[0].video_id, "a");
  EXPECT_EQ(videos[0].task_id, 1);
}

TEST(HttpStatusTest, Mapping) {
  EXPECT_EQ(HttpStatusFor(ErrorCode::kUnknownProject), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kUnknownVideo), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kRevisionConflict), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kWrongPass), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kIncompleteProject), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kValidationError), 422);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kIoError), 500);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kParseError), 400);
}

}  // namespace
}  // namespace stepcoin
