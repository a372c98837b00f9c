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

#ifndef STEPCOIN_HTTP_SERVER_H_
#define STEPCOIN_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "stepcoin/annotation_service.h"
#include "stepcoin/error.h"

namespace stepcoin {

// JSON API over an AnnotationService:
//
//   GET  /healthz
//   GET  /api/projects
//   GET  /api/projects/:p/videos
//   GET  /api/projects/:p/videos/:v/frames?fps=2
//   GET  /api/projects/:p/videos/:v/annotation
//   POST /api/projects/:p/videos/:v/annotation
//   POST /api/projects/:p/videos/:v/advance
//   GET  /api/projects/:p/export
//
// Frame images are served from <data>/frames under /frames/ and original
// videos from <data>/videos under /videos/ (with range support). Errors are
// {"code": ..., "message": ...}.
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port. Throws kIoError.
  int Bind(const std::string& host, int port);
  int BindToAnyPort(const std::string& host);

  // Blocks until Stop().
  void Listen();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Maps an error code to the HTTP status the server answers with.
int HttpStatusFor(ErrorCode code);

}  // namespace stepcoin

#endif  // STEPCOIN_HTTP_SERVER_H_
