//
// Copyright 2026 The formattack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FORMATTACK_WORKER_H_
#define FORMATTACK_WORKER_H_

#include <chrono>
#include <string>
#include <variant>
#include <vector>

#include "formattack/document.h"
#include "formattack/extract.h"
#include "json.hpp"

// External extractor workers: child processes speaking line-delimited JSON
// on stdin/stdout. See docs/worker_protocol.md.
namespace formattack {

inline constexpr int kWorkerProtocolVersion = 1;

enum class WorkerMode { kScores, kValues };

// {"protocol_version": 1, "fields": [...]}
nlohmann::json HandshakeRecord(const std::vector<FieldConfig>& fields);
// {"doc_id", "page": {"width", "height"}, "words": [{"text", "box"}]}
nlohmann::json RequestRecord(const Document& doc);

// Validates the worker's handshake reply and returns its mode. Throws
// ProtocolError on a version or field mismatch.
WorkerMode ParseHandshakeReply(const nlohmann::json& reply,
                               const std::vector<FieldConfig>& fields);

// Validates a response record for `doc`: doc_id echo, and either an
// N x (M + 1) "scores" matrix or a "values" object of strings. Throws
// ProtocolError quoting the offending payload.
std::variant<TokenScores, ExtractionResult> ParseResponse(
    const nlohmann::json& response, const Document& doc,
    const std::vector<FieldConfig>& fields);

// A running worker process. Not thread-safe; one request in flight.
class WorkerProcess {
 public:
  WorkerProcess(std::string command, std::vector<FieldConfig> fields,
                std::chrono::milliseconds timeout);
  ~WorkerProcess();
  WorkerProcess(const WorkerProcess&) = delete;
  WorkerProcess& operator=(const WorkerProcess&) = delete;

  // Spawns `/bin/sh -c command` and performs the handshake.
  void Start();
  // Closes the worker's stdin and reaps it, killing it if it lingers.
  void Stop();
  bool running() const { return pid_ > 0; }
  WorkerMode mode() const { return mode_; }

  // Sends one record and waits for one reply line. On timeout or transport
  // failure the process is killed before the error is thrown.
  nlohmann::json Call(const nlohmann::json& record);

 private:
  void SendLine(const std::string& line);
  std::string ReadLine();
  void Kill();

  std::string command_;
  std::vector<FieldConfig> fields_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  WorkerMode mode_ = WorkerMode::kScores;
};

// One request/response exchange. Throws WorkerError subclasses.
std::variant<TokenScores, ExtractionResult> ExternalExtract(
    const Document& doc, WorkerProcess& worker,
    const std::vector<FieldConfig>& fields);

// Extractor backed by a worker. Scores-mode replies go through Postprocess.
// Per-document failures come back marked failed; a dead or timed-out worker
// is restarted on the next document.
class WorkerExtractor : public Extractor {
 public:
  // Starts the worker; handshake failures propagate.
  WorkerExtractor(std::string command, std::vector<FieldConfig> fields,
                  std::chrono::milliseconds timeout,
                  double threshold = kDefaultScoreThreshold);

  ExtractionResult Extract(const Document& doc) override;

 private:
  std::vector<FieldConfig> fields_;
  double threshold_;
  WorkerProcess worker_;
};

}  // namespace formattack

#endif  // FORMATTACK_WORKER_H_
