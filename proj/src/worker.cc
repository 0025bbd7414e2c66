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

#include "formattack/worker.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <thread>

#include "formattack/corpus_io.h"
#include "formattack/errors.h"

namespace formattack {
namespace {

using nlohmann::json;

constexpr size_t kMaxLineBytes = 64 << 20;

std::string Excerpt(const json& payload) {
  std::string text = payload.dump();
  if (text.size() > 200) text = text.substr(0, 200) + "...";
  return text;
}

}  // namespace

json HandshakeRecord(const std::vector<FieldConfig>& fields) {
  json names = json::array();
  for (const FieldConfig& f : fields) names.push_back(f.name);
  return {{"protocol_version", kWorkerProtocolVersion}, {"fields", names}};
}

json RequestRecord(const Document& doc) {
  const json full = DocumentToJson(doc);
  return {{"doc_id", full["doc_id"]},
          {"page", full["page"]},
          {"words", full["words"]}};
}

WorkerMode ParseHandshakeReply(const json& reply,
                               const std::vector<FieldConfig>& fields) {
  if (!reply.is_object() || !reply.contains("protocol_version")) {
    throw ProtocolError("handshake reply lacks protocol_version: " +
                        Excerpt(reply));
  }
  if (reply["protocol_version"] != kWorkerProtocolVersion) {
    throw ProtocolError("worker protocol version " +
                        reply["protocol_version"].dump() + ", expected " +
                        std::to_string(kWorkerProtocolVersion));
  }
  if (reply.contains("fields") &&
      reply["fields"] != HandshakeRecord(fields)["fields"]) {
    throw ProtocolError("worker fields " + reply["fields"].dump() +
                        " do not match the configured fields");
  }
  const std::string mode = reply.value("mode", std::string());
  if (mode == "scores") return WorkerMode::kScores;
  if (mode == "values") return WorkerMode::kValues;
  throw ProtocolError("handshake reply has unknown mode: " + Excerpt(reply));
}

std::variant<TokenScores, ExtractionResult> ParseResponse(
    const json& response, const Document& doc,
    const std::vector<FieldConfig>& fields) {
  if (!response.is_object()) {
    throw ProtocolError("response is not an object: " + Excerpt(response));
  }
  if (response.value("doc_id", std::string()) != doc.doc_id) {
    throw ProtocolError("response doc_id does not match '" + doc.doc_id +
                        "': " + Excerpt(response));
  }
  if (response.contains("error")) {
    throw ProtocolError("worker reported an error: " + Excerpt(response));
  }
  if (response.contains("scores")) {
    const json& matrix = response["scores"];
    if (!matrix.is_array() || matrix.size() != doc.words.size()) {
      throw ProtocolError("scores must have one row per word (" +
                          std::to_string(doc.words.size()) +
                          "): " + Excerpt(response));
    }
    TokenScores scores;
    for (const json& row : matrix) {
      if (!row.is_array() || row.size() != fields.size() + 1) {
        throw ProtocolError("score rows must have " +
                            std::to_string(fields.size() + 1) +
                            " entries: " + Excerpt(row));
      }
      std::vector<double>& out = scores.rows.emplace_back();
      for (const json& v : row) {
        if (!v.is_number()) {
          throw ProtocolError("non-numeric score: " + Excerpt(row));
        }
        out.push_back(v.get<double>());
      }
    }
    return scores;
  }
  if (response.contains("values")) {
    const json& values = response["values"];
    if (!values.is_object()) {
      throw ProtocolError("values must be an object: " + Excerpt(response));
    }
    ExtractionResult result;
    result.doc_id = doc.doc_id;
    for (const auto& item : values.items()) {
      if (item.value().is_null()) continue;
      if (!item.value().is_string()) {
        throw ProtocolError("value for '" + item.key() +
                            "' is not a string: " + Excerpt(response));
      }
      const bool known =
          std::any_of(fields.begin(), fields.end(),
                      [&](const FieldConfig& f) { return f.name == item.key(); });
      if (!known) {
        throw ProtocolError("unknown field '" + item.key() + "' in values");
      }
      result.values[item.key()] = item.value().get<std::string>();
    }
    return result;
  }
  throw ProtocolError("response has neither scores nor values: " +
                      Excerpt(response));
}

WorkerProcess::WorkerProcess(std::string command,
                             std::vector<FieldConfig> fields,
                             std::chrono::milliseconds timeout)
    : command_(std::move(command)),
      fields_(std::move(fields)),
      timeout_(timeout) {}

WorkerProcess::~WorkerProcess() { Stop(); }

void WorkerProcess::Start() {
  if (running()) return;
  int fds[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw TransportError(std::string("socketpair: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw TransportError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(fds[1], STDIN_FILENO);
    dup2(fds[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  pid_ = pid;
  fd_ = fds[0];
  buffer_.clear();
  try {
    mode_ = ParseHandshakeReply(Call(HandshakeRecord(fields_)), fields_);
  } catch (const WorkerError&) {
    Kill();
    throw;
  }
}

void WorkerProcess::Kill() {
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }
  if (fd_ >= 0) close(fd_);
  pid_ = -1;
  fd_ = -1;
  buffer_.clear();
}

void WorkerProcess::Stop() {
  if (!running()) return;
  shutdown(fd_, SHUT_WR);
  for (int i = 0; i < 100; ++i) {
    if (waitpid(pid_, nullptr, WNOHANG) == pid_) {
      pid_ = -1;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  Kill();
}

void WorkerProcess::SendLine(const std::string& line) {
  std::string data = line + "\n";
  size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n =
        send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string why = std::strerror(errno);
      Kill();
      throw TransportError("writing to worker: " + why);
    }
    sent += static_cast<size_t>(n);
  }
}

std::string WorkerProcess::ReadLine() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    if (const size_t nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    if (buffer_.size() > kMaxLineBytes) {
      Kill();
      throw ProtocolError("worker reply line too long");
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      Kill();
      throw TimeoutError("worker did not answer within " +
                         std::to_string(timeout_.count()) + " ms");
    }
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      const std::string why = std::strerror(errno);
      Kill();
      throw TransportError("poll: " + why);
    }
    if (ready == 0) continue;
    char chunk[65536];
    const ssize_t n = recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string why = std::strerror(errno);
      Kill();
      throw TransportError("reading from worker: " + why);
    }
    if (n == 0) {
      Kill();
      throw TransportError("worker exited");
    }
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

json WorkerProcess::Call(const json& record) {
  if (!running()) throw TransportError("worker is not running");
  SendLine(record.dump());
  const std::string line = ReadLine();
  try {
    return json::parse(line);
  } catch (const json::parse_error&) {
    throw ProtocolError("worker reply is not JSON: " + line.substr(0, 200));
  }
}

std::variant<TokenScores, ExtractionResult> ExternalExtract(
    const Document& doc, WorkerProcess& worker,
    const std::vector<FieldConfig>& fields) {
  const json response = worker.Call(RequestRecord(doc));
  auto parsed = ParseResponse(response, doc, fields);
  const bool got_scores = std::holds_alternative<TokenScores>(parsed);
  if (got_scores != (worker.mode() == WorkerMode::kScores)) {
    throw ProtocolError("response kind does not match the declared mode: " +
                        Excerpt(response));
  }
  return parsed;
}

WorkerExtractor::WorkerExtractor(std::string command,
                                 std::vector<FieldConfig> fields,
                                 std::chrono::milliseconds timeout,
                                 double threshold)
    : fields_(fields),
      threshold_(threshold),
      worker_(std::move(command), std::move(fields), timeout) {
  worker_.Start();
}

ExtractionResult WorkerExtractor::Extract(const Document& doc) {
  try {
    worker_.Start();
    auto out = ExternalExtract(doc, worker_, fields_);
    if (auto* scores = std::get_if<TokenScores>(&out)) {
      return Postprocess(*scores, doc, fields_, threshold_);
    }
    return std::get<ExtractionResult>(std::move(out));
  } catch (const WorkerError& e) {
    ExtractionResult failed;
    failed.doc_id = doc.doc_id;
    failed.failed = true;
    failed.error = e.what();
    return failed;
  }
}

}  // namespace formattack
