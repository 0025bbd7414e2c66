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

#ifndef FORMATTACK_ERRORS_H_
#define FORMATTACK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace formattack {

// Malformed input text (corpus line, config file, lexicon).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a data-model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: unknown transform, unknown parameter, bad range.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors raised while talking to an external extractor worker.
class WorkerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The worker process died or its pipes closed.
class TransportError : public WorkerError {
 public:
  using WorkerError::WorkerError;
};

// The worker answered with something that does not follow the protocol.
class ProtocolError : public WorkerError {
 public:
  using WorkerError::WorkerError;
};

class TimeoutError : public WorkerError {
 public:
  using WorkerError::WorkerError;
};

}  // namespace formattack

#endif  // FORMATTACK_ERRORS_H_
