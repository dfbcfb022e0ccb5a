// Copyright 2026 The CMWU Authors
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

#ifndef CMWU_ERRORS_H_
#define CMWU_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cmwu {

// Base class for every error raised by the library. Subclasses identify the
// failure category so that callers (and the CLI exit codes) can tell a bad
// input file apart from, say, a protocol misuse.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions between a game, a strategy, or a payoff vector.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Values outside the mathematical domain of an operation (negative payoffs,
// non-finite numbers, invalid probability vectors, negative step sizes).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: unknown generator kinds, step sizes that break the
// contraction precondition in strict mode, bad flag combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Misuse of the round-synchronous learning protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (game files, weight vectors).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmwu

#endif  // CMWU_ERRORS_H_
