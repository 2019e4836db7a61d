// mdcg/error.hpp

// Copyright 2026  The mdcg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace mdcg {

// Base error for all contract violations raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration (bad schema, out-of-range knob). CLI exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// A checkpoint that was asked for does not exist or is unusable. Exit code 3.
class CheckpointError : public Error {
 public:
  explicit CheckpointError(const std::string& what) : Error(what) {}
};

// Filesystem / encoding failures. CLI exit code 4.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

namespace detail {

template <typename... Args>
std::string concat_message(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace detail

template <typename... Args>
void require(bool cond, Args&&... args) {
  if (!cond) throw Error(detail::concat_message(std::forward<Args>(args)...));
}

template <typename... Args>
void require_config(bool cond, Args&&... args) {
  if (!cond)
    throw ConfigError(detail::concat_message(std::forward<Args>(args)...));
}

template <typename... Args>
void require_io(bool cond, Args&&... args) {
  if (!cond) throw IoError(detail::concat_message(std::forward<Args>(args)...));
}

}  // namespace mdcg
