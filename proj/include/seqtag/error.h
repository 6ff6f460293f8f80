// Copyright 2026 The Seqtag Authors.
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

#ifndef SEQTAG_ERROR_H_
#define SEQTAG_ERROR_H_

#include <stdexcept>
#include <string>

namespace seqtag {

// Broad failure classes. The C API maps these onto status codes and the CLI
// maps those onto exit codes.
enum class ErrorKind {
  kDimension,  // shape mismatch between operands
  kDomain,     // argument outside an operation's domain (empty input etc.)
  kConfig,     // invalid configuration or unusable combination of options
  kParse,      // malformed input file
  kIo,         // file could not be opened or written
  kNumeric,    // non-finite value produced during evaluation or training
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error DimensionError(const std::string &msg) {
  return Error(ErrorKind::kDimension, msg);
}
inline Error DomainError(const std::string &msg) {
  return Error(ErrorKind::kDomain, msg);
}
inline Error ConfigError(const std::string &msg) {
  return Error(ErrorKind::kConfig, msg);
}
inline Error ParseError(const std::string &msg) {
  return Error(ErrorKind::kParse, msg);
}
inline Error IoError(const std::string &msg) {
  return Error(ErrorKind::kIo, msg);
}
inline Error NumericError(const std::string &msg) {
  return Error(ErrorKind::kNumeric, msg);
}

}  // namespace seqtag

#endif  // SEQTAG_ERROR_H_
