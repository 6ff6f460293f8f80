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

#ifndef SEQTAG_LOG_H_
#define SEQTAG_LOG_H_

#include <string>

namespace seqtag {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Level from SEQTAG_LOG_LEVEL (error, info or debug); info when unset.
LogLevel CurrentLogLevel();
void SetLogLevel(LogLevel level);
bool LogEnabled(LogLevel level);

// Writes "[level] message" to stderr when the level is enabled.
void Log(LogLevel level, const std::string &message);

}  // namespace seqtag

#endif  // SEQTAG_LOG_H_
