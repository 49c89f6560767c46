// src/jsonl.h

// Copyright 2026  The sttopic Authors
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

#ifndef STTOPIC_SRC_JSONL_H_
#define STTOPIC_SRC_JSONL_H_

// Internal helpers for line-oriented JSON and text files.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sttopic::internal {

using Json = nlohmann::json;

/// Reads a whole file; throws DataError when it cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

/// Writes `contents` to `path`, creating parent directories.
void WriteFile(const std::filesystem::path &path, std::string_view contents);

/// Calls `fn(line_number, line)` for every non-blank line (1-based numbers).
void ForEachLine(const std::filesystem::path &path,
                 const std::function<void(std::size_t, const std::string &)> &fn);

/// Parses one JSON object line, converting syntax errors into ParseError.
Json ParseJsonLine(const std::string &line, std::size_t line_no);

const Json &RequireField(const Json &obj, const char *field, std::size_t line_no);
std::string RequireString(const Json &obj, const char *field, std::size_t line_no);
double RequireNumber(const Json &obj, const char *field, std::size_t line_no);
long long RequireInteger(const Json &obj, const char *field, std::size_t line_no);

/// Fixed-precision decimal rendering used by every CSV writer.
std::string FormatFixed(double value, int decimals);

}  // namespace sttopic::internal

#endif  // STTOPIC_SRC_JSONL_H_
