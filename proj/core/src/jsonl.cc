// src/jsonl.cc

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

#include "jsonl.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sttopic/error.h"

namespace sttopic::internal {

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path &path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

void ForEachLine(const std::filesystem::path &path,
                 const std::function<void(std::size_t, const std::string &)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line_no, line);
  }
}

Json ParseJsonLine(const std::string &line, std::size_t line_no) {
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const Json::parse_error &e) {
    throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");
  return obj;
}

const Json &RequireField(const Json &obj, const char *field, std::size_t line_no) {
  auto it = obj.find(field);
  if (it == obj.end()) throw FieldError(line_no, field, "missing required field");
  return *it;
}

std::string RequireString(const Json &obj, const char *field, std::size_t line_no) {
  const Json &v = RequireField(obj, field, line_no);
  if (!v.is_string()) throw FieldError(line_no, field, "expected a string");
  return v.get<std::string>();
}

double RequireNumber(const Json &obj, const char *field, std::size_t line_no) {
  const Json &v = RequireField(obj, field, line_no);
  if (!v.is_number()) throw FieldError(line_no, field, "expected a number");
  return v.get<double>();
}

long long RequireInteger(const Json &obj, const char *field, std::size_t line_no) {
  const Json &v = RequireField(obj, field, line_no);
  if (!v.is_number_integer()) throw FieldError(line_no, field, "expected an integer");
  return v.get<long long>();
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  // Avoid "-0.0" in outputs.
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

}  // namespace sttopic::internal
