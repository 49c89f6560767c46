// sttopic/error.h

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

#ifndef STTOPIC_ERROR_H_
#define STTOPIC_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sttopic {

/// Broad failure classes. The CLI maps these onto process exit codes
/// (usage 2, data 3, numerical 4).
enum class ErrorKind { kUsage, kData, kNumerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &what) : Error(ErrorKind::kUsage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string &what) : Error(ErrorKind::kData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorKind::kNumerical, what) {}
};

/// A record in a line-oriented input could not be parsed.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string &what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A record parsed but a required field is missing or has the wrong type.
class FieldError : public ParseError {
 public:
  FieldError(std::size_t line, const std::string &field, const std::string &what)
      : ParseError(line, "field '" + field + "': " + what), field_(field) {}
  const std::string &field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace sttopic

#endif  // STTOPIC_ERROR_H_
