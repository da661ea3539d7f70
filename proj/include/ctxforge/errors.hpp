// Copyright 2026 The ctxforge Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctxforge {

/// Root of every error this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyField : public Error {
 public:
  explicit EmptyField(const std::string& field)
      : Error("field '" + field + "' must not be empty"), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Malformed arithmetic; `offset` is a byte offset into the parsed source.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : Error("parse error at offset " + std::to_string(offset) + ": expected " +
              expected),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class FormulaParseError : public Error {
 public:
  FormulaParseError(std::size_t position, const std::string& message)
      : Error("formula does not parse: " + message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class IllegalTransition : public Error {
 public:
  IllegalTransition(const std::string& from, const std::string& event)
      : Error("illegal transition: event '" + event + "' from state '" + from + "'"),
        from_(from),
        event_(event) {}
  const std::string& from_state() const { return from_; }
  const std::string& event() const { return event_; }

 private:
  std::string from_;
  std::string event_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class CorruptWorkspace : public Error {
 public:
  using Error::Error;
};

class UnresolvedVariant : public Error {
 public:
  using Error::Error;
};

/// JSON that does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Violated operation precondition (empty batch, bad policy, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxforge
