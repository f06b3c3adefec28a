// Copyright 2026 The morphseg Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace morphseg {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed analyzed-corpus line. Line numbers are 1-based and only known
// when the caller supplies them; columns are 1-based byte offsets.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column,
             std::optional<std::size_t> line = std::nullopt)
      : Error(format(what, column, line)),
        reason_(what),
        column_(column),
        line_(line) {}

  const std::string& reason() const { return reason_; }
  std::size_t column() const { return column_; }
  std::optional<std::size_t> line() const { return line_; }

  ParseError with_line(std::size_t line) const {
    return ParseError(reason_, column_, line);
  }

 private:
  static std::string format(const std::string& what, std::size_t column,
                            std::optional<std::size_t> line) {
    std::string out;
    if (line) out += "line " + std::to_string(*line) + ", ";
    out += "column " + std::to_string(column) + ": " + what;
    return out;
  }

  std::string reason_;
  std::size_t column_;
  std::optional<std::size_t> line_;
};

// A morpheme or subword already contains one of the marker glyphs.
class MarkerCollisionError : public Error {
 public:
  MarkerCollisionError(std::string text, std::string glyph,
                       std::optional<std::size_t> token_index = std::nullopt)
      : Error(format(text, glyph, token_index)),
        text_(std::move(text)),
        glyph_(std::move(glyph)),
        token_index_(token_index) {}

  const std::string& text() const { return text_; }
  const std::string& glyph() const { return glyph_; }
  std::optional<std::size_t> token_index() const { return token_index_; }

  MarkerCollisionError with_token_index(std::size_t index) const {
    return MarkerCollisionError(text_, glyph_, index);
  }

 private:
  static std::string format(const std::string& text, const std::string& glyph,
                            std::optional<std::size_t> token_index) {
    std::string out;
    if (token_index) out += "token " + std::to_string(*token_index) + ": ";
    out += "'" + text + "' contains marker glyph '" + glyph + "'";
    return out;
  }

  std::string text_;
  std::string glyph_;
  std::optional<std::size_t> token_index_;
};

// Marker sequence in a segmented line that cannot be resolved.
class StructureError : public Error {
 public:
  StructureError(const std::string& what, std::size_t token_index)
      : Error("token " + std::to_string(token_index) + ": " + what),
        token_index_(token_index) {}

  std::size_t token_index() const { return token_index_; }

 private:
  std::size_t token_index_;
};

// Malformed BPE model file.
class ModelFormatError : public Error {
 public:
  ModelFormatError(const std::string& what, std::size_t line)
      : Error("model line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace morphseg
