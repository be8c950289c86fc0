/*
Copyright 2026 The CQNV Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Exception types thrown by the codec library.
//
// Everything derives from cqnv::Error so callers can catch the family in one
// place; the command-line tool maps the subclasses onto exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace cqnv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: wrong vector length, bad parameter ranges.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InvalidArgument {
 public:
  DimensionError(const std::string& what, std::size_t expected,
                 std::size_t actual)
      : InvalidArgument(what + ": expected dimension " +
                        std::to_string(expected) + ", got " +
                        std::to_string(actual)) {}
};

class EmptyInputError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// LSP vector is not strictly increasing inside (0, pi).
class LspOrderError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Root search on P(z)/Q(z) did not find the expected number of roots.
class LspConversionError : public Error {
 public:
  LspConversionError(const std::string& what, long frame_index)
      : Error(frame_index >= 0
                  ? what + " (frame " + std::to_string(frame_index) + ")"
                  : what),
        frame_index_(frame_index) {}

  long frame_index() const { return frame_index_; }

 private:
  long frame_index_;
};

// A field value does not fit its declared bit width.
class OverflowError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Malformed file contents: bad magic, truncated data, CRC mismatch.
class FormatError : public Error {
 public:
  using Error::Error;
};

class CrcError : public FormatError {
 public:
  using FormatError::FormatError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cqnv
