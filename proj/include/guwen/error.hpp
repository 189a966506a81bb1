// Copyright 2026 The Guwen Authors.
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

#ifndef GUWEN_ERROR_HPP_
#define GUWEN_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace guwen {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: bad training lines, unknown tags, length mismatches.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid UTF-8. `offset()` is the byte offset of the first bad byte.
class DecodeError : public DataError {
 public:
  explicit DecodeError(std::size_t offset)
      : DataError("invalid UTF-8 at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Missing, unreadable or inconsistent model files.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Overflow, NaN or divergence during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace guwen

#endif  // GUWEN_ERROR_HPP_
