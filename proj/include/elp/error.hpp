// Copyright 2026 The ELP Authors.
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

#ifndef ELP_ERROR_HPP_
#define ELP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace elp {

// Broad failure category. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInvalidArgument,  // caller broke a precondition
  kIo,               // file could not be opened, read or written
  kDataIntegrity,    // input data malformed or failed a checksum
  kConflict,         // Dempster combination with total conflict
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::kInvalidArgument, what);
}
inline Error io_error(const std::string& what) {
  return Error(ErrorKind::kIo, what);
}
inline Error data_error(const std::string& what) {
  return Error(ErrorKind::kDataIntegrity, what);
}

}  // namespace elp

#endif  // ELP_ERROR_HPP_
