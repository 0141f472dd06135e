// Copyright 2026 The dimwit Authors
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

#include <stdexcept>
#include <string>

namespace dimwit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension or scenario shape.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A parameter lies outside the domain of the operation.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A requested enumeration or table exceeds the configured size guard.
class GuardExceeded : public Error {
   public:
    using Error::Error;
};

/// Malformed input text (protocol, table, or counts files).
class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace dimwit
