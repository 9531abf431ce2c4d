// Copyright 2026 The nlsat Authors
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

namespace nlsat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested instance is larger than the backend can hold.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Gate or register indices repeat, are out of range, or do not match the gate arity.
class BadWiring : public Error {
public:
    using Error::Error;
};

/// A non-unitary step left (numerically) nothing to renormalize.
class DegenerateCancellation : public Error {
public:
    using Error::Error;
};

/// The iterated drive did not reach its residual tolerance within max_steps.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Always a simulator bug, never bad input.
class IntegrityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {
    }

    std::size_t line() const noexcept {
        return line_;
    }

private:
    std::size_t line_;
};

}  // namespace nlsat
