/*
   Copyright 2026 The tmod Authors

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

#ifndef TMOD_ERRORS_HPP
#define TMOD_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tmod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// A truncated series whose known coefficients are all zero was used where a
/// nonzero value (with a known valuation) is required.
class AmbiguousZero : public Error {
   public:
    explicit AmbiguousZero(std::int64_t precision)
        : Error("value is indistinguishable from zero below O(s^" + std::to_string(precision) + ")"),
          precision_(precision) {}
    std::int64_t precision() const noexcept { return precision_; }

   private:
    std::int64_t precision_;
};

/// Coefficient `index` of a polynomial in t has no known valuation.
class AmbiguousValuation : public Error {
   public:
    explicit AmbiguousValuation(std::size_t index)
        : Error("valuation of coefficient " + std::to_string(index) + " is not determined at the working precision"),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

   private:
    std::size_t index_;
};

class NotAUnit : public Error {
   public:
    NotAUnit() : Error("element is not a unit modulo s^k") {}
};

class SingleEdge : public Error {
   public:
    SingleEdge() : Error("Newton polygon has a single edge; nothing to split") {}
};

/// Raised when a computation cannot be completed at the working precision.
/// `suggested` is the precision a restart should use.
class PrecisionExhausted : public Error {
   public:
    PrecisionExhausted(const std::string& what, std::int64_t suggested)
        : Error(what + " (retry with precision >= " + std::to_string(suggested) + ")"), suggested_(suggested) {}
    std::int64_t suggested() const noexcept { return suggested_; }

   private:
    std::int64_t suggested_;
};

class NotATModule : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace tmod

#endif
