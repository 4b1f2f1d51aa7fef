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

#ifndef TMOD_INPUT_HPP
#define TMOD_INPUT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmod/analyzer.hpp"
#include "tmod/perfect_field.hpp"
#include "tmod/skew_tau.hpp"

namespace tmod {

/**
 * Parses an entry of phi_t:
 *
 *   expr   := ["-"] term (("+" | "-") term)*
 *   term   := factor (("*" | "/") factor)*
 *   factor := "-" factor | atom ["^" ["-"] int]
 *   atom   := "tau" | "th" | "g" | "root" "(" expr "," int ")" | int | "(" expr ")"
 *
 * `g` is the fixed generator of F_q; `root(E, m)` is E^(1/q^m). Divisors,
 * negative powers and root() arguments must be tau-free. Products are
 * expanded with tau * c = c^q * tau. Errors carry positions relative to
 * (line, column).
 */
SkewTauPoly parse_entry(std::string_view text, const FieldConfig& k, std::size_t line = 1, std::size_t column = 1);

/// A tau-free expression.
PerfectFieldElement parse_scalar(std::string_view text, const FieldConfig& k, std::size_t line = 1,
                                 std::size_t column = 1);

struct InputDocument {
    std::uint32_t q = 0;
    FieldMode mode = FieldMode::RationalPerfection;
    int d = 0;
    /// Entry expressions in canonical rendering.
    std::vector<std::vector<std::string>> phi_t;
    /// l(t), canonical; unset means th (or the unique admissible constant
    /// over F_q).
    std::optional<std::string> characteristic;
    std::optional<std::int64_t> precision;
    std::optional<std::int64_t> precision_cap;
    std::optional<int> max_n;
    bool check = false;

    friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Key/value text, or JSON when the first non-blank character is '{'.
InputDocument parse_document(std::string_view text);

/// Canonical key/value text; parse_document(render_document(x)) == x.
std::string render_document(const InputDocument& doc);

FieldConfig field_of(const InputDocument& doc);
TModule build_module(const InputDocument& doc);

/// Options from the document, before command-line overrides.
AnalysisOptions options_of(const InputDocument& doc);

}  // namespace tmod

#endif
