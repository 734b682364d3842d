#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stallings/equation.hpp"
#include "stallings/word.hpp"

namespace stallings {

// Word syntax: lowercase is a generator, uppercase its inverse, juxtaposition
// is the product. Ranks up to 3 print as x, y, z; larger ranks print as
// x1, x2, ... The short names are accepted at any rank. The identity prints
// as "e" and parses from "e", "1" or the empty string.
//
// Equations add variables v1, v2, ... (V1 = v1^-1) to the word syntax.

std::string format_letter(Letter l, Alphabet alphabet);
std::string format_word(const Word& w);
std::string format_equation(const Equation& psi);

/// Largest generator index mentioned in `text` (at least 1).
int infer_rank(std::string_view text);

/// Throws MalformedInput. When `rank` is absent it is inferred from the text.
Word parse_word(std::string_view text, std::optional<int> rank = std::nullopt);

/// Comma- or whitespace-separated list of words over a common rank.
std::vector<Word> parse_word_list(std::string_view text, std::optional<int> rank = std::nullopt);

Equation parse_equation(std::string_view text, std::optional<int> rank = std::nullopt);

}  // namespace stallings
