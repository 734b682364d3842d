#include "stallings/text.hpp"

#include <algorithm>
#include <cctype>

#include "stallings/errors.hpp"

namespace stallings {
namespace {

struct Token {
  bool is_variable = false;
  int index = 0;
  int sign = 1;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Tokenizes the joint word/equation syntax. Variables are rejected unless
// `allow_variables` is set.
std::vector<Token> tokenize(std::string_view text, bool allow_variables) {
  std::vector<Token> tokens;
  std::string_view trimmed = text;
  while (!trimmed.empty() && is_space(trimmed.front())) trimmed.remove_prefix(1);
  while (!trimmed.empty() && is_space(trimmed.back())) trimmed.remove_suffix(1);
  if (trimmed.empty() || trimmed == "e" || trimmed == "1") return tokens;

  std::size_t i = 0;
  while (i < trimmed.size()) {
    const char c = trimmed[i];
    if (is_space(c) || c == '.' || c == '*') {
      ++i;
      continue;
    }
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const int sign = std::isupper(static_cast<unsigned char>(c)) ? -1 : 1;
    std::size_t j = i + 1;
    while (j < trimmed.size() && is_digit(trimmed[j])) ++j;
    const std::string_view digits = trimmed.substr(i + 1, j - i - 1);
    int number = 0;
    for (char d : digits) {
      number = number * 10 + (d - '0');
      if (number > 1'000'000) throw MalformedInput("index too large in '" + std::string(text) + "'");
    }

    Token tok;
    tok.sign = sign;
    if (lower == 'v') {
      if (!allow_variables) throw MalformedInput("variables are not allowed in a word: '" + std::string(text) + "'");
      if (digits.empty() || number < 1) throw MalformedInput("variable needs an index >= 1: '" + std::string(text) + "'");
      tok.is_variable = true;
      tok.index = number;
    } else if (lower == 'x' && !digits.empty()) {
      if (number < 1) throw MalformedInput("generator index must be >= 1: '" + std::string(text) + "'");
      tok.index = number;
    } else if (digits.empty() && (lower == 'x' || lower == 'y' || lower == 'z')) {
      tok.index = lower - 'x' + 1;
    } else {
      throw MalformedInput("unexpected character '" + std::string(1, c) + "' in '" + std::string(text) + "'");
    }
    tokens.push_back(tok);
    i = j;
  }
  return tokens;
}

int max_generator(const std::vector<Token>& tokens) {
  int r = 1;
  for (const Token& t : tokens) {
    if (!t.is_variable) r = std::max(r, t.index);
  }
  return r;
}

}  // namespace

std::string format_letter(Letter l, Alphabet alphabet) {
  if (alphabet.rank() <= 3) {
    const char base = static_cast<char>('x' + l.generator() - 1);
    return std::string(1, l.is_inverse() ? static_cast<char>(std::toupper(base)) : base);
  }
  return (l.is_inverse() ? "X" : "x") + std::to_string(l.generator());
}

std::string format_word(const Word& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (Letter l : w.letters()) out += format_letter(l, w.alphabet());
  return out;
}

std::string format_equation(const Equation& psi) {
  if (psi.terms().empty()) return "e";
  std::string out;
  for (const Term& t : psi.terms()) {
    if (t.is_variable()) {
      out += (t.sign < 0 ? "V" : "v") + std::to_string(t.index);
    } else {
      out += format_letter(Letter(t.index, t.sign), psi.alphabet());
    }
  }
  return out;
}

int infer_rank(std::string_view text) { return max_generator(tokenize(text, true)); }

Word parse_word(std::string_view text, std::optional<int> rank) {
  const auto tokens = tokenize(text, false);
  const Alphabet alphabet(rank.value_or(max_generator(tokens)));
  std::vector<Letter> letters;
  letters.reserve(tokens.size());
  for (const Token& t : tokens) letters.emplace_back(t.index, t.sign);
  return Word(alphabet, letters);
}

std::vector<Word> parse_word_list(std::string_view text, std::optional<int> rank) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',' || text[i] == ';' || text[i] == '\n') {
      std::string_view item = text.substr(start, i - start);
      while (!item.empty() && is_space(item.front())) item.remove_prefix(1);
      while (!item.empty() && is_space(item.back())) item.remove_suffix(1);
      if (!item.empty()) items.push_back(item);
      start = i + 1;
    }
  }
  int r = rank.value_or(1);
  if (!rank) {
    for (auto item : items) r = std::max(r, infer_rank(item));
  }
  std::vector<Word> words;
  words.reserve(items.size());
  for (auto item : items) words.push_back(parse_word(item, r));
  return words;
}

Equation parse_equation(std::string_view text, std::optional<int> rank) {
  const auto tokens = tokenize(text, true);
  int num_vars = 0;
  for (const Token& t : tokens) {
    if (t.is_variable) num_vars = std::max(num_vars, t.index);
  }
  std::vector<Term> terms;
  terms.reserve(tokens.size());
  for (const Token& t : tokens) {
    terms.push_back(t.is_variable ? Term::variable(t.index, t.sign) : Term::constant(Letter(t.index, t.sign)));
  }
  return Equation(num_vars, Alphabet(rank.value_or(max_generator(tokens))), terms);
}

}  // namespace stallings
