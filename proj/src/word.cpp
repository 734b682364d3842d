#include "stallings/word.hpp"

#include <algorithm>
#include <string>

#include "stallings/errors.hpp"

namespace stallings {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 0) {
    throw MalformedInput("alphabet rank must be non-negative, got " + std::to_string(rank));
  }
}

Word::Word(Alphabet alphabet, std::span<const Letter> letters) : alphabet_(alphabet) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!alphabet.contains(l.generator())) {
      throw MalformedInput("generator index " + std::to_string(l.generator()) +
                           " outside alphabet of rank " + std::to_string(alphabet.rank()));
    }
    // stack-based cancellation
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::generator(Alphabet alphabet, int index, int sign) {
  const Letter l(index, sign);
  return Word(alphabet, std::span<const Letter>(&l, 1));
}

Word Word::from_signed(Alphabet alphabet, std::initializer_list<int> letters) {
  std::vector<Letter> raw;
  raw.reserve(letters.size());
  for (int v : letters) {
    if (v == 0) throw MalformedInput("letter 0 is not a generator");
    raw.push_back(Letter::from_signed(v));
  }
  return Word(alphabet, raw);
}

Word Word::lifted(Alphabet larger) const { return Word(larger, letters_); }

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto la = a.letters();
  const auto lb = b.letters();
  return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
}

Word free_reduce(Alphabet alphabet, std::span<const Letter> letters) { return Word(alphabet, letters); }

namespace {

void require_same_alphabet(const Word& u, const Word& v) {
  if (u.alphabet() != v.alphabet()) {
    throw AlphabetMismatch("words over ranks " + std::to_string(u.rank()) + " and " +
                           std::to_string(v.rank()));
  }
}

}  // namespace

Word multiply(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  std::vector<Letter> raw(u.letters().begin(), u.letters().end());
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), raw);
}

Word invert(const Word& w) {
  std::vector<Letter> raw;
  raw.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) raw.push_back(it->inverse());
  return Word(w.alphabet(), raw);
}

Word power(const Word& w, int m) {
  const Word base = m < 0 ? invert(w) : w;
  const int times = m < 0 ? -m : m;
  std::vector<Letter> raw;
  raw.reserve(base.length() * static_cast<std::size_t>(times));
  for (int i = 0; i < times; ++i) raw.insert(raw.end(), base.letters().begin(), base.letters().end());
  return Word(w.alphabet(), raw);
}

Word commutator(const Word& u, const Word& v) { return u * v * invert(u) * invert(v); }

bool is_cyclically_reduced(const Word& w) {
  return w.length() < 2 || w.letters().front() != w.letters().back().inverse();
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {Word(w.alphabet(), letters.subspan(lo, hi - lo)), Word(w.alphabet(), letters.first(lo))};
}

std::optional<Word> mth_root(const Word& g, int m) {
  if (m < 0) throw PreconditionViolation("mth_root requires m >= 0; pass |m| with g inverted");
  if (m == 0) {
    if (g.is_identity()) return Word(g.alphabet());
    return std::nullopt;
  }
  const auto [core, conjugator] = cyclic_reduce(g);
  if (core.is_identity()) return Word(g.alphabet());
  const std::size_t n = core.length();
  const auto um = static_cast<std::size_t>(m);
  if (n % um != 0) return std::nullopt;
  const std::size_t period = n / um;
  const auto letters = core.letters();
  for (std::size_t i = period; i < n; ++i) {
    if (letters[i] != letters[i - period]) return std::nullopt;
  }
  const Word prefix(g.alphabet(), letters.first(period));
  return conjugator * prefix * invert(conjugator);
}

}  // namespace stallings

std::size_t std::hash<stallings::Word>::operator()(const stallings::Word& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.rank()) * 0x9e3779b97f4a7c15ULL;
  for (auto l : w.letters()) {
    h ^= static_cast<std::size_t>(l.signed_value() + 1024) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
