#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace stallings {

/// A permutation of {0, .., degree-1}, degree at most Perm::max_degree.
///
/// Products compose left to right: (p * q)(i) = q(p(i)), so a word
/// x_1 x_2 maps to image(x_1) * image(x_2) and acts on points from the left
/// letter first. Text uses 1-based cycle notation, e.g. "(1 2 3)(4 5)".
class Perm {
 public:
  static constexpr int max_degree = 16;

  Perm() = default;
  /// Throws MalformedInput unless `images` is a bijection of 0..n-1.
  explicit Perm(std::span<const int> images);

  static Perm identity(int degree);

  int degree() const { return degree_; }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  bool is_identity() const;

  Perm inverse() const;
  Perm pow(long long e) const;
  /// Smallest n >= 1 with p^n = identity.
  long long order() const;

  friend Perm operator*(const Perm& p, const Perm& q);
  friend bool operator==(const Perm&, const Perm&) = default;
  /// Lexicographic in one-line notation.
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) { return a.images_ <=> b.images_; }

  std::size_t hash() const;

 private:
  int degree_ = 0;
  std::array<std::uint8_t, max_degree> images_{};
};

/// "()" for the identity.
std::string format_cycles(const Perm& p);
/// Parses cycle notation. The degree defaults to the largest point mentioned.
Perm parse_cycles(std::string_view text, std::optional<int> degree = std::nullopt);

}  // namespace stallings

template <>
struct std::hash<stallings::Perm> {
  std::size_t operator()(const stallings::Perm& p) const noexcept { return p.hash(); }
};
