#include "stallings/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>
#include <vector>

#include "stallings/errors.hpp"

namespace stallings {

Perm::Perm(std::span<const int> images) : degree_(static_cast<int>(images.size())) {
  if (images.size() > static_cast<std::size_t>(max_degree)) {
    throw MalformedInput("permutation degree " + std::to_string(images.size()) + " exceeds " +
                         std::to_string(max_degree));
  }
  std::array<bool, max_degree> seen{};
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int v = images[i];
    if (v < 0 || v >= degree_ || seen[static_cast<std::size_t>(v)]) {
      throw MalformedInput("images do not form a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
    images_[i] = static_cast<std::uint8_t>(v);
  }
}

Perm Perm::identity(int degree) {
  if (degree < 0 || degree > max_degree) throw MalformedInput("degree out of range");
  Perm p;
  p.degree_ = degree;
  for (int i = 0; i < degree; ++i) p.images_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree_; ++i) {
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.degree_ = degree_;
  for (int i = 0; i < degree_; ++i) r.images_[images_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm operator*(const Perm& p, const Perm& q) {
  if (p.degree_ != q.degree_) throw MalformedInput("multiplying permutations of different degrees");
  Perm r;
  r.degree_ = p.degree_;
  for (int i = 0; i < p.degree_; ++i) {
    r.images_[static_cast<std::size_t>(i)] = q.images_[p.images_[static_cast<std::size_t>(i)]];
  }
  return r;
}

Perm Perm::pow(long long e) const {
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  Perm result = identity(degree_);
  while (n > 0) {
    if (n & 1U) result = result * base;
    base = base * base;
    n >>= 1U;
  }
  return result;
}

long long Perm::order() const {
  long long result = 1;
  std::array<bool, max_degree> seen{};
  for (int i = 0; i < degree_; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    long long len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::size_t Perm::hash() const {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::memcpy(&lo, images_.data(), 8);
  std::memcpy(&hi, images_.data() + 8, 8);
  std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL + static_cast<std::uint64_t>(degree_));
  h ^= h >> 31;
  return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
}

std::string format_cycles(const Perm& p) {
  std::string out;
  std::array<bool, Perm::max_degree> seen{};
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || p(i) == i) continue;
    out += '(';
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm parse_cycles(std::string_view text, std::optional<int> degree) {
  std::vector<std::vector<int>> cycles;
  bool open = false;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { return MalformedInput("cycle notation '" + std::string(text) + "': " + why); };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
    } else if (c == '(') {
      if (open) throw fail("nested '('");
      open = true;
      cycles.emplace_back();
      ++i;
    } else if (c == ')') {
      if (!open) throw fail("unmatched ')'");
      open = false;
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!open) throw fail("point outside a cycle");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > Perm::max_degree) throw fail("point exceeds maximum degree");
        ++i;
      }
      if (v < 1) throw fail("points are 1-based");
      cycles.back().push_back(v - 1);
    } else {
      throw fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (open) throw fail("unterminated cycle");

  int largest = 0;
  for (const auto& cyc : cycles) {
    for (int v : cyc) largest = std::max(largest, v + 1);
  }
  const int d = degree.value_or(largest);
  if (largest > d) throw fail("point exceeds degree " + std::to_string(d));
  if (d > Perm::max_degree) throw fail("degree exceeds " + std::to_string(Perm::max_degree));
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (used[static_cast<std::size_t>(cyc[k])]) throw fail("cycles are not disjoint");
      used[static_cast<std::size_t>(cyc[k])] = true;
      images[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    }
  }
  return Perm(images);
}

}  // namespace stallings
