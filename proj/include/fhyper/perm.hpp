#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fhyper/errors.hpp"

namespace fhyper {

using Point = uint32_t;  // 0-based internally; cycle notation is 1-based

// A permutation of {0, ..., n-1}, stored as its image table.  Products
// compose left to right: (a*b)(x) = b(a(x)), so conjugation g^h = h^-1*g*h
// relabels g's points by h.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(uint32_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }

  static Permutation from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point v : images) {
      if (v >= images.size() || seen[v])
        throw ParseError("image table is not a bijection");
      seen[v] = true;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
  }

  uint32_t degree() const { return static_cast<uint32_t>(img_.size()); }
  Point apply(Point x) const { return img_[x]; }
  std::span<const Point> images() const { return img_; }

  bool is_identity() const {
    for (Point i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (Point i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DegreeMismatch(a.degree(), b.degree());
    Permutation r;
    r.img_.resize(a.img_.size());
    for (Point i = 0; i < a.degree(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  Permutation conjugated_by(const Permutation& h) const {
    return h.inverse() * (*this) * h;
  }

  // [a, b] = a^-1 b^-1 a b
  static Permutation commutator(const Permutation& a, const Permutation& b) {
    return a.inverse() * b.inverse() * a * b;
  }

  Permutation power(uint64_t e) const {
    Permutation acc(degree()), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  uint64_t element_order() const {
    uint64_t ord = 1;
    std::vector<bool> seen(degree(), false);
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      uint64_t len = 0;
      for (Point j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) = default;

  size_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (Point v : img_) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  size_t operator()(const Permutation& p) const { return p.hash(); }
};

// Cycle notation: whitespace-separated cycles of 1-based points, "()" for
// the identity, e.g. "(1 2 3)(4 5)".
inline Permutation parse_cycles(std::string_view text, uint32_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);

  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty cycle text");
  bool any = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw ParseError("expected '('");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i == text.size()) throw ParseError("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9') throw ParseError("expected point");
      uint64_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > degree)
        throw ParseError("point " + std::to_string(v) + " out of range 1.." +
                         std::to_string(degree));
      Point pt = static_cast<Point>(v - 1);
      if (used[pt])
        throw ParseError("point " + std::to_string(v) + " repeated");
      used[pt] = true;
      cycle.push_back(pt);
    }
    any = true;
    for (size_t k = 0; k < cycle.size(); ++k)
      img[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  if (!any) throw ParseError("no cycles found");
  return Permutation::from_images(std::move(img));
}

// Canonical form: cycles ordered by smallest moved point, each starting at
// its smallest point; fixed points omitted; identity prints as "()".
inline std::string to_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (Point i = 0; i < p.degree(); ++i) {
    if (seen[i] || p.apply(i) == i) continue;
    out += '(';
    Point j = i;
    bool first = true;
    do {
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      seen[j] = true;
      first = false;
      j = p.apply(j);
    } while (j != i);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace fhyper
