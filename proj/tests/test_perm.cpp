#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fhyper/perm.hpp"

using namespace fhyper;

TEST_CASE("cycle notation parses to image tables") {
  auto p = parse_cycles("(1 2 3)", 3);
  CHECK(p.images()[0] == 1);
  CHECK(p.images()[1] == 2);
  CHECK(p.images()[2] == 0);

  auto id = parse_cycles("()", 4);
  CHECK(id.is_identity());
  CHECK(id.degree() == 4);

  auto q = parse_cycles("(1 2)(3 4)", 4);
  CHECK(q.images()[0] == 1);
  CHECK(q.images()[1] == 0);
  CHECK(q.images()[2] == 3);
  CHECK(q.images()[3] == 2);
}

TEST_CASE("cycle notation rejects malformed input") {
  CHECK_THROWS_AS(parse_cycles("(1 2", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 5)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 1)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("1 2 3", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("", 3), ParseError);
}

TEST_CASE("parse, print, parse round-trips on canonical text") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    uint32_t n = 2 + static_cast<uint32_t>(rng() % 9);
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    std::shuffle(img.begin(), img.end(), rng);
    auto p = Permutation::from_images(img);
    auto text = to_cycles(p);
    auto q = parse_cycles(text, n);
    CHECK(p == q);
    CHECK(to_cycles(q) == text);
  }
}

TEST_CASE("products compose left to right") {
  auto a = parse_cycles("(1 2)", 4);
  auto b = parse_cycles("(1 2 3 4)", 4);
  // (1 2) then (1 2 3 4): 1->2->3
  CHECK((a * b).apply(0) == 2);
  CHECK((a * b) == parse_cycles("(1 3 4)", 4));
  CHECK((a * a).is_identity());
  CHECK((b * b.inverse()).is_identity());
}

TEST_CASE("conjugation relabels points") {
  auto g = parse_cycles("(1 2 3)", 4);
  auto h = parse_cycles("(1 4)", 4);
  CHECK(g.conjugated_by(h) == parse_cycles("(4 2 3)", 4));
}

TEST_CASE("commutator identity [a,b] = a^-1 b^-1 a b") {
  auto a = parse_cycles("(1 2)", 5);
  auto b = parse_cycles("(1 2 3)", 5);
  auto c = Permutation::commutator(a, b);
  CHECK(c == a.inverse() * b.inverse() * a * b);
  CHECK(Permutation::commutator(a, a).is_identity());
}

TEST_CASE("element order is the lcm of cycle lengths") {
  CHECK(parse_cycles("(1 2 3)(4 5)", 5).element_order() == 6);
  CHECK(parse_cycles("(1 2 3 4)", 4).element_order() == 4);
  CHECK(Permutation(6).element_order() == 1);
}

TEST_CASE("powers agree with repeated products") {
  auto g = parse_cycles("(1 2 3 4 5)(6 7)", 7);
  Permutation acc(7);
  for (uint64_t e = 0; e < 12; ++e) {
    CHECK(g.power(e) == acc);
    acc = acc * g;
  }
}

TEST_CASE("image tables must be bijections") {
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), ParseError);
  CHECK_THROWS_AS(Permutation::from_images({0, 3, 1}), ParseError);
}
