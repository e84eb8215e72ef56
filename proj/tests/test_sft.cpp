#include <random>

#include "doctest.h"
#include "sftg/error.hpp"
#include "sftg/sft.hpp"

using namespace sftg;

namespace {

Word W(std::string_view s) { return parse_word(s); }
std::vector<Generator> G(std::initializer_list<const char*> names) {
  std::vector<Generator> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

ModelPtr z1() { return std::make_shared<FreeAbelianModel>(G({"a"})); }
ModelPtr z2() { return std::make_shared<FreeAbelianModel>(G({"a", "b"})); }

Sft golden_mean(ModelPtr m) {
  std::vector<Pattern> f;
  for (const Generator& g : m->generators()) f.push_back({{Word{}, Word(g)}, {1, 1}});
  return Sft(Alphabet({"0", "1"}), f, m);
}

// Forbids equal colors on neighbors along a.
Sft z_difference(std::size_t letters) {
  std::vector<std::string> names;
  std::vector<Pattern> f;
  for (std::size_t c = 0; c < letters; ++c) {
    names.push_back(std::to_string(c));
    f.push_back({{Word{}, W("a")}, {c, c}});
  }
  return Sft(Alphabet(names), f, z1());
}

BallConfig constant(std::shared_ptr<const Ball> b, const Alphabet& a, Color c) {
  return BallConfig(b, a, std::vector<std::optional<Color>>(b->size(), c));
}

// Exponent of a in a Z ball element.
long coord(const Word& w) { return exponent_sum(w, Generator("a")); }

}  // namespace

TEST_CASE("alphabets") {
  const Alphabet a({"0", "1"});
  CHECK(a.size() == 2);
  CHECK(a.find("1") == 1u);
  CHECK(!a.find("2"));
  CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), Error);
  CHECK_THROWS_AS(Alphabet({"0", "0"}), Error);
  CHECK_THROWS_AS(Alphabet({"a b"}), Error);
  const Alphabet p = Alphabet::product(a, 3);
  CHECK(p.size() == 6);
  CHECK(p.name(p.pair(1, 2)) == "1.3");
  CHECK(p.project1(p.pair(1, 2)) == 1);
  CHECK(p.project2(p.pair(1, 2)) == 2);
  CHECK(p.base() == a);
  CHECK_THROWS_AS(a.base_letters(), Error);
}

TEST_CASE("pattern supports are checked in the model") {
  try {
    Sft(Alphabet({"0"}), {{{W("a b"), W("b a")}, {0, 0}}}, z2());
    FAIL("expected DuplicateSupportPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateSupportPoint);
  }
  CHECK_THROWS_AS(Sft(Alphabet({"0"}), {{{W("a")}, {1}}}, z2()), Error);
  CHECK_THROWS_AS(Sft(Alphabet({"0"}), {{{W("c")}, {0}}}, z2()), Error);
  CHECK_THROWS_AS(Sft(Alphabet({"0"}), {{{W("a")}, {0, 0}}}, z2()), Error);
}

TEST_CASE("shift") {
  auto b = std::make_shared<const Ball>(z1(), 4);
  const Alphabet a({"0", "1"});
  BallConfig parity(b, a);
  for (std::size_t i = 0; i < b->size(); ++i) parity.colors[i] = static_cast<Color>(((coord(b->element(i)) % 2) + 2) % 2);

  CHECK(shift(Word{}, parity) == parity);
  const BallConfig k = constant(b, a, 1);
  const BallConfig sk = shift(W("a^2"), k);
  for (std::size_t i = 0; i < b->size(); ++i) {
    if (sk.colors[i]) CHECK(*sk.colors[i] == 1);
  }

  const BallConfig s = shift(W("a"), parity);
  std::size_t defined = 0;
  for (std::size_t i = 0; i < b->size(); ++i) {
    const long n = coord(b->element(i));
    if (n - 1 < -4) {
      CHECK(!s.colors[i]);
      continue;
    }
    ++defined;
    CHECK(s.colors[i] == static_cast<Color>((((n - 1) % 2) + 2) % 2));
    CHECK(s.colors[i] != parity.colors[i]);
  }
  CHECK(defined == 8);
}

TEST_CASE("shift action law on overlaps") {
  auto b = std::make_shared<const Ball>(z2(), 3);
  const Alphabet a({"0", "1", "2"});
  std::mt19937 rng(7);
  BallConfig c(b, a);
  for (auto& x : c.colors) x = rng() % 3;
  for (const char* g : {"a", "b^-1", "a b"}) {
    for (const char* h : {"b", "a^-1 b", "1"}) {
      const BallConfig lhs = shift(W(g), shift(W(h), c));
      const BallConfig rhs = shift(W(g) * W(h), c);
      for (std::size_t i = 0; i < b->size(); ++i) {
        if (lhs.colors[i] && rhs.colors[i]) CHECK(*lhs.colors[i] == *rhs.colors[i]);
      }
    }
  }
}

TEST_CASE("appears") {
  auto b = std::make_shared<const Ball>(z2(), 2);
  const Alphabet a({"0", "1"});
  const BallConfig zero = constant(b, a, 0);
  CHECK(appears(Pattern{}, zero, W("a")) == Match::Yes);
  CHECK(appears({{Word{}}, {0}}, zero, W("b")) == Match::Yes);
  CHECK(appears({{Word{}}, {1}}, zero, W("b")) == Match::No);
  CHECK(appears({{Word{}, W("a")}, {0, 0}}, zero, W("a^2")) == Match::Unknown);
  // A definite mismatch wins over unknown points.
  CHECK(appears({{Word{}, W("a")}, {1, 0}}, zero, W("a^2")) == Match::No);
  BallConfig partial = zero;
  partial.colors[*b->find(W("a"))].reset();
  CHECK(appears({{Word{}, W("a")}, {0, 0}}, partial, Word{}) == Match::Unknown);
}

TEST_CASE("appears is shift-equivariant") {
  auto b = std::make_shared<const Ball>(z2(), 3);
  const Alphabet a({"0", "1"});
  std::mt19937 rng(3);
  BallConfig c(b, a);
  for (auto& x : c.colors) x = rng() % 2;
  const Pattern p{{Word{}, W("a"), W("b")}, {1, 0, 1}};
  for (const char* g : {"a", "b^-1", "a^-1 b"}) {
    const BallConfig moved = shift(W(g).inverse(), c);
    for (const char* at : {"1", "b", "a^-1"}) {
      const Match direct = appears(p, c, W(g) * W(at));
      const Match via = appears(p, moved, W(at));
      if (direct != Match::Unknown && via != Match::Unknown) CHECK(direct == via);
    }
  }
}

TEST_CASE("violations of the golden mean shift on Z2") {
  const Sft gm = golden_mean(z2());
  auto b = std::make_shared<const Ball>(gm.ambient(), 3);
  CHECK(violations(Sft(Alphabet({"0", "1"}), {}, gm.ambient()), constant(b, gm.alphabet(), 1)).empty());
  BallConfig c = constant(b, gm.alphabet(), 0);
  CHECK(violations(gm, c).empty());
  c.colors[*b->find(Word{})] = 1;
  c.colors[*b->find(W("a"))] = 1;
  const auto v = violations(gm, c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].pattern == 0);
  CHECK(v[0].at.empty());

  // Oracle: count horizontally or vertically adjacent 1s by coordinates.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    for (auto& x : c.colors) x = rng() % 4 == 0 ? 1 : 0;
    std::size_t expected = 0;
    for (std::size_t i = 0; i < b->size(); ++i) {
      if (c.colors[i] != 1u) continue;
      for (const char* step : {"a", "b"}) {
        const auto j = b->find(b->element(i) * W(step));
        if (j && c.colors[*j] == 1u) ++expected;
      }
    }
    CHECK(violations(gm, c).size() == expected);
  }
}

TEST_CASE("empty support is violated once") {
  const Sft s(Alphabet({"0"}), {Pattern{}}, z1());
  auto b = std::make_shared<const Ball>(z1(), 2);
  const auto v = violations(s, constant(b, s.alphabet(), 0));
  REQUIRE(v.size() == 1);
  CHECK(v[0].at.empty());
}

TEST_CASE("quotient violations") {
  const Sft d = z_difference(2);
  const Presentation z = z1()->presentation();
  auto index1 = std::make_shared<const CosetTable>(todd_coxeter(z, {W("a")}));
  auto index2 = std::make_shared<const CosetTable>(todd_coxeter(z, {W("a^2")}));
  CHECK(quotient_violations(Sft(d.alphabet(), {}, d.ambient()), QuotientConfig{index1, d.alphabet(), {0}}).empty());
  for (Color c : {0, 1}) CHECK(!quotient_violations(d, QuotientConfig{index1, d.alphabet(), {c}}).empty());
  const QuotientConfig alt{index2, d.alphabet(), {0, 1}};
  CHECK(quotient_violations(d, alt).empty());
  CHECK(quotient_violations(d, QuotientConfig{index2, d.alphabet(), {1, 1}}).size() == 2);

  // Exactness cross-check against the windowed path on a large enough ball.
  const Sft gm = golden_mean(z2());
  auto t = std::make_shared<const CosetTable>(todd_coxeter(gm.ambient()->presentation(), {W("a^2"), W("b^2")}));
  auto b = std::make_shared<const Ball>(gm.ambient(), 5);
  for (unsigned mask = 0; mask < 16; ++mask) {
    QuotientConfig q{t, gm.alphabet(), {}};
    for (std::size_t i = 0; i < 4; ++i) q.colors.push_back((mask >> i) & 1);
    CHECK(quotient_violations(gm, q).empty() == violations(gm, expand(q, b)).empty());
  }
}

TEST_CASE("quotient stabilizers") {
  const Presentation z = z2()->presentation();
  auto t = std::make_shared<const CosetTable>(todd_coxeter(z, {W("a^2"), W("b")}));
  const QuotientConfig alt{t, Alphabet({"0", "1"}), {0, 1}};
  CHECK(quotient_stabilizes(alt, W("b")));
  CHECK(quotient_stabilizes(alt, W("a^2")));
  CHECK(!quotient_stabilizes(alt, W("a")));
  const QuotientConfig flat{t, Alphabet({"0", "1"}), {1, 1}};
  CHECK(quotient_stabilizes(flat, W("a")));

  const Ball b(z2(), 2);
  const auto r = stabilizer_scan(alt, b, 2);
  CHECK(r.exact);
  CHECK(r.distinct_translates_found == 2);
  for (const Word& g : r.stabilizing_elements) CHECK(exponent_sum(g, Generator("a")) % 2 == 0);
  CHECK(r.stabilizing_elements.size() == 7);
}

TEST_CASE("window stabilizer scan") {
  auto b = std::make_shared<const Ball>(z1(), 5);
  const Alphabet a({"0", "1"});
  const auto all = stabilizer_scan(constant(b, a, 1), 2);
  CHECK(all.stabilizing_elements.size() == 5);
  CHECK(!all.exact);
  BallConfig parity(b, a);
  for (std::size_t i = 0; i < b->size(); ++i) parity.colors[i] = static_cast<Color>(((coord(b->element(i)) % 2) + 2) % 2);
  const auto r = stabilizer_scan(parity, 2);
  for (const Word& g : r.stabilizing_elements) CHECK(coord(g) % 2 == 0);
  CHECK(r.stabilizing_elements.size() == 3);
  CHECK(r.distinct_translates_found == 2);
}

TEST_CASE("sft text round trip") {
  const Sft gm = golden_mean(z2());
  const std::string text = to_text(gm);
  CHECK(text == "sft v1\nmodel free_abelian a b\nalphabet 0 1\nforbid 1 -> 1 , a -> 1\nforbid 1 -> 1 , b -> 1\n");
  const Sft back = parse_sft(text);
  CHECK(to_text(back) == text);
  CHECK(back.forbidden() == gm.forbidden());

  const Sft prod(Alphabet::product(Alphabet({"x", "y"}), 2), {{{W("a b^-1")}, {3}}, Pattern{}}, z2(), {"built by hand"});
  CHECK(to_text(parse_sft(to_text(prod))) == to_text(prod));
  CHECK(parse_sft(to_text(prod)).alphabet().is_product());

  try {
    parse_sft("sft v1\nmodel free_abelian a b\nalphabet 0 1\nforbid 1 -> 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}
