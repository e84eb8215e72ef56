#include <random>

#include "doctest.h"
#include "sftg/ball.hpp"
#include "sftg/coset_table.hpp"
#include "sftg/error.hpp"
#include "sftg/group_model.hpp"

using namespace sftg;

namespace {

Word W(std::string_view s) { return parse_word(s); }
Presentation P(std::string_view s) { return parse_presentation(s); }
std::vector<Generator> G(std::initializer_list<const char*> names) {
  std::vector<Generator> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

std::vector<Word> random_words(std::mt19937& rng, const std::vector<Generator>& gens, std::size_t count,
                               std::size_t len) {
  std::vector<Word> out;
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t n = 0; n < count; ++n) {
    LetterSeq s;
    for (std::size_t i = 0; i < len; ++i) s.push_back({gens[pick(rng)], coin(rng) ? 1 : -1});
    out.push_back(reduce(s));
  }
  return out;
}

}  // namespace

TEST_CASE("free abelian normal forms") {
  const FreeAbelianModel z2(G({"a", "b"}));
  CHECK(z2.normal_form(W("b a b^-1 a")) == W("a^2"));
  CHECK(z2.equal(W("a b"), W("b a")));
  CHECK(!z2.equal(W("a"), W("b")));
  CHECK_THROWS_AS(z2.normal_form(W("c")), Error);
}

TEST_CASE("direct product with a cyclic group") {
  auto base = std::make_shared<FreeAbelianModel>(G({"a", "b"}));
  const DirectWithCyclicModel m(base, Generator("z"), 2);
  CHECK(m.normal_form(W("z a z")) == W("a"));
  CHECK(m.normal_form(W("z^-1 b")) == W("b z"));
  CHECK(m.generators() == G({"a", "b", "z"}));
  CHECK(parse_model(m.describe())->describe() == m.describe());
}

TEST_CASE("free-by-cyclic models") {
  // Klein bottle: b a b^-1 = a^-1.
  const FreeByCyclicModel klein(G({"a"}), Generator("b"), {{Generator("a"), W("a^-1")}});
  CHECK(klein.normal_form(W("a b")) == W("b a^-1"));
  CHECK(klein.normal_form(W("b a b^-1 a")).empty());
  CHECK(klein.is_identity(W("a b a b^-1")));
  CHECK(klein.presentation() == P("< a b | b a b^-1 a >"));
  CHECK(parse_model(klein.describe())->describe() == klein.describe());

  // F2 x| Z with a non-permutation automorphism a -> a b, b -> b.
  const FreeByCyclicModel fz(G({"a", "b"}), Generator("t"), {{Generator("a"), W("a b")}, {Generator("b"), W("b")}},
                             SubstitutionRules{{Generator("a"), W("a b^-1")}, {Generator("b"), W("b")}});
  CHECK(fz.normal_form(W("t a t^-1")) == W("a b"));
  CHECK(parse_model(fz.describe())->describe() == fz.describe());
  CHECK_THROWS_AS(FreeByCyclicModel(G({"a", "b"}), Generator("t"), {{Generator("a"), W("a b")}, {Generator("b"), W("b")}}),
                  Error);

  std::mt19937 rng(3);
  const auto words = random_words(rng, fz.generators(), 60, 8);
  const Presentation fzp = fz.presentation();
  for (std::size_t i = 0; i + 2 < words.size(); i += 3) {
    const Word &u = words[i], &v = words[i + 1], &w = words[i + 2];
    CHECK(fz.normal_form(fz.normal_form(u)) == fz.normal_form(u));
    CHECK(fz.equal(fz.multiply(fz.multiply(u, v), w), fz.multiply(u, fz.multiply(v, w))));
    CHECK(fz.is_identity(fz.multiply(u, fz.inverse(u))));
    // Every relator is trivial wherever it is inserted.
    for (const Word& r : fzp.relators()) CHECK(fz.equal(u * r * v, u * v));
  }
}

TEST_CASE("small cancellation and Dehn reduction") {
  const Presentation s2 = surface_presentation(2);
  const Word r = s2.relators()[0];
  CHECK(small_cancellation_check(r).holds);
  CHECK(small_cancellation_check(r).longest_piece.size() == 1);
  CHECK(dehn_reduce(s2, r).empty());
  const Word u = W("a1 b2^-1 a2");
  CHECK(dehn_reduce(s2, u * r * u.inverse()).empty());
  CHECK(dehn_reduce(s2, W("a1")) == W("a1"));
  CHECK(!small_cancellation_check(surface_presentation(1).relators()[0]).holds);
  try {
    DehnModel bad(surface_presentation(1));
    FAIL("expected SmallCancellationViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SmallCancellationViolated);
  }

  const DehnModel m(s2);
  CHECK(!m.canonical());
  std::mt19937 rng(11);
  const auto words = random_words(rng, s2.generators(), 40, 6);
  for (const Word& w : words) {
    // Inserting conjugates of the relator never changes the element or its key.
    const Word v = w * u * r.inverse() * u.inverse();
    CHECK(m.equal(w, v));
    CHECK(m.bucket_key(w) == m.bucket_key(v));
    CHECK(m.is_identity(w * w.inverse()));
  }
  CHECK(!m.equal(W("a1 b1"), W("b1 a1")));
  CHECK(parse_model(m.describe())->describe() == m.describe());
}

TEST_CASE("one-relator groups with a generator occurring once") {
  const ModelPtr m = model_for_one_relator(P("< a b c | a b c >"));
  REQUIRE(m);
  CHECK(m->is_identity(W("a b c")));
  CHECK(m->equal(W("c"), W("b^-1 a^-1")));
  CHECK(!m->equal(W("a"), W("b")));
  CHECK(dynamic_cast<const DehnModel*>(model_for_one_relator(surface_presentation(2)).get()) != nullptr);
  CHECK(model_for_one_relator(P("< a b | a^2 b^2 >")) == nullptr);
}

TEST_CASE("model descriptions") {
  for (const char* text : {"free a b", "free_abelian x y z", "direct_cyclic z 3 free_abelian a b",
                           "free_by_cyclic b [ a ] { a -> a^-1 }", "one_relator_free < a b c | a b c >"}) {
    CHECK(parse_model(text)->describe() == text);
  }
  CHECK_THROWS(parse_model("nonsense a"));
  CHECK_THROWS(parse_model("direct_cyclic z 0 free a"));
}

TEST_CASE("coset enumeration oracles") {
  SUBCASE("Klein bottle, H = <a, b^2>") {
    const CosetTable t = todd_coxeter(P("< a b | a b a b^-1 >"), {W("a"), W("b^2")});
    CHECK(t.index() == 2);
    CHECK(t.representatives == std::vector<Word>{Word{}, W("b")});
    CHECK(check_table(t).ok);
  }
  SUBCASE("Z^2, H = <a^2, b>") {
    const CosetTable t = todd_coxeter(P("< a b | a b a^-1 b^-1 >"), {W("a^2"), W("b")});
    CHECK(t.index() == 2);
    CHECK(t.representatives == std::vector<Word>{Word{}, W("a")});
    const FreeAbelianModel z2(G({"a", "b"}));
    CHECK(coset_decompose(t, z2, W("a")) == std::pair<Word, std::size_t>{Word{}, 1});
    CHECK(coset_decompose(t, z2, Word{}) == std::pair<Word, std::size_t>{Word{}, 0});
    CHECK(conjugate_generator(t, W("a^2"), 1) == W("a^2"));
    CHECK(conjugate_generator(t, W("b"), 0) == W("b"));
  }
  SUBCASE("index one") {
    const CosetTable t = todd_coxeter(P("< a b | a b a^-1 b^-1 >"), {W("a"), W("b")});
    CHECK(t.index() == 1);
    CHECK(check_table(t).ok);
    CHECK(todd_coxeter(P("< x | >"), {W("x")}).index() == 1);
  }
  SUBCASE("free group, H = <a, b^2, b a b^-1>") {
    const CosetTable t = todd_coxeter(P("< a b | >"), {W("a"), W("b^2"), W("b a b^-1")});
    CHECK(t.index() == 2);
    CHECK(conjugate_generator(t, W("a"), 1) == W("b^-1 a b"));
  }
  SUBCASE("larger index with coincidences") {
    // Z^2 modulo <a^3, b^4>.
    const CosetTable t = todd_coxeter(P("< a b | a b a^-1 b^-1 >"), {W("a^3"), W("b^4")});
    CHECK(t.index() == 12);
    CHECK(check_table(t).ok);
    // Symmetric group S3 = <s, t | s^2, t^2, (s t)^3>, trivial subgroup.
    CHECK(todd_coxeter(P("< s t | s^2 , t^2 , s t s t s t >"), {}).index() == 6);
  }
  SUBCASE("infinite index exceeds the budget") {
    try {
      todd_coxeter(P("< a b | a b a^-1 b^-1 >"), {W("a")}, 200);
      FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
  }
}

TEST_CASE("coset decomposition round trip on a ball") {
  const Presentation klein = P("< a b | a b a b^-1 >");
  auto model = std::make_shared<FreeByCyclicModel>(G({"a"}), Generator("b"), SubstitutionRules{{Generator("a"), W("a^-1")}});
  // The model's generator order is a, b; so is the presentation's.
  const CosetTable t = todd_coxeter(klein, {W("a"), W("b^2")});
  const Ball ball(model, 4);
  for (const Word& g : ball.elements()) {
    auto [h, i] = coset_decompose(t, *model, g);
    CHECK(model->equal(model->multiply(h, t.representatives[i]), g));
    CHECK(t.coset_of(h) == 0);
  }
}

TEST_CASE("coset table text round trip") {
  const CosetTable t = todd_coxeter(P("< a b | a b a b^-1 >"), {W("a"), W("b^2")});
  const std::string text = to_text(t);
  CHECK(text ==
        "cosets v1\n"
        "generators a b\n"
        "relators a b a b^-1\n"
        "subgroup a , b^2\n"
        "index 2\n"
        "rep 1 1\n"
        "rep 2 b\n"
        "columns a a^-1 b b^-1\n"
        "act 1 1 1 2 2\n"
        "act 2 2 2 1 1\n");
  const CosetTable back = parse_coset_table(text);
  CHECK(back == t);
  CHECK(to_text(back) == text);
  CHECK_THROWS_AS(parse_coset_table("cosets v1\ngenerators a\nrelators\nsubgroup\nindex 1\nrep 1 1\ncolumns a a^-1\nact 1 1 2\n"),
                  ParseError);
}

TEST_CASE("balls") {
  auto z2 = std::make_shared<FreeAbelianModel>(G({"a", "b"}));
  CHECK(Ball(z2, 1).size() == 5);
  CHECK(Ball(z2, 0).size() == 1);
  CHECK(Ball(z2, 3).size() == 25);
  auto f2 = std::make_shared<FreeGroupModel>(G({"a", "b"}));
  CHECK(Ball(f2, 2).size() == 17);
  auto f3 = std::make_shared<FreeGroupModel>(G({"a", "b", "c"}));
  const auto spheres = sphere_sizes(Ball(f3, 4));
  std::size_t expected = 6;
  for (std::size_t d = 1; d <= 4; ++d, expected *= 5) CHECK(spheres[d] == expected);

  const Ball b(z2, 2);
  CHECK(b.element(0).empty());
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t l = 0; l < b.letters().size(); ++l) {
      const std::size_t n = b.neighbor(i, l);
      const Letter& x = b.letters()[l];
      if (n == Ball::exterior) {
        CHECK(b.distance(i) == 2);
      } else {
        CHECK(z2->equal(b.element(n), b.element(i) * Word(x.generator, x.sign)));
      }
    }
  }
  // Non-canonical backend: elements stay pairwise distinct.
  auto s2 = std::make_shared<DehnModel>(surface_presentation(2));
  const Ball sb(s2, 2);
  CHECK(sb.size() == 1 + 8 + 56);
}
