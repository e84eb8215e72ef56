#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "sftg/error.hpp"
#include "sftg/extensions.hpp"

using namespace sftg;

namespace {

Word W(std::string_view s) { return parse_word(s); }
std::vector<Generator> G(std::initializer_list<const char*> names) {
  std::vector<Generator> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

std::shared_ptr<const FreeAbelianModel> z2() { return std::make_shared<FreeAbelianModel>(G({"a", "b"})); }
std::shared_ptr<const DirectWithCyclicModel> z2_by(unsigned k) {
  return std::make_shared<DirectWithCyclicModel>(z2(), Generator("z"), k);
}

Sft golden_mean(ModelPtr m) {
  std::vector<Pattern> f;
  for (const Generator& g : m->generators()) f.push_back({{Word{}, Word(g)}, {1, 1}});
  return Sft(Alphabet({"0", "1"}), f, m);
}

Embedding z2_into(std::shared_ptr<const DirectWithCyclicModel> g) {
  return make_embedding(g, G({"a", "b"}), {W("a"), W("b")}, true);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("embeddings") {
  const Embedding e = z2_into(z2_by(2));
  CHECK(e.index() == 2);
  CHECK(e.representative(0).empty());
  CHECK(e.representative(1) == W("z"));
  CHECK(e.image(W("a b^-1")) == W("a b^-1"));
  CHECK(kind_of([&] { e.image(W("z")); }) == ErrorKind::SupportOutsideSubgroup);
  CHECK(identity_embedding(z2()).index() == 1);

  Embedding bad = e;
  bad.images = {W("a"), W("b^2")};
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::PreconditionViolated);
  Embedding no_table = e;
  no_table.table = nullptr;
  CHECK(kind_of([&] { no_table.index(); }) == ErrorKind::PreconditionViolated);

  const std::string text = to_text(e);
  const Embedding back = parse_embedding(text);
  CHECK(to_text(back) == text);
  CHECK(*back.table == *e.table);
  try {
    parse_embedding("embedding v1\nsupergroup free_abelian a b\nmap a a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 3);
  }
}

TEST_CASE("free extension") {
  auto f2 = std::make_shared<FreeGroupModel>(G({"x", "y"}));
  const Sft x = golden_mean(f2);
  auto g = std::make_shared<FreeGroupModel>(G({"a", "b", "c"}));
  const Embedding e{g, G({"x", "y"}), {W("a b"), W("c")}, nullptr};
  const Sft up = free_extension(x, e);
  CHECK(up.alphabet() == x.alphabet());
  REQUIRE(up.forbidden().size() == 2);
  CHECK(up.forbidden()[0].support == std::vector<Word>{Word{}, W("a b")});
  CHECK(up.forbidden()[1].colors == x.forbidden()[1].colors);
  CHECK(up.provenance().front() == "construction free");

  CHECK(free_extension(Sft(x.alphabet(), {}, f2), e).forbidden().empty());
  const Sft same = free_extension(golden_mean(z2()), identity_embedding(z2()));
  CHECK(same.forbidden() == golden_mean(z2()).forbidden());

  const Sft outside(x.alphabet(), {{{W("x")}, {0}}}, std::make_shared<FreeGroupModel>(G({"x", "w"})));
  const Embedding partial{g, G({"w"}), {W("a")}, nullptr};
  CHECK(kind_of([&] { free_extension(outside, partial); }) == ErrorKind::SupportOutsideSubgroup);
}

TEST_CASE("right extension counts and order") {
  const Sft x = golden_mean(z2());
  const RightExtension r = right_extension(x, z2_into(z2_by(2)));
  CHECK(r.k == 2);
  CHECK(r.type1 == 16);
  CHECK(r.type2 == 4);
  CHECK(r.sft.forbidden().size() == 20);
  CHECK(r.sft.alphabet().letters() == std::vector<std::string>{"0.1", "0.2", "1.1", "1.2"});
  // Central conjugation leaves type (2) supports unchanged.
  for (std::size_t n = 16; n < 20; ++n) CHECK(r.sft.forbidden()[n].support == x.forbidden()[(n - 16) / 2].support);
  // Order (a, c1, c2, i, j): the first pattern is (0,1) at 1 and (0,2) at a.
  const Pattern& first = r.sft.forbidden()[0];
  CHECK(first.support == std::vector<Word>{Word{}, W("a")});
  CHECK(r.sft.alphabet().name(first.colors[0]) == "0.1");
  CHECK(r.sft.alphabet().name(first.colors[1]) == "0.2");
  CHECK(r.sft.forbidden()[1].colors == std::vector<Color>{1, 0});

  const RightExtension one = right_extension(x, identity_embedding(z2()));
  CHECK(one.type1 == 0);
  CHECK(one.type2 == 2);
  CHECK(one.sft.alphabet().letters() == std::vector<std::string>{"0.1", "1.1"});
  CHECK(one.sft.forbidden() == x.forbidden());

  // Three cosets of <a^3, b> in Z2 with a trivial third letter alphabet.
  auto z2m = z2();
  const Embedding e3 = make_embedding(z2m, G({"p", "q"}), {W("a^3"), W("b")}, true);
  const Sft x3(Alphabet({"u", "v", "w"}), {{{Word{}, W("p")}, {0, 2}}}, std::make_shared<FreeAbelianModel>(G({"p", "q"})));
  const RightExtension r3 = right_extension(x3, e3);
  CHECK(r3.type1 == 2 * 9 * 3 * 2);
  CHECK(r3.type2 == 3);
}

TEST_CASE("right extension over a non-normal-looking embedding conjugates supports") {
  auto klein = std::make_shared<FreeByCyclicModel>(G({"a"}), Generator("b"), SubstitutionRules{{Generator("a"), W("a^-1")}});
  const Embedding e = make_embedding(klein, G({"x", "y"}), {W("a"), W("b^2")}, true);
  REQUIRE(e.index() == 2);
  CHECK(e.representative(1) == W("b"));
  const Sft x(Alphabet({"0", "1"}), {{{Word{}, W("x")}, {1, 1}}}, std::make_shared<FreeAbelianModel>(G({"x", "y"})));
  const RightExtension r = right_extension(x, e);
  CHECK(r.conjugated[1][0] == klein->normal_form(W("a^-1")));
  CHECK(r.conjugated[1][1] == W("b^2"));
  CHECK(r.sft.forbidden().back().support == std::vector<Word>{Word{}, W("a^-1")});
}

TEST_CASE("product lift") {
  auto g = z2_by(3);
  auto hb = std::make_shared<const Ball>(z2(), 3);
  const Alphabet a({"0", "1"});
  std::mt19937 rng(5);
  BallConfig x(hb, a);
  for (auto& c : x.colors) c = rng() % 2;
  const BallConfig up = product_lift(x, g, 3);
  for (std::size_t n = 0; n < up.ball->size(); ++n) {
    const auto [h, i] = g->split(up.ball->element(n));
    CHECK(up.colors[n] == x.at(h));
  }
  const auto scan = stabilizer_scan(up, 1);
  CHECK(std::find(scan.stabilizing_elements.begin(), scan.stabilizing_elements.end(), W("z")) !=
        scan.stabilizing_elements.end());

  auto kt = std::make_shared<const CosetTable>(todd_coxeter(z2()->presentation(), {W("a^2"), W("a b")}));
  const QuotientConfig checker{kt, a, {0, 1}};
  const QuotientConfig lifted = product_lift(checker, g);
  CHECK(lifted.table->index() == 2);
  for (unsigned i = 0; i < 3; ++i) CHECK(quotient_stabilizes(lifted, Word(Generator("z"), static_cast<int>(i))));
  CHECK(!quotient_stabilizes(lifted, W("a")));
  CHECK(lifted.at(W("a z^2")) == checker.at(W("a")));

  auto trivial = z2_by(1);
  const BallConfig same = product_lift(x, trivial, 2);
  for (std::size_t n = 0; n < same.ball->size(); ++n) CHECK(same.colors[n] == x.at(same.ball->element(n)));
}

TEST_CASE("periodic right lift and coset restriction") {
  auto g = z2_by(2);
  const Embedding e = z2_into(g);
  const Sft x = golden_mean(z2());
  const RightExtension r = right_extension(x, e);

  auto hb = std::make_shared<const Ball>(z2(), 4);
  std::mt19937 rng(9);
  BallConfig xc(hb, x.alphabet());
  for (auto& c : xc.colors) c = rng() % 2;
  const BallConfig y = periodic_right_lift(xc, e, 3);
  for (std::size_t n = 0; n < y.ball->size(); ++n) {
    const auto [h, i] = g->split(y.ball->element(n));
    CHECK(y.colors[n] == r.sft.alphabet().pair(*xc.at(h), i));
  }
  auto small = std::make_shared<const Ball>(z2(), 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const BallConfig back = coset_restriction(y, e, i, small);
    for (std::size_t n = 0; n < small->size(); ++n) CHECK(back.colors[n] == xc.at(small->element(n)));
  }
  CHECK(kind_of([&] { periodic_right_lift(xc, e, 6); }) == ErrorKind::DecompositionFailure);
  CHECK(kind_of([&] { coset_restriction(xc, identity_embedding(z2()), 0, small); }) == ErrorKind::AlphabetMismatch);

  // All zeros is in X; its lift has no violations and restricts back.
  BallConfig zero(hb, x.alphabet(), std::vector<std::optional<Color>>(hb->size(), 0));
  const BallConfig yz = periodic_right_lift(zero, e, 3);
  CHECK(violations(r.sft, yz).empty());
  CHECK(violations(x, coset_restriction(yz, e, 1, small)).empty());

  // Exact form with the checkerboard point, periods a^2 and a b.
  auto kt = std::make_shared<const CosetTable>(todd_coxeter(z2()->presentation(), {W("a^2"), W("a b")}));
  const QuotientConfig checker{kt, x.alphabet(), {0, 1}};
  REQUIRE(quotient_violations(x, checker).empty());
  const QuotientConfig yq = periodic_right_lift(checker, e);
  CHECK(yq.table->index() == 4);
  CHECK(quotient_violations(r.sft, yq).empty());
  CHECK(quotient_stabilizes(yq, W("a^2")));
  CHECK(quotient_stabilizes(yq, W("a b")));
  CHECK(!quotient_stabilizes(yq, W("a")));
  CHECK(!quotient_stabilizes(yq, W("z")));
  auto gb = std::make_shared<const Ball>(g, 4);
  CHECK(violations(r.sft, expand(yq, gb)).empty());
}

TEST_CASE("cyclic lift") {
  const Alphabet a({"0", "1", "2"});
  auto f1 = std::make_shared<FreeGroupModel>(G({"a"}));
  auto hb = std::make_shared<const Ball>(f1, 3);
  BallConfig x(hb, a);
  std::mt19937 rng(2);
  for (auto& c : x.colors) c = rng() % 3;

  auto z2fc = std::make_shared<FreeByCyclicModel>(G({"a"}), Generator("b"), SubstitutionRules{{Generator("a"), W("a")}});
  auto klein = std::make_shared<FreeByCyclicModel>(G({"a"}), Generator("b"), SubstitutionRules{{Generator("a"), W("a^-1")}});
  for (const auto& g : {z2fc, klein}) {
    const BallConfig up = cyclic_lift(x, g, 3);
    for (std::size_t n = 0; n < up.ball->size(); ++n) {
      const Word& w = up.ball->element(n);
      CHECK(up.colors[n] == x.at(g->split(w).second));
    }
    const BallConfig moved = shift(W("b"), up);
    std::size_t overlap = 0;
    for (std::size_t n = 0; n < up.ball->size(); ++n) {
      if (!moved.colors[n]) continue;
      ++overlap;
      CHECK(moved.colors[n] == up.colors[n]);
    }
    CHECK(overlap > 0);
  }
  // b^i a^j in the Klein bottle lifts x(a^j).
  const BallConfig kl = cyclic_lift(x, klein, 3);
  CHECK(kl.at(W("b^2 a")) == x.at(W("a")));
  CHECK(kl.at(W("a b")) == x.at(W("a^-1")));
}

TEST_CASE("coset color closure") {
  auto g = z2_by(2);
  const Embedding e = z2_into(g);
  const Sft x(Alphabet({"0"}), {}, z2());
  const RightExtension r = right_extension(x, e);
  const Alphabet& b = r.sft.alphabet();
  auto ball = std::make_shared<const Ball>(g, 3);

  BallConfig seed(ball, b);
  seed.colors[*ball->find(W("z"))] = b.pair(0, 1);
  const ColorClosure c = coset_color_closure(r.sft, seed);
  for (std::size_t n = 0; n < ball->size(); ++n) {
    const auto [h, i] = g->split(ball->element(n));
    const bool forward = exponent_sum(h, Generator("a")) >= 0 && exponent_sum(h, Generator("b")) >= 0;
    if (i == 1 && forward) {
      CHECK(c.pi2[n] == 1u);
    } else {
      CHECK(!c.pi2[n]);
    }
  }

  BallConfig full(ball, b);
  for (std::size_t n = 0; n < ball->size(); ++n) full.colors[n] = b.pair(0, g->split(ball->element(n)).second);
  const ColorClosure idem = coset_color_closure(r.sft, full);
  for (std::size_t n = 0; n < ball->size(); ++n) CHECK(idem.pi2[n] == b.project2(*full.colors[n]));

  BallConfig bad(ball, b);
  bad.colors[*ball->find(Word{})] = b.pair(0, 0);
  bad.colors[*ball->find(W("a^2 b"))] = b.pair(0, 1);
  try {
    coset_color_closure(r.sft, bad);
    FAIL("expected PropagationContradiction");
  } catch (const PropagationContradiction& err) {
    REQUIRE(err.path().size() >= 2);
    const std::set<std::size_t> seeds{*ball->find(Word{}), *ball->find(W("a^2 b"))};
    CHECK(seeds.count(err.path().front()));
    CHECK(seeds.count(err.path().back()));
    for (std::size_t n : err.path()) CHECK(g->split(ball->element(n)).second == 0);
  }
}
