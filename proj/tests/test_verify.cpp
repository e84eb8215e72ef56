#include <algorithm>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "sftg/error.hpp"
#include "sftg/verify.hpp"

using namespace sftg;

namespace {

Word W(std::string_view s) { return parse_word(s); }
Presentation P(std::string_view s) { return parse_presentation(s); }
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

Sft z_difference() { return Sft(Alphabet({"0", "1"}), {{{Word{}, W("a")}, {0, 0}}, {{Word{}, W("a")}, {1, 1}}}, z1()); }

std::shared_ptr<const CosetTable> table(ModelPtr m, std::initializer_list<const char*> gens) {
  std::vector<Word> ws;
  for (const char* g : gens) ws.push_back(W(g));
  return std::make_shared<const CosetTable>(todd_coxeter(m->presentation(), ws));
}

// Every coloring of the coset space, checked exactly.
std::optional<std::vector<Color>> brute_force(const Sft& s, std::shared_ptr<const CosetTable> t) {
  const std::size_t k = t->index(), a = s.alphabet().size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= a;
  for (std::size_t code = 0; code < total; ++code) {
    QuotientConfig q{t, s.alphabet(), {}};
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i) {
      q.colors.push_back(c % a);
      c /= a;
    }
    std::reverse(q.colors.begin(), q.colors.end());  // lexicographic with cell 0 most significant
    if (quotient_violations(s, q).empty()) return q.colors;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("constraint search") {
  std::vector<Color> forbid{0, 0};
  std::vector<CspConstraint> cs{{{0, 1}, {&forbid}}, {{1, 2}, {&forbid}}};
  std::vector<std::vector<Color>> seen;
  const SearchStats st = run_csp(3, 2, cs, false, 1000, [&](const std::vector<Color>& a) {
    seen.push_back(a);
    return true;
  });
  CHECK(st.status == SearchStatus::Exhausted);
  // Oracle: binary strings of length 3 without two adjacent zeros.
  CHECK(seen == std::vector<std::vector<Color>>{{0, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}});
  CHECK(st.solutions == 5);
  CHECK(run_csp(3, 2, cs, false, 2, [](const std::vector<Color>&) { return true; }).status ==
        SearchStatus::BudgetExceeded);
  CHECK(run_csp(3, 2, cs, true, 100, [](const std::vector<Color>&) { return true; }).solutions == 0);
}

TEST_CASE("tiling balls") {
  auto b3 = std::make_shared<const Ball>(z2(), 3);
  const TileResult full = tile_ball(Sft(Alphabet({"x", "y"}), {}, z2()), b3, 1000);
  REQUIRE(full.outcome == TileOutcome::Satisfiable);
  for (const auto& c : full.config->colors) CHECK(c == 0u);

  const Sft none(Alphabet({"x", "y"}), {{{Word{}}, {0}}, {{Word{}}, {1}}}, z2());
  const TileResult r0 = tile_ball(none, std::make_shared<const Ball>(z2(), 0), 1000);
  CHECK(r0.outcome == TileOutcome::Unsatisfiable);
  CHECK(r0.nodes_explored == 2);

  const Sft gm = golden_mean(z2());
  const TileResult g = tile_ball(gm, b3, 100000);
  REQUIRE(g.outcome == TileOutcome::Satisfiable);
  CHECK(violations(gm, *g.config).empty());
  CHECK(g.config->total());
  CHECK(tile_ball(gm, b3, 10).outcome == TileOutcome::BudgetExceeded);
  CHECK(tile_ball(Sft(gm.alphabet(), {Pattern{}}, z2()), b3, 10).outcome == TileOutcome::Unsatisfiable);
  CHECK_THROWS_AS(tile_ball(gm, std::make_shared<const Ball>(z1(), 2), 10), Error);
}

TEST_CASE("tiling is deterministic and lexicographic") {
  // Forbid 0 everywhere except along a coset-dependent rule so the first tiling is nontrivial.
  const Sft s(Alphabet({"0", "1", "2"}), {{{Word{}, W("a")}, {0, 0}}, {{Word{}, W("b")}, {0, 0}}, {{Word{}}, {1}}}, z2());
  auto b = std::make_shared<const Ball>(z2(), 2);
  const TileResult first = tile_ball(s, b, 100000);
  const TileResult again = tile_ball(s, std::make_shared<const Ball>(z2(), 2), 100000);
  REQUIRE(first.outcome == TileOutcome::Satisfiable);
  CHECK(first.config->colors == again.config->colors);
  CHECK(first.nodes_explored == again.nodes_explored);
  std::optional<std::vector<std::optional<Color>>> lex;
  for_each_tiling(s, b, 1000000, [&](const BallConfig& c) {
    CHECK(violations(s, c).empty());
    if (!lex || c.colors < *lex) lex = c.colors;
    return true;
  });
  CHECK(lex == first.config->colors);
}

TEST_CASE("unsatisfiability is monotone in the radius") {
  std::mt19937 rng(21);
  std::size_t unsat = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Pattern> f;
    const char* steps[] = {"a", "b", "a b", "a^-1 b"};
    for (int n = 0; n < 5; ++n) f.push_back({{Word{}, W(steps[rng() % 4])}, {rng() % 2, rng() % 2}});
    const Sft s(Alphabet({"0", "1"}), f, z2());
    bool dead = false;
    for (std::size_t r = 0; r <= 3; ++r) {
      const TileOutcome o = tile_ball(s, std::make_shared<const Ball>(z2(), r), 1000000).outcome;
      REQUIRE(o != TileOutcome::BudgetExceeded);
      if (dead) CHECK(o == TileOutcome::Unsatisfiable);
      dead = dead || o == TileOutcome::Unsatisfiable;
    }
    unsat += dead;
  }
  CHECK(unsat > 0);
}

TEST_CASE("strongly periodic search") {
  const Sft d = z_difference();
  const auto i1 = table(z1(), {"a"});
  const auto i2 = table(z1(), {"a^2"});
  CHECK(search_strongly_periodic(Sft(d.alphabet(), {}, z1()), {i1}, 100).outcome == PeriodicOutcome::Found);
  const auto none = search_strongly_periodic(d, {i1}, 100);
  CHECK(none.outcome == PeriodicOutcome::NoneUpToQuotient);
  const auto found = search_strongly_periodic(d, {i1, i2}, 100);
  REQUIRE(found.outcome == PeriodicOutcome::Found);
  CHECK(found.quotient == 1);
  CHECK(found.config->colors == std::vector<Color>{0, 1});
  CHECK(found.attempts.size() == 2);
  CHECK(quotient_violations(d, *found.config).empty());
  auto b = std::make_shared<const Ball>(z1(), 6);
  CHECK(violations(d, expand(*found.config, b)).empty());

  const auto gm = search_strongly_periodic(golden_mean(z2()), {table(z2(), {"a", "b"})}, 100);
  REQUIRE(gm.outcome == PeriodicOutcome::Found);
  CHECK(gm.config->colors == std::vector<Color>{0});

  CHECK(search_strongly_periodic(d, {i1, i2}, 2).outcome == PeriodicOutcome::BudgetExceeded);
  CHECK_THROWS_AS(search_strongly_periodic(d, {table(z2(), {"a"})}, 100), Error);
}

TEST_CASE("periodic search agrees with brute force") {
  std::mt19937 rng(77);
  const ModelPtr models[] = {z1(), z2()};
  const std::vector<std::vector<std::shared_ptr<const CosetTable>>> quotients = {
      {table(z1(), {"a"}), table(z1(), {"a^2"}), table(z1(), {"a^3"})},
      {table(z2(), {"a", "b"}), table(z2(), {"a^2", "b"}), table(z2(), {"a", "b^3"}), table(z2(), {"a b", "a^3"})}};
  const std::vector<std::vector<const char*>> supports = {{"a", "a^2", "a^-1"}, {"a", "b", "a b^-1", "b^2"}};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = rng() % 2;
    const std::size_t letters = 1 + rng() % 3;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < letters; ++c) names.push_back(std::to_string(c));
    std::vector<Pattern> f;
    for (std::size_t n = rng() % 6; n > 0; --n) {
      Pattern p{{Word{}}, {rng() % letters}};
      if (rng() % 3) {
        p.support.push_back(W(supports[m][rng() % supports[m].size()]));
        p.colors.push_back(rng() % letters);
      }
      f.push_back(p);
    }
    const Sft s(Alphabet(names), f, models[m]);
    for (const auto& t : quotients[m]) {
      const auto r = search_strongly_periodic(s, {t}, 100000);
      const auto oracle = brute_force(s, t);
      CHECK((r.outcome == PeriodicOutcome::Found) == oracle.has_value());
      if (oracle && r.config) CHECK(r.config->colors == *oracle);
    }
  }
}

TEST_CASE("abelian quotient tables") {
  const CosetTable t = abelian_quotient_table(surface_presentation(2), 2);
  CHECK(t.index() == 16);
  CHECK(check_table(t).ok);
  const CosetTable back = parse_coset_table(to_text(t));
  CHECK(back == t);
  // The subgroup generators lie in the kernel: every one fixes coset 1.
  for (const Word& w : t.subgroup_generators) CHECK(t.trace(0, w) == 0);

  // Z modulo <a^2>: the relator a^2 vanishes mod 2 and the index stays 2.
  CHECK(abelian_quotient_table(P("< a | a^2 >"), 2).index() == 2);
  CHECK(abelian_quotient_table(P("< a b | a b >"), 3).index() == 3);
  CHECK(abelian_quotient_table(P("< a b | a >"), 2).index() == 2);
  CHECK_THROWS_AS(abelian_quotient_table(P("< a | >"), 4), Error);
}

TEST_CASE("certificate pipeline on <a b c | a b c>") {
  const Presentation p = P("< a b c | a b c >");
  PipelineOptions o;
  o.hom_samples = 200;
  const CertificateReport r = check_theorem15_pipeline(p, std::nullopt, {}, o, {"analyze", {"abc.grp"}, {}, tool_version()});
  CHECK(r.branch == "zero-exponent");
  CHECK(r.proved_ok());
  REQUIRE(r.witness);
  CHECK(r.witness->zero_generator == Generator("t3"));
  REQUIRE(r.extension);
  CHECK(r.extension->forbidden().size() == 2);
  REQUIRE(r.tiling);
  CHECK(violations(*r.extension, *r.tiling).empty());
  REQUIRE(r.periodic);
  CHECK(r.periodic->outcome == PeriodicOutcome::Found);

  std::vector<std::string> anchors;
  for (const Citation& c : r.cited) anchors.push_back(c.anchor);
  for (const char* a : {"freiheitssatz", "piantadosi", "barbieri"}) {
    CHECK(std::find(anchors.begin(), anchors.end(), a) != anchors.end());
  }

  const std::string text = to_text(r);
  CHECK(text.find("PROVED\n") != std::string::npos);
  CHECK(text.find("CITED\n") != std::string::npos);
  CHECK(text.find("EVIDENCE\n") != std::string::npos);
  CHECK(text.find("FAILED") == std::string::npos);
  CHECK(text == to_text(check_theorem15_pipeline(p, std::nullopt, {}, o, {"analyze", {"abc.grp"}, {}, tool_version()})));
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["branch"] == "zero-exponent");
  CHECK(j["proved"].size() == r.proved.size());
}

TEST_CASE("certificate pipeline on the genus 2 surface") {
  PipelineOptions o;
  o.hom_samples = 100;
  o.radius = 2;
  const CertificateReport r = check_theorem15_pipeline(surface_presentation(2), std::nullopt, {}, o);
  CHECK(r.branch == "zero-exponent");
  CHECK(r.proved_ok());
  CHECK(r.tietze_log.empty());
  CHECK(r.conclusion.find("not periodically rigid") != std::string::npos);
}

TEST_CASE("certificate pipeline on a free product") {
  const CertificateReport r = check_theorem15_pipeline(P("< a b c | a b >"), std::nullopt, {}, PipelineOptions{});
  CHECK(r.branch == "infinite-ends");
  CHECK(r.proved_ok());
  REQUIRE(r.split);
  CHECK(r.split->absent_generator == Generator("c"));
  CHECK(!r.tiling);
}

TEST_CASE("pipeline plugs") {
  auto f1 = std::make_shared<FreeGroupModel>(G({"x"}));
  const Sft plug(Alphabet({"0", "1"}), {{{Word{}, W("x")}, {0, 0}}, {{Word{}, W("x")}, {1, 1}}}, f1);
  PipelineOptions o;
  o.hom_samples = 10;
  const CertificateReport r = check_theorem15_pipeline(P("< a b c | a b c >"), plug, {}, o);
  CHECK(r.proved_ok());
  REQUIRE(r.periodic);
  CHECK(r.periodic->outcome == PeriodicOutcome::Found);

  auto f5 = std::make_shared<FreeGroupModel>(G({"x", "y", "z", "w", "v"}));
  try {
    check_theorem15_pipeline(P("< a b c | a b c >"), Sft(Alphabet({"0"}), {}, f5), {}, o);
    FAIL("expected a rank error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
    CHECK(std::string(e.what()).find("stage plug") != std::string::npos);
  }
  CHECK_THROWS_AS(check_theorem15_pipeline(P("< a b c | a b c >"), golden_mean(z2()), {}, o), Error);
}
