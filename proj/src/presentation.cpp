#include "sftg/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "sftg/error.hpp"

namespace sftg {

Presentation::Presentation(std::vector<Generator> generators, std::vector<Word> relators)
    : generators_(std::move(generators)), relators_(std::move(relators)) {
  std::set<Generator> seen;
  for (const Generator& g : generators_) {
    if (!seen.insert(g).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate generator '" + g.name() + "'");
    }
  }
  for (const Word& r : relators_) {
    for (const Letter& l : r.letters()) {
      if (!seen.count(l.generator)) {
        throw Error(ErrorKind::UnknownGenerator,
                    "relator '" + r.to_string() + "' uses unlisted generator '" + l.generator.name() + "'");
      }
    }
  }
}

bool Presentation::has_generator(const Generator& g) const noexcept {
  return std::find(generators_.begin(), generators_.end(), g) != generators_.end();
}

std::size_t Presentation::generator_index(const Generator& g) const {
  auto it = std::find(generators_.begin(), generators_.end(), g);
  if (it == generators_.end()) {
    throw Error(ErrorKind::UnknownGenerator, "'" + g.name() + "' is not a generator");
  }
  return static_cast<std::size_t>(it - generators_.begin());
}

std::string Presentation::to_string() const {
  std::string out = "<";
  for (const Generator& g : generators_) out += " " + g.name();
  out += " |";
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    out += (i == 0 ? " " : " , ") + relators_[i].to_string();
  }
  out += " >";
  return out;
}

namespace {

struct Cursor {
  std::size_t line;
  std::size_t column;
};

Cursor locate(std::string_view text, std::size_t offset) {
  Cursor c{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++c.line;
      c.column = 1;
    } else {
      ++c.column;
    }
  }
  return c;
}

}  // namespace

Presentation parse_presentation(std::string_view input) {
  // Blank out comments so offsets still map to the original text.
  std::string text(input);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '#') continue;
    while (i < text.size() && text[i] != '\n') text[i++] = ' ';
  }
  auto fail = [&](std::size_t offset, const std::string& msg) -> void {
    const Cursor c = locate(input, offset);
    throw ParseError(c.line, c.column, msg);
  };
  const auto open = text.find('<');
  if (open == std::string::npos) fail(0, "expected '<'");
  for (std::size_t i = 0; i < open; ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) fail(i, "unexpected text before '<'");
  }
  const auto bar = text.find('|', open);
  if (bar == std::string::npos) fail(open, "expected '|' after the generator list");
  const auto close = text.find('>', bar);
  if (close == std::string::npos) fail(bar, "expected closing '>'");
  for (std::size_t i = close + 1; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) fail(i, "unexpected text after '>'");
  }

  std::vector<Generator> generators;
  std::set<Generator> seen;
  {
    std::size_t i = open + 1;
    while (i < bar) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < bar && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      const std::string name = text.substr(start, i - start);
      if (!is_valid_identifier(name)) fail(start, "invalid generator name '" + name + "'");
      Generator g{name};
      if (!seen.insert(g).second) fail(start, "duplicate generator '" + name + "'");
      generators.push_back(g);
    }
  }

  std::vector<Word> relators;
  std::size_t start = bar + 1;
  const bool no_relators =
      std::all_of(text.begin() + static_cast<std::ptrdiff_t>(bar + 1),
                  text.begin() + static_cast<std::ptrdiff_t>(close),
                  [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
  while (!no_relators && start <= close) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos || end > close) end = close;
    const std::string_view piece = std::string_view(text).substr(start, end - start);
    if (std::all_of(piece.begin(), piece.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); })) {
      fail(start, "empty relator (write 1 for the identity)");
    }
    const LetterSeq letters = [&] {
      // Word tokens never span lines in practice; parse line by line so the
      // reported column stays accurate.
      LetterSeq out;
      std::size_t offset = 0;
      while (offset <= piece.size()) {
        std::size_t nl = piece.find('\n', offset);
        if (nl == std::string_view::npos) nl = piece.size();
        const Cursor lc = locate(input, start + offset);
        LetterSeq part = parse_letters(piece.substr(offset, nl - offset), lc.line, lc.column);
        out.insert(out.end(), part.begin(), part.end());
        offset = nl + 1;
      }
      return out;
    }();
    for (const Letter& l : letters) {
      if (!seen.count(l.generator)) {
        const auto pos = text.find(l.generator.name(), start);
        fail(pos == std::string::npos ? start : pos, "unknown generator '" + l.generator.name() + "'");
      }
    }
    relators.push_back(reduce(letters));
    start = end + 1;
  }
  return Presentation(std::move(generators), std::move(relators));
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

Presentation surface_presentation(unsigned genus) {
  std::vector<Generator> generators;
  Word relator;
  for (unsigned i = 1; i <= genus; ++i) {
    Generator a{"a" + std::to_string(i)};
    Generator b{"b" + std::to_string(i)};
    generators.push_back(a);
    generators.push_back(b);
    relator *= commutator(Word(a), Word(b));
  }
  if (genus == 0) return {};
  return Presentation(std::move(generators), {relator});
}

// ---------------------------------------------------------------------------

const char* to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::AddRelator: return "AddRelator";
    case StepKind::RemoveRelator: return "RemoveRelator";
    case StepKind::AddGenerator: return "AddGenerator";
    case StepKind::RemoveGenerator: return "RemoveGenerator";
    case StepKind::InvertGenerator: return "InvertGenerator";
    case StepKind::CyclicReduce: return "CyclicReduce";
  }
  return "?";
}

bool is_tietze_move(StepKind kind) noexcept {
  return kind != StepKind::InvertGenerator && kind != StepKind::CyclicReduce;
}

TietzeStep TietzeStep::add_relator(Word relator, std::vector<ConsequenceTerm> certificate, bool unchecked) {
  TietzeStep s;
  s.kind = StepKind::AddRelator;
  s.word = std::move(relator);
  s.certificate = std::move(certificate);
  s.unchecked = unchecked;
  return s;
}

TietzeStep TietzeStep::remove_relator(std::size_t index, Word relator,
                                      std::vector<ConsequenceTerm> certificate, bool unchecked) {
  TietzeStep s;
  s.kind = StepKind::RemoveRelator;
  s.relator = index;
  s.word = std::move(relator);
  s.certificate = std::move(certificate);
  s.unchecked = unchecked;
  return s;
}

TietzeStep TietzeStep::add_generator(Generator g, Word defining_word) {
  TietzeStep s;
  s.kind = StepKind::AddGenerator;
  s.generator = std::move(g);
  s.word = std::move(defining_word);
  return s;
}

TietzeStep TietzeStep::remove_generator(Generator g, std::size_t relator, Word replacement) {
  TietzeStep s;
  s.kind = StepKind::RemoveGenerator;
  s.generator = std::move(g);
  s.relator = relator;
  s.word = std::move(replacement);
  return s;
}

TietzeStep TietzeStep::invert_generator(Generator g) {
  TietzeStep s;
  s.kind = StepKind::InvertGenerator;
  s.generator = std::move(g);
  return s;
}

TietzeStep TietzeStep::cyclic_reduce(std::size_t relator, Word conjugator) {
  TietzeStep s;
  s.kind = StepKind::CyclicReduce;
  s.relator = relator;
  s.word = std::move(conjugator);
  return s;
}

std::string TietzeStep::to_string() const {
  std::string out = sftg::to_string(kind);
  if (!is_tietze_move(kind)) out = "[marker] " + out;
  if (phase != 0) out = "phase " + std::to_string(phase) + ": " + out;
  switch (kind) {
    case StepKind::AddRelator:
      out += " " + word.to_string();
      break;
    case StepKind::RemoveRelator:
      out += " #" + std::to_string(relator + 1) + " " + word.to_string();
      break;
    case StepKind::AddGenerator:
      out += " " + generator->name() + " = " + word.to_string();
      break;
    case StepKind::RemoveGenerator:
      out += " " + generator->name() + " -> " + word.to_string() + " (relator #" + std::to_string(relator + 1) + ")";
      break;
    case StepKind::InvertGenerator:
      out += " " + generator->name() + " -> " + generator->name() + "^-1";
      break;
    case StepKind::CyclicReduce:
      out += " relator #" + std::to_string(relator + 1) + " conjugator " + word.to_string();
      break;
  }
  if (!certificate.empty()) out += " [certificate: " + std::to_string(certificate.size()) + " terms]";
  if (unchecked) out += " [unchecked]";
  return out;
}

std::optional<Word> solve_for_generator(const Word& relator, const Generator& g) {
  const OccurrenceCounts counts = occurrences(relator.letters(), g);
  if (counts.positive + counts.negative != 1) return std::nullopt;
  const auto letters = relator.letters();
  std::size_t pos = 0;
  while (letters[pos].generator != g) ++pos;
  // Rotate to g^e u with u free of g.
  LetterSeq rest(letters.begin() + static_cast<std::ptrdiff_t>(pos + 1), letters.end());
  rest.insert(rest.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(pos));
  const Word u = reduce(rest);
  return letters[pos].sign > 0 ? u.inverse() : u;
}

namespace {

[[noreturn]] void inapplicable(const TietzeStep& step, const std::string& msg) {
  throw Error(ErrorKind::InapplicableStep, std::string(to_string(step.kind)) + ": " + msg);
}

void require_known(const std::vector<Generator>& gens, const Word& w, const TietzeStep& step) {
  for (const Letter& l : w.letters()) {
    if (std::find(gens.begin(), gens.end(), l.generator) == gens.end()) {
      inapplicable(step, "word uses unknown generator '" + l.generator.name() + "'");
    }
  }
}

// Evaluates a consequence certificate; `excluded` marks a relator that may not
// be used (the one being removed).
Word certificate_product(const std::vector<Word>& relators, const TietzeStep& step,
                         std::optional<std::size_t> excluded) {
  Word product;
  for (const ConsequenceTerm& term : step.certificate) {
    if (term.relator >= relators.size()) inapplicable(step, "certificate refers to a missing relator");
    if (excluded && term.relator == *excluded) inapplicable(step, "certificate uses the relator being removed");
    if (term.sign != 1 && term.sign != -1) inapplicable(step, "certificate sign must be +1 or -1");
    product *= term.conjugator * relators[term.relator].power(term.sign) * term.conjugator.inverse();
  }
  return product;
}

}  // namespace

Presentation apply_tietze(const Presentation& p, const TietzeStep& step) {
  std::vector<Generator> gens = p.generators();
  std::vector<Word> rels = p.relators();
  switch (step.kind) {
    case StepKind::AddRelator: {
      require_known(gens, step.word, step);
      if (!step.word.empty() && !step.unchecked) {
        if (step.certificate.empty()) {
          inapplicable(step, "relator is not freely trivial and carries no consequence certificate");
        }
        if (certificate_product(rels, step, std::nullopt) != step.word) {
          inapplicable(step, "certificate does not reduce to the added relator");
        }
      }
      rels.push_back(step.word);
      break;
    }
    case StepKind::RemoveRelator: {
      if (step.relator >= rels.size()) inapplicable(step, "no relator at that index");
      if (rels[step.relator] != step.word) inapplicable(step, "relator at that index differs from the payload");
      if (!step.word.empty() && !step.unchecked) {
        if (step.certificate.empty()) {
          inapplicable(step, "relator is not freely trivial and carries no redundancy certificate");
        }
        if (certificate_product(rels, step, step.relator) != step.word) {
          inapplicable(step, "certificate does not reduce to the removed relator");
        }
      }
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(step.relator));
      break;
    }
    case StepKind::AddGenerator: {
      if (!step.generator) inapplicable(step, "missing generator");
      if (std::find(gens.begin(), gens.end(), *step.generator) != gens.end()) {
        inapplicable(step, "generator '" + step.generator->name() + "' already exists");
      }
      require_known(gens, step.word, step);
      gens.push_back(*step.generator);
      rels.push_back(Word(*step.generator) * step.word.inverse());
      break;
    }
    case StepKind::RemoveGenerator: {
      if (!step.generator) inapplicable(step, "missing generator");
      auto it = std::find(gens.begin(), gens.end(), *step.generator);
      if (it == gens.end()) inapplicable(step, "generator '" + step.generator->name() + "' does not exist");
      if (step.relator >= rels.size()) inapplicable(step, "no relator at that index");
      const std::optional<Word> value = solve_for_generator(rels[step.relator], *step.generator);
      if (!value) {
        inapplicable(step, "relator '" + rels[step.relator].to_string() + "' must contain '" +
                               step.generator->name() + "' exactly once");
      }
      if (!step.word.empty() && step.word != *value) {
        inapplicable(step, "replacement word differs from the one the relator determines");
      }
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(step.relator));
      gens.erase(it);
      SubstitutionRules rules;
      for (const Generator& g : gens) rules.emplace(g, Word(g));
      rules[*step.generator] = *value;
      for (Word& r : rels) r = substitute(r, rules);
      break;
    }
    case StepKind::InvertGenerator: {
      if (!step.generator || std::find(gens.begin(), gens.end(), *step.generator) == gens.end()) {
        inapplicable(step, "unknown generator");
      }
      SubstitutionRules rules;
      for (const Generator& g : gens) rules.emplace(g, Word(g));
      rules[*step.generator] = Word(*step.generator, -1);
      for (Word& r : rels) r = substitute(r, rules);
      break;
    }
    case StepKind::CyclicReduce: {
      if (step.relator >= rels.size()) inapplicable(step, "no relator at that index");
      CyclicReduction cr = cyclic_reduce(rels[step.relator]);
      if (cr.conjugator != step.word) inapplicable(step, "conjugator differs from the relator's peeled prefix");
      rels[step.relator] = std::move(cr.core);
      break;
    }
  }
  return Presentation(std::move(gens), std::move(rels));
}

Presentation replay(const Presentation& p, std::span<const TietzeStep> log) {
  Presentation cur = p;
  for (const TietzeStep& step : log) cur = apply_tietze(cur, step);
  return cur;
}

// ---------------------------------------------------------------------------

long exponent_measure(const Word& relator, std::span<const Generator> generators) {
  long total = 0;
  for (const Generator& g : generators) total += std::labs(exponent_sum(relator, g));
  return total;
}

namespace {

void require_one_relator(const Presentation& p, std::size_t min_rank) {
  if (p.relators().size() != 1) {
    throw Error(ErrorKind::PreconditionViolated,
                "expected exactly one relator, found " + std::to_string(p.relators().size()));
  }
  if (p.rank() < min_rank) {
    throw Error(ErrorKind::PreconditionViolated, "expected at least " + std::to_string(min_rank) +
                                                     " generators, found " + std::to_string(p.rank()));
  }
  if (cyclic_reduce(p.relators()[0]).core.empty()) {
    throw Error(ErrorKind::PreconditionViolated, "relator is trivial after cyclic reduction");
  }
}

std::vector<Generator> fresh_names(std::size_t n, const std::set<std::string>& used) {
  for (unsigned suffix = 0;; ++suffix) {
    std::vector<Generator> out;
    bool clash = false;
    for (std::size_t i = 1; i <= n && !clash; ++i) {
      std::string name = "t" + std::to_string(i);
      if (suffix > 0) name += "_" + std::to_string(suffix);
      clash = used.count(name) > 0;
      out.emplace_back(name);
    }
    if (!clash) return out;
  }
}

}  // namespace

RewriteOutcome magnus_moldavansky(const Presentation& input) {
  require_one_relator(input, 3);

  Presentation cur = input;
  std::vector<TietzeStep> log;
  std::vector<long> measures;
  std::set<std::string> used;
  for (const Generator& g : input.generators()) used.insert(g.name());
  std::size_t substitutions = 0;

  auto push = [&](TietzeStep step, int phase) {
    step.phase = phase;
    cur = apply_tietze(cur, step);
    log.push_back(std::move(step));
  };

  for (;;) {
    if (!is_cyclically_reduced(cur.relators()[0])) {
      push(TietzeStep::cyclic_reduce(0, cyclic_reduce(cur.relators()[0]).conjugator), 0);
    }
    const Word r = cur.relators()[0];
    const std::vector<Generator> gens = cur.generators();
    measures.push_back(exponent_measure(r, gens));

    for (const Generator& g : gens) {
      if (occurs(r, g)) continue;
      std::vector<Generator> rest;
      for (const Generator& h : gens) {
        if (h != g) rest.push_back(h);
      }
      return FreeProductSplit{g, Presentation(rest, {r}), cur, std::move(log), std::move(measures)};
    }
    for (const Generator& g : gens) {
      if (exponent_sum(r, g) == 0) return Witness{cur, g, std::move(log), std::move(measures), substitutions};
    }

    // Orientation: make every exponent sum positive.
    for (const Generator& g : gens) {
      if (exponent_sum(cur.relators()[0], g) < 0) push(TietzeStep::invert_generator(g), 0);
    }
    const Word oriented = cur.relators()[0];
    std::vector<std::size_t> order(gens.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return exponent_sum(oriented, gens[x]) < exponent_sum(oriented, gens[y]);
    });
    const std::size_t n = gens.size();
    std::vector<Generator> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = gens[order[i]];
    const std::vector<Generator> t = fresh_names(n, used);
    for (const Generator& g : t) used.insert(g.name());

    // Phase 1: t_1 = s_1 s_n, t_i = s_i. The defining relator of t_i lands at
    // index i + 1 (index 0 is the main relator).
    push(TietzeStep::add_generator(t[0], Word(s[0]) * Word(s[n - 1])), 1);
    for (std::size_t i = 1; i < n; ++i) push(TietzeStep::add_generator(t[i], Word(s[i])), 1);
    // Phase 2: s_1 -> t_1 s_n^-1 using t_1 s_n^-1 s_1^-1.
    push(TietzeStep::remove_generator(s[0], 1, Word(t[0]) * Word(s[n - 1], -1)), 2);
    // Phase 3: s_i -> t_i; each removal consumes the relator at index 1.
    for (std::size_t i = 1; i < n; ++i) push(TietzeStep::remove_generator(s[i], 1, Word(t[i])), 3);
    ++substitutions;

    if (cyclic_reduce(cur.relators()[0]).core.empty()) {
      // The substitution is a free-group automorphism, so this cannot happen.
      throw Error(ErrorKind::ModelFailure, "substituted relator became freely trivial");
    }
  }
}

std::vector<Generator> freiheitssatz_subgroup(const Presentation& p, const Generator& s) {
  require_one_relator(p, 1);
  const Word& r = p.relators()[0];
  if (!is_cyclically_reduced(r)) {
    throw Error(ErrorKind::PreconditionViolated, "relator must be cyclically reduced");
  }
  p.generator_index(s);
  if (!occurs(r, s)) {
    throw Error(ErrorKind::GeneratorAbsentFromRelator, "'" + s.name() + "' does not occur in the relator");
  }
  std::vector<Generator> out;
  for (const Generator& g : p.generators()) {
    if (g != s) out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------

const Citation& citation(std::string_view anchor) {
  static const std::map<std::string, Citation, std::less<>> table = [] {
    std::map<std::string, Citation, std::less<>> t;
    auto add = [&](const char* key, const char* statement) { t.emplace(key, Citation{key, statement}); };
    add("freiheitssatz",
        "Magnus' Freiheitssatz: in <S | r> with r cyclically reduced and s occurring in r, "
        "S \\ {s} freely generates a free subgroup of rank |S|-1");
    add("piantadosi",
        "Piantadosi: every free group of rank at least 2 carries an SFT that is weakly but not "
        "strongly aperiodic");
    add("jeandel", "Jeandel: the free extension of a weakly aperiodic SFT from a subgroup is weakly aperiodic");
    add("barbieri",
        "Barbieri: if some g != 1 has no positive power conjugate into H \\ {1}, then the free "
        "extension of any SFT on H is not strongly aperiodic");
    add("cohen", "Cohen (with the Genevois-Salo patch): a group with infinitely many ends has no strongly aperiodic SFT");
    add("free-product-ends",
        "a free product A * B with A nontrivial and B infinite cyclic has infinitely many ends");
    add("ends-free-subgroup", "a finitely generated group with infinitely many ends contains a free subgroup of rank 2");
    add("bitar-virtually-z2",
        "Bitar: virtually cyclic groups and torsion-free virtually Z^2 groups are periodically rigid");
    add("finite-index-heredity",
        "right extension along a finite-index subgroup preserves weak-but-not-strong aperiodicity");
    return t;
  }();
  auto it = table.find(anchor);
  if (it == table.end()) throw Error(ErrorKind::InvalidArgument, "unknown citation '" + std::string(anchor) + "'");
  return it->second;
}

HomCertificate exponent_hom_check(const Presentation& p, const Generator& c) {
  HomCertificate cert;
  cert.generator = c;
  cert.valid = true;
  for (const Word& r : p.relators()) {
    cert.relator_sums.push_back(exponent_sum(r, c));
    if (cert.relator_sums.back() != 0) cert.valid = false;
  }
  return cert;
}

NonRigidityCertificate analyze_one_relator(const Presentation& p) {
  RewriteOutcome outcome = magnus_moldavansky(p);
  if (auto* split = std::get_if<FreeProductSplit>(&outcome)) {
    return InfiniteEndsCertificate{
        std::move(*split),
        {citation("free-product-ends"), citation("ends-free-subgroup"), citation("piantadosi"),
         citation("jeandel"), citation("cohen")}};
  }
  Witness w = std::get<Witness>(std::move(outcome));
  ZeroExponentCertificate cert;
  cert.zero_generator = w.zero_generator;
  cert.free_subgroup = freiheitssatz_subgroup(w.presentation, w.zero_generator);
  cert.hom = exponent_hom_check(w.presentation, w.zero_generator);
  cert.citations = {citation("freiheitssatz"), citation("piantadosi"), citation("jeandel"), citation("barbieri")};
  cert.witness = std::move(w);
  return cert;
}

// ---------------------------------------------------------------------------

Verdict classify_quasiplanar(const FactorList& f) {
  if (f.factors.empty()) throw Error(ErrorKind::InvalidArgument, "factor list must not be empty");
  std::vector<Factor> nontrivial;
  for (const Factor& x : f.factors) {
    if (!x.trivial()) nontrivial.push_back(x);
  }
  const bool all_free = std::all_of(nontrivial.begin(), nontrivial.end(),
                                    [](const Factor& x) { return x.kind == Factor::Kind::Free; });
  if (nontrivial.empty()) {
    return {true, "finite", "every factor is trivial, so G is finite and every configuration has a finite orbit"};
  }
  if (all_free) {
    unsigned rank = 0;
    for (const Factor& x : nontrivial) rank += x.parameter;
    if (rank == 1) {
      return {true, "virtually-cyclic", "G is virtually Z; virtually cyclic groups are periodically rigid"};
    }
    return {false, "virtually-free",
            "G is virtually free of rank " + std::to_string(rank) +
                ", so it contains F2 and has infinitely many ends: a weakly aperiodic SFT exists and none is "
                "strongly aperiodic"};
  }
  if (nontrivial.size() >= 2) {
    return {false, "free-product",
            "G is virtually a free product of at least two nontrivial factors, so it contains F2 and has "
            "infinitely many ends"};
  }
  const Factor& only = nontrivial.front();
  if (only.parameter == 1) {
    if (f.torsion_free || !f.finite_index_supergroup) {
      return {true, "virtually-Z2", "G is torsion-free virtually Z^2, which is periodically rigid"};
    }
    return {false, "virtually-Z2-with-torsion",
            "G has torsion and contains Z^2 with finite index; lifting a strongly aperiodic Z^2 SFT yields a "
            "weakly but not strongly aperiodic SFT"};
  }
  return {false, "surface",
          "G is virtually the genus-" + std::to_string(only.parameter) +
              " surface group, a one-relator group on at least three generators; the property passes to "
              "finite-index supergroups"};
}

}  // namespace sftg
