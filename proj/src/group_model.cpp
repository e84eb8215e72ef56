#include "sftg/group_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "sftg/error.hpp"

namespace sftg {

GroupModel::GroupModel(std::vector<Generator> generators) : generators_(std::move(generators)) {
  std::set<Generator> seen;
  for (const Generator& g : generators_) {
    if (!seen.insert(g).second) throw Error(ErrorKind::InvalidArgument, "duplicate generator '" + g.name() + "'");
  }
}

bool GroupModel::has_generator(const Generator& g) const noexcept {
  return std::find(generators_.begin(), generators_.end(), g) != generators_.end();
}

void GroupModel::check_alphabet(const Word& w) const {
  for (const Letter& l : w.letters()) {
    if (!has_generator(l.generator)) {
      throw Error(ErrorKind::UnknownGenerator, "'" + l.generator.name() + "' is not a generator of " + describe());
    }
  }
}

bool GroupModel::equal(const Word& u, const Word& v) const { return normal_form(u) == normal_form(v); }

std::string GroupModel::bucket_key(const Word& w) const { return normal_form(w).to_string(); }

namespace {

std::string join_names(const std::vector<Generator>& gens) {
  std::string out;
  for (const Generator& g : gens) out += (out.empty() ? "" : " ") + g.name();
  return out;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------

FreeGroupModel::FreeGroupModel(std::vector<Generator> generators) : GroupModel(std::move(generators)) {}

Word FreeGroupModel::normal_form(const Word& w) const {
  check_alphabet(w);
  return w;
}

Presentation FreeGroupModel::presentation() const { return Presentation(generators(), {}); }

std::string FreeGroupModel::describe() const { return "free " + join_names(generators()); }

// ---------------------------------------------------------------------------

FreeAbelianModel::FreeAbelianModel(std::vector<Generator> generators) : GroupModel(std::move(generators)) {}

Word FreeAbelianModel::normal_form(const Word& w) const {
  const std::vector<long> exps = abelianization_vector(w, generators());
  Word out;
  for (std::size_t i = 0; i < exps.size(); ++i) out *= Word(generators()[i]).power(exps[i]);
  return out;
}

Presentation FreeAbelianModel::presentation() const {
  std::vector<Word> rels;
  const auto& g = generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) rels.push_back(commutator(Word(g[i]), Word(g[j])));
  }
  return Presentation(g, rels);
}

std::string FreeAbelianModel::describe() const { return "free_abelian " + join_names(generators()); }

// ---------------------------------------------------------------------------

namespace {
std::vector<Generator> with_extra(std::vector<Generator> gens, const Generator& extra) {
  gens.push_back(extra);
  return gens;
}
}  // namespace

DirectWithCyclicModel::DirectWithCyclicModel(ModelPtr base, Generator cyclic, unsigned order)
    : GroupModel(with_extra(base->generators(), cyclic)), base_(std::move(base)), cyclic_(std::move(cyclic)), order_(order) {
  if (order_ == 0) throw Error(ErrorKind::InvalidArgument, "cyclic factor order must be positive");
}

std::pair<Word, unsigned> DirectWithCyclicModel::split(const Word& w) const {
  check_alphabet(w);
  LetterSeq rest;
  long exponent = 0;
  for (const Letter& l : w.letters()) {
    if (l.generator == cyclic_) {
      exponent += l.sign;
    } else {
      rest.push_back(l);
    }
  }
  const long k = static_cast<long>(order_);
  const long reduced = ((exponent % k) + k) % k;
  return {base_->normal_form(reduce(rest)), static_cast<unsigned>(reduced)};
}

Word DirectWithCyclicModel::normal_form(const Word& w) const {
  auto [base_part, i] = split(w);
  return base_part * Word(cyclic_, static_cast<int>(i));
}

bool DirectWithCyclicModel::equal(const Word& u, const Word& v) const {
  auto [bu, iu] = split(u);
  auto [bv, iv] = split(v);
  return iu == iv && base_->equal(bu, bv);
}

std::string DirectWithCyclicModel::bucket_key(const Word& w) const {
  auto [b, i] = split(w);
  return base_->bucket_key(b) + " |" + std::to_string(i);
}

Presentation DirectWithCyclicModel::presentation() const {
  Presentation bp = base_->presentation();
  std::vector<Word> rels = bp.relators();
  rels.push_back(Word(cyclic_, static_cast<int>(order_)));
  for (const Generator& g : base_->generators()) rels.push_back(commutator(Word(g), Word(cyclic_)));
  return Presentation(generators(), rels);
}

std::string DirectWithCyclicModel::describe() const {
  return "direct_cyclic " + cyclic_.name() + " " + std::to_string(order_) + " " + base_->describe();
}

// ---------------------------------------------------------------------------

namespace {

std::optional<SubstitutionRules> invert_signed_permutation(const std::vector<Generator>& gens,
                                                           const SubstitutionRules& phi) {
  SubstitutionRules inverse;
  for (const Generator& x : gens) {
    const Word& image = phi.at(x);
    if (image.size() != 1) return std::nullopt;
    const Letter& l = image[0];
    if (inverse.count(l.generator)) return std::nullopt;
    inverse[l.generator] = Word(x, l.sign);
  }
  return inverse;
}

std::string rules_text(const std::vector<Generator>& gens, const SubstitutionRules& rules) {
  std::string out = "{";
  bool first = true;
  for (const Generator& g : gens) {
    out += std::string(first ? " " : " , ") + g.name() + " -> " + rules.at(g).to_string();
    first = false;
  }
  return out + " }";
}

}  // namespace

FreeByCyclicModel::FreeByCyclicModel(std::vector<Generator> free_generators, Generator transversal,
                                     SubstitutionRules automorphism, std::optional<SubstitutionRules> inverse_rules)
    : GroupModel(with_extra(free_generators, transversal)),
      free_(std::move(free_generators)),
      transversal_(std::move(transversal)),
      phi_(std::move(automorphism)) {
  const std::set<Generator> free_set(free_.begin(), free_.end());
  auto check_rules = [&](const SubstitutionRules& rules, const char* what) {
    for (const Generator& x : free_) {
      if (!rules.count(x)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has no rule for '" + x.name() + "'");
    }
    for (const auto& [x, image] : rules) {
      if (!free_set.count(x)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " maps non-free generator '" + x.name() + "'");
      for (const Letter& l : image.letters()) {
        if (!free_set.count(l.generator)) {
          throw Error(ErrorKind::InvalidArgument, std::string(what) + " image uses '" + l.generator.name() + "'");
        }
      }
    }
  };
  check_rules(phi_, "automorphism");
  if (inverse_rules) {
    check_rules(*inverse_rules, "inverse automorphism");
    phi_inverse_ = std::move(*inverse_rules);
    explicit_inverse_ = true;
  } else if (auto inv = invert_signed_permutation(free_, phi_)) {
    phi_inverse_ = std::move(*inv);
  } else {
    throw Error(ErrorKind::InvalidArgument,
                "automorphism is not a signed permutation of the free generators; supply its inverse");
  }
  for (const Generator& x : free_) {
    if (substitute(substitute(Word(x), phi_inverse_), phi_) != Word(x) ||
        substitute(substitute(Word(x), phi_), phi_inverse_) != Word(x)) {
      throw Error(ErrorKind::InvalidArgument, "the supplied maps are not mutually inverse");
    }
  }
}

std::pair<long, Word> FreeByCyclicModel::split(const Word& w) const {
  check_alphabet(w);
  long i = 0;
  Word h;
  for (const Letter& l : w.letters()) {
    if (l.generator == transversal_) {
      // h t = t phi^-1(h), h t^-1 = t^-1 phi(h)
      h = substitute(h, l.sign > 0 ? phi_inverse_ : phi_);
      i += l.sign;
    } else {
      h *= Word(l.generator, l.sign);
    }
  }
  return {i, h};
}

Word FreeByCyclicModel::normal_form(const Word& w) const {
  auto [i, h] = split(w);
  return Word(transversal_).power(i) * h;
}

Presentation FreeByCyclicModel::presentation() const {
  std::vector<Word> rels;
  const Word t(transversal_);
  for (const Generator& x : free_) rels.push_back(t * Word(x) * t.inverse() * phi_.at(x).inverse());
  return Presentation(generators(), rels);
}

std::string FreeByCyclicModel::describe() const {
  std::string out = "free_by_cyclic " + transversal_.name() + " [ " + join_names(free_) + " ] " + rules_text(free_, phi_);
  if (explicit_inverse_) out += " " + rules_text(free_, phi_inverse_);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t common_prefix(std::span<const Letter> a, std::span<const Letter> b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

std::vector<Word> symmetrized(const Word& r) {
  std::vector<Word> out;
  for (const Word& w : cyclic_permutations(r)) out.push_back(w);
  for (const Word& w : cyclic_permutations(r.inverse())) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

SmallCancellationReport small_cancellation_check(const Word& relator) {
  SmallCancellationReport report;
  report.relator_length = relator.size();
  const std::vector<Word> rots = symmetrized(relator);
  std::size_t longest = 0;
  for (std::size_t i = 0; i < rots.size(); ++i) {
    for (std::size_t j = i + 1; j < rots.size(); ++j) {
      const std::size_t n = common_prefix(rots[i].letters(), rots[j].letters());
      if (n > longest) {
        longest = n;
        report.longest_piece = rots[i].subword(0, n);
      }
    }
  }
  report.holds = !relator.empty() && 6 * longest < relator.size();
  return report;
}

DehnModel::DehnModel(const Presentation& p) : GroupModel(p.generators()) {
  if (p.relators().size() != 1) {
    throw Error(ErrorKind::PreconditionViolated, "Dehn backend needs exactly one relator");
  }
  relator_ = cyclic_reduce(p.relators()[0]).core;
  const SmallCancellationReport sc = small_cancellation_check(relator_);
  if (!sc.holds) {
    throw Error(ErrorKind::SmallCancellationViolated,
                "piece '" + sc.longest_piece.to_string() + "' of length " + std::to_string(sc.longest_piece.size()) +
                    " is not shorter than 1/6 of the relator length " + std::to_string(relator_.size()));
  }
  rotations_ = symmetrized(relator_);
  relator_abel_ = abelianization_vector(relator_, generators());
}

Word DehnModel::dehn_reduce(const Word& input) const {
  check_alphabet(input);
  Word cur = input;
  const std::size_t n = relator_.size();
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < cur.size() && !progress; ++i) {
      const auto tail = cur.letters().subspan(i);
      for (const Word& u : rotations_) {
        const std::size_t len = common_prefix(tail, u.letters());
        if (2 * len <= n) continue;
        // u = x y with x the matched prefix; x = y^-1 in the group.
        cur = cur.subword(0, i) * u.subword(len, n - len).inverse() * cur.subword(i + len, cur.size() - i - len);
        progress = true;
        break;
      }
    }
  }
  return cur;
}

bool DehnModel::equal(const Word& u, const Word& v) const { return dehn_reduce(u * v.inverse()).empty(); }

std::string DehnModel::bucket_key(const Word& w) const {
  // Abelianization modulo the relator's vector is invariant under equality.
  std::vector<long> x = abelianization_vector(w, generators());
  std::vector<long> v = relator_abel_;
  auto pivot = std::find_if(v.begin(), v.end(), [](long c) { return c != 0; });
  if (pivot != v.end()) {
    const std::size_t p = static_cast<std::size_t>(pivot - v.begin());
    if (v[p] < 0) {
      for (long& c : v) c = -c;
    }
    const long m = floor_div(x[p], v[p]);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= m * v[i];
  }
  std::string key;
  for (long c : x) key += std::to_string(c) + ",";
  return key;
}

Presentation DehnModel::presentation() const { return Presentation(generators(), {relator_}); }

std::string DehnModel::describe() const { return "dehn " + presentation().to_string(); }

Word dehn_reduce(const Presentation& p, const Word& w) { return DehnModel(p).dehn_reduce(w); }

// ---------------------------------------------------------------------------

OneRelatorFreeModel::OneRelatorFreeModel(const Presentation& p) : GroupModel(p.generators()), presentation_(p) {
  if (p.relators().size() != 1) {
    throw Error(ErrorKind::PreconditionViolated, "one_relator_free backend needs exactly one relator");
  }
  const Word r = cyclic_reduce(p.relators()[0]).core;
  for (const Generator& g : p.generators()) {
    if (auto value = solve_for_generator(r, g)) {
      eliminated_ = g;
      for (const Generator& h : p.generators()) rules_[h] = Word(h);
      rules_[g] = *value;
      return;
    }
  }
  throw Error(ErrorKind::PreconditionViolated, "no generator occurs exactly once in '" + r.to_string() + "'");
}

Word OneRelatorFreeModel::normal_form(const Word& w) const {
  check_alphabet(w);
  return substitute(w, rules_);
}

std::string OneRelatorFreeModel::describe() const { return "one_relator_free " + presentation_.to_string(); }

ModelPtr model_for_one_relator(const Presentation& p) {
  if (p.relators().size() != 1) return nullptr;
  const Word r = cyclic_reduce(p.relators()[0]).core;
  if (r.empty()) return std::make_shared<FreeGroupModel>(p.generators());
  if (small_cancellation_check(r).holds) return std::make_shared<DehnModel>(p);
  for (const Generator& g : p.generators()) {
    if (solve_for_generator(r, g)) return std::make_shared<OneRelatorFreeModel>(p);
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

namespace {

class ModelLexer {
 public:
  explicit ModelLexer(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::string peek() {
    const std::size_t save = pos_;
    std::string tok = next();
    pos_ = save;
    return tok;
  }

  std::string next() {
    skip_space();
    if (pos_ >= text_.size()) return {};
    const char ch = text_[pos_];
    if (ch == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return "->";
    }
    if (std::string_view("[]{}<>|,").find(ch) != std::string_view::npos) {
      ++pos_;
      return std::string(1, ch);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool word_char = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' ||
                             (c == '-' && pos_ > start && text_[pos_ - 1] == '^');
      if (!word_char) break;
      ++pos_;
    }
    if (pos_ == start) fail("unexpected character '" + std::string(1, ch) + "'");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(const std::string& tok) {
    const std::string got = next();
    if (got != tok) fail("expected '" + tok + "', found '" + got + "'");
  }

  // Raw text up to and including the matching '>' of a presentation.
  std::string_view presentation_text() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '<') fail("expected '<'");
    const auto close = text_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated presentation");
    std::string_view out = text_.substr(pos_, close + 1 - pos_);
    pos_ = close + 1;
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(0, 0, "model description '" + std::string(text_) + "': " + msg);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<Generator> parse_names_until(ModelLexer& lex, const std::string& stop) {
  std::vector<Generator> out;
  while (!lex.at_end() && lex.peek() != stop) {
    const std::string tok = lex.next();
    if (!is_valid_identifier(tok)) lex.fail("invalid generator name '" + tok + "'");
    out.emplace_back(tok);
  }
  return out;
}

SubstitutionRules parse_rules(ModelLexer& lex) {
  lex.expect("{");
  SubstitutionRules rules;
  for (;;) {
    const std::string name = lex.next();
    if (name == "}") break;
    if (!is_valid_identifier(name)) lex.fail("invalid rule source '" + name + "'");
    lex.expect("->");
    std::string word_text;
    while (!lex.at_end() && lex.peek() != "," && lex.peek() != "}") word_text += " " + lex.next();
    rules[Generator(name)] = parse_word(word_text);
    const std::string sep = lex.next();
    if (sep == "}") break;
    if (sep != ",") lex.fail("expected ',' or '}' in rules");
  }
  return rules;
}

ModelPtr parse_model_from(ModelLexer& lex) {
  const std::string kind = lex.next();
  if (kind == "free" || kind == "free_abelian") {
    std::vector<Generator> gens = parse_names_until(lex, "");
    if (kind == "free") return std::make_shared<FreeGroupModel>(std::move(gens));
    return std::make_shared<FreeAbelianModel>(std::move(gens));
  }
  if (kind == "direct_cyclic") {
    const std::string name = lex.next();
    if (!is_valid_identifier(name)) lex.fail("invalid cyclic generator name '" + name + "'");
    const std::string order_text = lex.next();
    unsigned order = 0;
    auto [ptr, ec] = std::from_chars(order_text.data(), order_text.data() + order_text.size(), order);
    if (ec != std::errc() || ptr != order_text.data() + order_text.size() || order == 0) {
      lex.fail("invalid cyclic order '" + order_text + "'");
    }
    ModelPtr base = parse_model_from(lex);
    return std::make_shared<DirectWithCyclicModel>(std::move(base), Generator(name), order);
  }
  if (kind == "free_by_cyclic") {
    const std::string name = lex.next();
    if (!is_valid_identifier(name)) lex.fail("invalid transversal name '" + name + "'");
    lex.expect("[");
    std::vector<Generator> free = parse_names_until(lex, "]");
    lex.expect("]");
    SubstitutionRules phi = parse_rules(lex);
    std::optional<SubstitutionRules> inverse;
    if (!lex.at_end() && lex.peek() == "{") inverse = parse_rules(lex);
    return std::make_shared<FreeByCyclicModel>(std::move(free), Generator(name), std::move(phi), std::move(inverse));
  }
  if (kind == "dehn" || kind == "one_relator_free") {
    const Presentation p = parse_presentation(lex.presentation_text());
    if (kind == "dehn") return std::make_shared<DehnModel>(p);
    return std::make_shared<OneRelatorFreeModel>(p);
  }
  lex.fail("unknown model kind '" + kind + "'");
}

}  // namespace

ModelPtr parse_model(std::string_view text) {
  ModelLexer lex(text);
  ModelPtr model = parse_model_from(lex);
  if (!lex.at_end()) lex.fail("trailing text '" + lex.next() + "'");
  return model;
}

}  // namespace sftg
