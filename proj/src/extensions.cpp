#include "sftg/extensions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "sftg/error.hpp"

namespace sftg {

Word Embedding::image(const Word& h) const {
  SubstitutionRules rules;
  for (std::size_t n = 0; n < subgroup_generators.size(); ++n) rules[subgroup_generators[n]] = images[n];
  try {
    return substitute(h, rules);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::MissingRule) throw;
    throw Error(ErrorKind::SupportOutsideSubgroup, "'" + h.to_string() + "' is not a word over the subgroup generators");
  }
}

std::size_t Embedding::index() const {
  if (!table) throw Error(ErrorKind::PreconditionViolated, "the embedding carries no coset table");
  return table->index();
}

void validate(const Embedding& e) {
  if (!e.supergroup) throw Error(ErrorKind::PreconditionViolated, "embedding without a supergroup");
  if (e.subgroup_generators.size() != e.images.size()) {
    throw Error(ErrorKind::PreconditionViolated, "each subgroup generator needs exactly one image");
  }
  std::set<Generator> seen;
  for (const Generator& g : e.subgroup_generators) {
    if (!seen.insert(g).second) throw Error(ErrorKind::PreconditionViolated, "subgroup generator '" + g.name() + "' mapped twice");
  }
  for (const Word& w : e.images) e.supergroup->normal_form(w);
  if (!e.table) return;
  const CosetTable& t = *e.table;
  if (t.presentation.generators() != e.supergroup->generators()) {
    throw Error(ErrorKind::PreconditionViolated, "coset table generators differ from the supergroup's");
  }
  for (const Word& r : t.presentation.relators()) {
    if (!e.supergroup->is_identity(r)) {
      throw Error(ErrorKind::PreconditionViolated, "table relator " + r.to_string() + " is not trivial in the supergroup");
    }
  }
  const Presentation gp = e.supergroup->presentation();
  for (const Word& r : gp.relators()) {
    for (std::size_t c = 0; c < t.index(); ++c) {
      if (t.trace(c, r) != c) {
        throw Error(ErrorKind::PreconditionViolated,
                    "supergroup relator " + r.to_string() + " moves coset " + std::to_string(c + 1));
      }
    }
  }
  if (t.subgroup_generators != e.images) {
    throw Error(ErrorKind::PreconditionViolated, "table subgroup generators differ from the images of S_H");
  }
  const TableCheck check = check_table(t);
  if (!check.ok) throw Error(ErrorKind::PreconditionViolated, "coset table: " + check.problem);
}

Embedding make_embedding(ModelPtr supergroup, std::vector<Generator> subgroup_generators, std::vector<Word> images,
                         bool with_table, std::size_t max_cosets) {
  Embedding e{std::move(supergroup), std::move(subgroup_generators), std::move(images), nullptr};
  if (with_table) {
    e.table = std::make_shared<const CosetTable>(todd_coxeter(e.supergroup->presentation(), e.images, max_cosets));
  }
  validate(e);
  return e;
}

Embedding identity_embedding(ModelPtr model) {
  std::vector<Word> images;
  for (const Generator& g : model->generators()) images.emplace_back(g);
  std::vector<Generator> gens = model->generators();
  return make_embedding(std::move(model), std::move(gens), std::move(images), true);
}

namespace {

std::string map_text(const Embedding& e) {
  std::string out;
  for (std::size_t n = 0; n < e.images.size(); ++n) {
    out += (n ? " , " : "") + e.subgroup_generators[n].name() + " -> " + e.images[n].to_string();
  }
  return out;
}

}  // namespace

Sft free_extension(const Sft& x, const Embedding& e) {
  validate(e);
  std::vector<Pattern> forbidden;
  for (const Pattern& p : x.forbidden()) {
    Pattern q{{}, p.colors};
    for (const Word& w : p.support) q.support.push_back(e.image(w));
    forbidden.push_back(std::move(q));
  }
  std::vector<std::string> provenance{"construction free", "subgroup-map " + map_text(e),
                                      "patterns " + std::to_string(forbidden.size())};
  return Sft(x.alphabet(), std::move(forbidden), e.supergroup, std::move(provenance));
}

RightExtension right_extension(const Sft& x, const Embedding& e) {
  validate(e);
  const std::size_t k = e.index();
  const GroupModel& g = *e.supergroup;
  RightExtension out{Sft(Alphabet::product(x.alphabet(), k), {}, e.supergroup), k, 0, 0, {}};
  const Alphabet b = Alphabet::product(x.alphabet(), k);
  const std::size_t a = x.alphabet().size();

  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Word> row;
    for (const Word& img : e.images) row.push_back(g.normal_form(conjugate_generator(*e.table, img, i)));
    out.conjugated.push_back(std::move(row));
  }

  std::vector<Pattern> forbidden;
  for (std::size_t n = 0; n < e.images.size(); ++n) {
    for (Color c1 = 0; c1 < a; ++c1) {
      for (Color c2 = 0; c2 < a; ++c2) {
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            forbidden.push_back({{Word{}, out.conjugated[i][n]}, {b.pair(c1, i), b.pair(c2, j)}});
          }
        }
      }
    }
  }
  out.type1 = forbidden.size();
  for (const Pattern& p : x.forbidden()) {
    std::vector<Word> image;
    for (const Word& q : p.support) image.push_back(e.image(q));
    for (std::size_t i = 0; i < k; ++i) {
      Pattern q;
      const Word& gi = e.representative(i);
      for (std::size_t j = 0; j < image.size(); ++j) {
        q.support.push_back(g.normal_form(gi.inverse() * image[j] * gi));
        q.colors.push_back(b.pair(p.colors[j], i));
      }
      forbidden.push_back(std::move(q));
    }
  }
  out.type2 = forbidden.size() - out.type1;

  std::string reps;
  for (std::size_t i = 0; i < k; ++i) reps += (i ? " , " : "") + e.representative(i).to_string();
  std::vector<std::string> provenance{"construction right", "subgroup-map " + map_text(e), "index " + std::to_string(k),
                                      "representatives " + reps, "type1 " + std::to_string(out.type1),
                                      "type2 " + std::to_string(out.type2)};
  out.sft = Sft(b, std::move(forbidden), e.supergroup, std::move(provenance));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_generators(const std::vector<Generator>& have, const std::vector<Generator>& want, const char* what) {
  if (have != want) throw Error(ErrorKind::PreconditionViolated, std::string(what) + ": generator lists differ");
}

// Finds the H-ball element whose image equals a given element of G.
class ImageIndex {
 public:
  ImageIndex(const Ball& h_ball, const Embedding& e) : model_(*e.supergroup) {
    for (std::size_t i = 0; i < h_ball.size(); ++i) {
      Word w = model_.normal_form(e.image(h_ball.element(i)));
      buckets_[model_.bucket_key(w)].push_back(images_.size());
      images_.push_back(std::move(w));
    }
  }

  std::optional<std::size_t> find(const Word& g) const {
    const Word nf = model_.normal_form(g);
    auto it = buckets_.find(model_.bucket_key(nf));
    if (it == buckets_.end()) return std::nullopt;
    for (std::size_t i : it->second) {
      if (model_.equal(images_[i], nf)) return i;
    }
    return std::nullopt;
  }

 private:
  const GroupModel& model_;
  std::vector<Word> images_;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
};

}  // namespace

BallConfig product_lift(const BallConfig& x, std::shared_ptr<const DirectWithCyclicModel> g, std::size_t radius) {
  require_same_generators(x.ball->group().generators(), g->base()->generators(), "product lift");
  auto ball = std::make_shared<const Ball>(g, radius);
  BallConfig out(ball, x.alphabet);
  for (std::size_t n = 0; n < ball->size(); ++n) out.colors[n] = x.at(g->split(ball->element(n)).first);
  return out;
}

QuotientConfig product_lift(const QuotientConfig& x, std::shared_ptr<const DirectWithCyclicModel> g,
                            std::size_t max_cosets) {
  require_same_generators(x.table->presentation.generators(), g->base()->generators(), "product lift");
  std::vector<Word> subgroup = x.table->subgroup_generators;
  subgroup.emplace_back(g->cyclic_generator());
  auto table = std::make_shared<const CosetTable>(todd_coxeter(g->presentation(), subgroup, max_cosets));
  QuotientConfig out{table, x.alphabet, {}};
  for (const Word& rep : table->representatives) out.colors.push_back(x.at(g->split(rep).first));
  return out;
}

BallConfig periodic_right_lift(const BallConfig& x, const Embedding& e, std::size_t radius) {
  validate(e);
  const std::size_t k = e.index();
  const ImageIndex index(*x.ball, e);
  auto ball = std::make_shared<const Ball>(e.supergroup, radius);
  const Alphabet b = Alphabet::product(x.alphabet, k);
  BallConfig out(ball, b);
  for (std::size_t n = 0; n < ball->size(); ++n) {
    auto [h, i] = coset_decompose(*e.table, *e.supergroup, ball->element(n));
    auto at = index.find(h);
    if (!at) {
      throw Error(ErrorKind::DecompositionFailure, "element " + ball->element(n).to_string() + " = (" + h.to_string() +
                                                       ") g_" + std::to_string(i + 1) +
                                                       " needs a subgroup element outside the input ball");
    }
    if (x.colors[*at]) out.colors[n] = b.pair(*x.colors[*at], i);
  }
  return out;
}

QuotientConfig periodic_right_lift(const QuotientConfig& x, const Embedding& e, std::size_t max_cosets) {
  validate(e);
  const std::size_t k = e.index();
  const CosetTable& ht = *x.table;
  require_same_generators(ht.presentation.generators(), e.subgroup_generators, "periodic right lift");
  std::vector<Word> subgroup;
  for (const Word& w : ht.subgroup_generators) subgroup.push_back(e.image(w));
  auto table = std::make_shared<const CosetTable>(todd_coxeter(e.supergroup->presentation(), subgroup, max_cosets));
  if (table->index() != ht.index() * k) {
    throw Error(ErrorKind::ModelFailure, "image of K has index " + std::to_string(table->index()) + " in G, expected " +
                                             std::to_string(ht.index() * k));
  }
  const Alphabet b = Alphabet::product(x.alphabet, k);
  std::vector<std::optional<Color>> colors(table->index());
  for (std::size_t d = 0; d < ht.index(); ++d) {
    const Word h = e.image(ht.representatives[d]);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t c = table->coset_of(h * e.representative(i));
      if (colors[c]) throw Error(ErrorKind::ModelFailure, "two pairs (Kh, i) land on one coset of G");
      colors[c] = b.pair(x.colors[d], i);
    }
  }
  QuotientConfig out{table, b, {}};
  for (const auto& c : colors) out.colors.push_back(*c);
  return out;
}

BallConfig coset_restriction(const BallConfig& y, const Embedding& e, std::size_t i, std::shared_ptr<const Ball> h_ball) {
  y.alphabet.base_letters();
  BallConfig out(h_ball, y.alphabet.base());
  const Word& gi = e.representative(i);
  for (std::size_t n = 0; n < h_ball->size(); ++n) {
    if (auto c = y.at(e.image(h_ball->element(n)) * gi)) out.colors[n] = y.alphabet.project1(*c);
  }
  return out;
}

BallConfig cyclic_lift(const BallConfig& x, std::shared_ptr<const FreeByCyclicModel> g, std::size_t radius) {
  require_same_generators(x.ball->group().generators(), g->free_generators(), "cyclic lift");
  auto ball = std::make_shared<const Ball>(g, radius);
  BallConfig out(ball, x.alphabet);
  for (std::size_t n = 0; n < ball->size(); ++n) out.colors[n] = x.at(g->split(ball->element(n)).second);
  return out;
}

ColorClosure coset_color_closure(const Sft& s, const BallConfig& c) {
  const Alphabet& alpha = c.alphabet;
  const std::size_t k = alpha.cosets();
  const Ball& ball = *c.ball;

  std::vector<std::set<Word>> edges(k);
  for (const Pattern& p : s.forbidden()) {
    if (p.support.size() != 2 || !p.support[0].empty()) continue;
    const std::size_t i = s.alphabet().project2(p.colors[0]);
    if (i != s.alphabet().project2(p.colors[1])) edges[i].insert(p.support[1]);
  }

  ColorClosure out;
  out.pi2.assign(ball.size(), std::nullopt);
  out.from.assign(ball.size(), std::nullopt);
  std::deque<std::size_t> queue;
  for (std::size_t n = 0; n < ball.size(); ++n) {
    if (c.colors[n]) {
      out.pi2[n] = alpha.project2(*c.colors[n]);
      queue.push_back(n);
    }
  }
  auto chain = [&](std::size_t n) {
    std::vector<std::size_t> path{n};
    while (out.from[path.back()]) path.push_back(*out.from[path.back()]);
    return path;
  };
  while (!queue.empty()) {
    const std::size_t g = queue.front();
    queue.pop_front();
    const std::size_t i = *out.pi2[g];
    for (const Word& w : edges[i]) {
      auto n = ball.product(g, w);
      if (!n) continue;
      if (!out.pi2[*n]) {
        out.pi2[*n] = i;
        out.from[*n] = g;
        queue.push_back(*n);
      } else if (*out.pi2[*n] != i) {
        std::vector<std::size_t> path = chain(g);
        std::reverse(path.begin(), path.end());
        for (std::size_t m : chain(*n)) path.push_back(m);
        std::string words;
        for (std::size_t m : path) words += (words.empty() ? "" : " -> ") + ball.element(m).to_string();
        throw PropagationContradiction(path, "cell " + ball.element(*n).to_string() + " is forced to cosets " +
                                                 std::to_string(i + 1) + " and " + std::to_string(*out.pi2[*n] + 1) +
                                                 " along " + words);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_text(const Embedding& e) {
  std::string out = "embedding v1\nsupergroup " + e.supergroup->describe() + "\n";
  for (std::size_t n = 0; n < e.images.size(); ++n) {
    out += "map " + e.subgroup_generators[n].name() + " -> " + e.images[n].to_string() + "\n";
  }
  if (e.table) out += "table\n" + to_text(*e.table);
  return out;
}

Embedding parse_embedding(std::string_view text) {
  Embedding e;
  std::size_t number = 0;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') continue;
    const auto key_end = std::min(raw.find_first_of(" \t\r", first), raw.size());
    const std::string key(raw.substr(first, key_end - first));
    const auto rest_start = std::min(raw.find_first_not_of(" \t\r", key_end), raw.size());
    std::string rest(raw.substr(rest_start));
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r' || rest.back() == '\t')) rest.pop_back();
    const std::size_t col = rest_start + 1;

    if (!header) {
      if (key != "embedding" || rest != "v1") throw ParseError(number, 1, "expected 'embedding v1'");
      header = true;
    } else if (key == "supergroup") {
      try {
        e.supergroup = parse_model(rest);
      } catch (const Error& err) {
        throw ParseError(number, col, err.what());
      }
    } else if (key == "map") {
      const auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError(number, col, "expected 'map NAME -> WORD'");
      std::string name = rest.substr(0, arrow);
      name.erase(name.find_last_not_of(" \t") + 1);
      if (!is_valid_identifier(name)) throw ParseError(number, col, "invalid generator name '" + name + "'");
      e.subgroup_generators.emplace_back(name);
      e.images.push_back(parse_word(rest.substr(arrow + 2), number, col + arrow + 2));
    } else if (key == "table") {
      try {
        e.table = std::make_shared<const CosetTable>(parse_coset_table(text.substr(std::min(pos, text.size()))));
      } catch (const ParseError& err) {
        throw ParseError(err.line() ? err.line() + number : 0, err.column(), err.detail());
      }
      break;
    } else {
      throw ParseError(number, first + 1, "unexpected '" + key + "'");
    }
  }
  if (!header) throw ParseError(1, 1, "expected 'embedding v1'");
  if (!e.supergroup) throw ParseError(number, 1, "missing 'supergroup'");
  validate(e);
  return e;
}

}  // namespace sftg
