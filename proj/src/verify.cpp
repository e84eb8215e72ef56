#include "sftg/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "json.hpp"
#include "sftg/error.hpp"
#include "sftg/extensions.hpp"

namespace sftg {

SearchStats run_csp(std::size_t cells, std::size_t colors, const std::vector<CspConstraint>& constraints,
                    bool infeasible, std::size_t node_budget,
                    const std::function<bool(const std::vector<Color>&)>& on_solution) {
  SearchStats stats;
  if (infeasible || colors == 0) return stats;
  std::vector<Color> a(cells, 0);
  if (cells == 0) {
    ++stats.solutions;
    if (!on_solution(a)) stats.status = SearchStatus::Stopped;
    return stats;
  }
  std::vector<std::vector<std::size_t>> ending(cells);
  for (std::size_t n = 0; n < constraints.size(); ++n) {
    const auto& c = constraints[n];
    if (c.cells.empty()) continue;
    ending[*std::max_element(c.cells.begin(), c.cells.end())].push_back(n);
  }
  auto consistent = [&](std::size_t cell) {
    for (std::size_t n : ending[cell]) {
      const CspConstraint& c = constraints[n];
      for (const std::vector<Color>* f : c.forbidden) {
        bool match = true;
        for (std::size_t j = 0; j < c.cells.size() && match; ++j) match = a[c.cells[j]] == (*f)[j];
        if (match) return false;
      }
    }
    return true;
  };

  std::size_t cell = 0;
  for (;;) {
    if (stats.nodes >= node_budget) {
      stats.status = SearchStatus::BudgetExceeded;
      return stats;
    }
    ++stats.nodes;
    bool descend = consistent(cell);
    if (descend && cell + 1 == cells) {
      ++stats.solutions;
      if (!on_solution(a)) {
        stats.status = SearchStatus::Stopped;
        return stats;
      }
      descend = false;
    }
    if (descend) {
      a[++cell] = 0;
      continue;
    }
    while (++a[cell] == colors) {
      if (cell == 0) return stats;
      --cell;
    }
  }
}

const char* to_string(TileOutcome o) noexcept {
  switch (o) {
    case TileOutcome::Satisfiable: return "Satisfiable";
    case TileOutcome::Unsatisfiable: return "Unsatisfiable";
    case TileOutcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

const char* to_string(PeriodicOutcome o) noexcept {
  switch (o) {
    case PeriodicOutcome::Found: return "Found";
    case PeriodicOutcome::NoneUpToQuotient: return "NoneUpToQuotient";
    case PeriodicOutcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

namespace {

void require_ball_over(const Sft& s, const Ball& b) {
  if (b.group().generators() != s.ambient()->generators()) {
    throw Error(ErrorKind::PreconditionViolated, "ball and SFT are over different generators");
  }
}

std::vector<CspConstraint> ball_constraints(const CompiledSft& compiled) {
  std::vector<CspConstraint> out;
  for (const Constraint& c : compiled.constraints) {
    CspConstraint k{c.cells, {}};
    for (std::size_t n : c.patterns) k.forbidden.push_back(&compiled.pattern_colors[n]);
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace

TileResult tile_ball(const Sft& s, std::shared_ptr<const Ball> b, std::size_t node_budget) {
  TileResult result;
  const SearchStats st = for_each_tiling(s, b, node_budget, [&](const BallConfig& c) {
    result.config = c;
    return false;
  });
  result.nodes_explored = st.nodes;
  if (result.config) {
    result.outcome = TileOutcome::Satisfiable;
  } else {
    result.outcome = st.status == SearchStatus::BudgetExceeded ? TileOutcome::BudgetExceeded : TileOutcome::Unsatisfiable;
  }
  return result;
}

SearchStats for_each_tiling(const Sft& s, std::shared_ptr<const Ball> b, std::size_t node_budget,
                            const std::function<bool(const BallConfig&)>& on_tiling) {
  require_ball_over(s, *b);
  const CompiledSft compiled = compile(s, *b);
  const std::vector<CspConstraint> constraints = ball_constraints(compiled);
  return run_csp(b->size(), s.alphabet().size(), constraints, compiled.has_empty_pattern, node_budget,
                 [&](const std::vector<Color>& a) {
                   BallConfig c(b, s.alphabet());
                   for (std::size_t n = 0; n < a.size(); ++n) c.colors[n] = a[n];
                   return on_tiling(c);
                 });
}

void check_table_over(const GroupModel& model, const CosetTable& t) {
  if (t.presentation.generators() != model.generators()) {
    throw Error(ErrorKind::PreconditionViolated, "quotient table generators differ from the group's");
  }
  const Presentation p = model.presentation();
  for (const Word& r : p.relators()) {
    for (std::size_t c = 0; c < t.index(); ++c) {
      if (t.trace(c, r) != c) {
        throw Error(ErrorKind::PreconditionViolated,
                    "relator " + r.to_string() + " moves coset " + std::to_string(c + 1) + " of the quotient table");
      }
    }
  }
}

PeriodicSearchResult search_strongly_periodic(const Sft& s,
                                              const std::vector<std::shared_ptr<const CosetTable>>& quotients,
                                              std::size_t node_budget) {
  PeriodicSearchResult result;
  bool empty_pattern = false;
  for (const Pattern& p : s.forbidden()) empty_pattern = empty_pattern || p.support.empty();
  for (std::size_t q = 0; q < quotients.size(); ++q) {
    const CosetTable& t = *quotients[q];
    check_table_over(*s.ambient(), t);
    std::vector<CspConstraint> constraints;
    for (const Pattern& p : s.forbidden()) {
      if (p.support.empty()) continue;
      for (std::size_t i = 0; i < t.index(); ++i) {
        CspConstraint c;
        for (const Word& w : p.support) c.cells.push_back(t.trace(i, w));
        c.forbidden.push_back(&p.colors);
        constraints.push_back(std::move(c));
      }
    }
    std::optional<std::vector<Color>> found;
    const SearchStats st = run_csp(t.index(), s.alphabet().size(), constraints, empty_pattern,
                                   node_budget - result.nodes_explored, [&](const std::vector<Color>& a) {
                                     found = a;
                                     return false;
                                   });
    result.nodes_explored += st.nodes;
    result.attempts.push_back({q, st.status, st.nodes, found.has_value()});
    if (found) {
      result.outcome = PeriodicOutcome::Found;
      result.config = QuotientConfig{quotients[q], s.alphabet(), *found};
      result.quotient = q;
      return result;
    }
    if (st.status == SearchStatus::BudgetExceeded) {
      result.outcome = PeriodicOutcome::BudgetExceeded;
      return result;
    }
  }
  result.outcome = PeriodicOutcome::NoneUpToQuotient;
  return result;
}

CosetTable abelian_quotient_table(const Presentation& p, unsigned modulus) {
  const long m = modulus;
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be prime");
  }
  const std::size_t n = p.rank();
  auto mod = [m](long v) { return ((v % m) + m) % m; };
  auto inverse_mod = [&](long v) {
    for (long x = 1; x < m; ++x) {
      if (mod(v * x) == 1) return x;
    }
    return 0L;
  };

  // Reduced row echelon basis of the relator span over Z/m.
  std::vector<std::vector<long>> basis;
  std::vector<std::size_t> pivots;
  auto reduce_vec = [&](std::vector<long> v) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const long f = v[pivots[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = mod(v[j] - f * basis[b][j]);
    }
    return v;
  };
  for (const Word& r : p.relators()) {
    std::vector<long> v = abelianization_vector(r, p.generators());
    for (long& x : v) x = mod(x);
    v = reduce_vec(v);
    auto piv = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
    if (piv == v.end()) continue;
    const std::size_t pc = static_cast<std::size_t>(piv - v.begin());
    const long inv = inverse_mod(v[pc]);
    for (long& x : v) x = mod(x * inv);
    for (auto& row : basis) {
      const long f = row[pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) row[j] = mod(row[j] - f * v[j]);
    }
    basis.push_back(std::move(v));
    pivots.push_back(pc);
  }

  CosetTable t;
  t.presentation = p;
  std::map<std::vector<long>, std::size_t> index;
  std::vector<std::vector<long>> points{std::vector<long>(n, 0)};
  index[points[0]] = 0;
  t.representatives.push_back(Word{});
  for (std::size_t c = 0; c < points.size(); ++c) {
    std::vector<std::size_t> row;
    for (std::size_t col = 0; col < 2 * n; ++col) {
      std::vector<long> v = points[c];
      v[col / 2] = mod(v[col / 2] + (col % 2 == 0 ? 1 : -1));
      v = reduce_vec(v);
      auto [it, inserted] = index.emplace(v, points.size());
      if (inserted) {
        points.push_back(v);
        t.representatives.push_back(t.representatives[c] * Word(p.generators()[col / 2], col % 2 == 0 ? 1 : -1));
      }
      row.push_back(it->second);
    }
    t.action.push_back(std::move(row));
  }
  std::set<Word> seen;
  for (std::size_t c = 0; c < t.index(); ++c) {
    for (std::size_t col = 0; col < 2 * n; col += 2) {
      const Word w = t.representatives[c] * Word(p.generators()[col / 2]) * t.representatives[t.action[c][col]].inverse();
      if (w.empty() || seen.count(w) || seen.count(w.inverse())) continue;
      seen.insert(w);
      t.subgroup_generators.push_back(w);
    }
  }
  const TableCheck check = check_table(t);
  if (!check.ok) throw Error(ErrorKind::ModelFailure, "abelian quotient table: " + check.problem);
  return t;
}

// ---------------------------------------------------------------------------

std::string tool_version() { return "sftg 0.1.0"; }

bool CertificateReport::proved_ok() const {
  return !proved.empty() && std::all_of(proved.begin(), proved.end(), [](const Fact& f) { return f.holds; });
}

Sft default_plug(std::size_t rank) {
  std::vector<Generator> gens;
  for (std::size_t i = 1; i <= rank; ++i) gens.emplace_back("x" + std::to_string(i));
  auto model = std::make_shared<FreeGroupModel>(gens);
  std::vector<Pattern> forbidden;
  for (const Generator& g : gens) forbidden.push_back({{Word{}, Word(g)}, {1, 1}});
  return Sft(Alphabet({"0", "1"}), std::move(forbidden), model, {"default plug"});
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    std::string what = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw Error(e.kind(), std::string("stage ") + name + ": " + what);
  }
}

// Every reduced word of length <= len over the generators.
void reduced_words(const std::vector<Generator>& gens, std::size_t len, const std::function<void(const Word&)>& f) {
  std::vector<Letter> letters;
  for (const Generator& g : gens) {
    letters.push_back({g, 1});
    letters.push_back({g, -1});
  }
  std::function<void(const Word&, std::size_t)> go = [&](const Word& w, std::size_t left) {
    f(w);
    if (left == 0) return;
    for (const Letter& l : letters) {
      if (!w.empty() && w.back().cancels(l)) continue;
      go(w * Word(l.generator, l.sign), left - 1);
    }
  };
  go(Word{}, len);
}

Word random_word(std::mt19937_64& rng, const std::vector<Generator>& gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  LetterSeq s;
  for (std::size_t i = len(rng); i > 0; --i) s.push_back({gens[pick(rng)], coin(rng) ? 1 : -1});
  return reduce(s);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void zero_exponent_branch(CertificateReport& r, const ZeroExponentCertificate& z, const std::optional<Sft>& plug_in,
                          const std::vector<std::shared_ptr<const CosetTable>>& quotients, const PipelineOptions& o) {
  const Witness& w = z.witness;
  const Generator& t = z.zero_generator;
  const Word& rel = w.presentation.relators().at(0);
  const std::vector<Generator>& T = w.presentation.generators();
  r.branch = "zero-exponent";
  r.witness = w;
  for (const TietzeStep& step : w.log) r.tietze_log.push_back(step.to_string());

  const bool replays = stage("replay", [&] { return replay(r.input, w.log) == w.presentation; });
  r.proved.push_back({"tietze-replay", replays,
                      std::to_string(w.log.size()) + " logged steps turn the input into " + w.presentation.to_string()});
  r.proved.push_back({"generator-count", T.size() == r.input.rank(),
                      "|T| = " + std::to_string(T.size()) + ", |S| = " + std::to_string(r.input.rank())});
  r.proved.push_back({"relator-cyclically-reduced", !rel.empty() && is_cyclically_reduced(rel), rel.to_string()});
  r.proved.push_back({"zero-generator-occurs", occurs(rel, t), t.name() + " occurs in the relator"});
  r.proved.push_back({"zero-exponent", exponent_sum(rel, t) == 0,
                      "|r'|_" + t.name() + " = " + std::to_string(exponent_sum(rel, t))});

  const HomCertificate hom = exponent_hom_check(w.presentation, t);
  std::string sums;
  for (long s : hom.relator_sums) sums += (sums.empty() ? "" : ", ") + std::to_string(s);
  r.proved.push_back({"exponent-homomorphism", hom.valid,
                      "|.|_" + t.name() + " defines G -> Z; relator sums [" + sums + "]"});

  std::size_t checked = 0;
  bool barbieri = true;
  reduced_words(T, o.barbieri_radius, [&](const Word& gamma) {
    for (std::size_t n = 1; n <= o.barbieri_radius; ++n) {
      const Word c = Word(t).power(static_cast<long>(n));
      barbieri = barbieri && exponent_sum(gamma * c * gamma.inverse(), t) == static_cast<long>(n);
      ++checked;
    }
  });
  r.proved.push_back({"barbieri-instance", barbieri,
                      "|gamma " + t.name() + "^n gamma^-1|_" + t.name() + " = n > 0 for all " + std::to_string(checked) +
                          " pairs with |gamma| <= " + std::to_string(o.barbieri_radius) + ", 1 <= n <= " +
                          std::to_string(o.barbieri_radius) + ", so no positive power of " + t.name() +
                          " is conjugate into ker |.|_" + t.name() + " which contains T \\ {" + t.name() + "}"});

  std::mt19937_64 rng(o.seed);
  bool identities = true;
  for (std::size_t n = 0; n < o.hom_samples; ++n) {
    const Word u = random_word(rng, T, 10);
    const Word v = random_word(rng, T, 10);
    const long su = exponent_sum(u, t), sv = exponent_sum(v, t);
    identities = identities && exponent_sum(u * v, t) == su + sv;
    identities = identities && exponent_sum(u * v * u.inverse(), t) == sv;
    identities = identities && exponent_sum(u * rel * v, t) == su + sv;
    identities = identities && exponent_sum(u * rel.inverse() * v, t) == su + sv;
  }
  r.proved.push_back({"exponent-identities", identities,
                      "additivity, conjugation invariance and relator insertion on " + std::to_string(o.hom_samples) +
                          " seeded word pairs (seed " + std::to_string(o.seed) + ")"});

  r.cited = z.citations;

  const std::vector<Generator>& free = z.free_subgroup;
  Sft plug = plug_in ? *plug_in : default_plug(free.size());
  if (!plug_in) {
    r.notes.push_back("no plug SFT supplied; the default plug (1 forbidden next to 1 along each generator) is a "
                      "placeholder and is not weakly aperiodic, so periodic points are expected");
  }
  if (!dynamic_cast<const FreeGroupModel*>(plug.ambient().get())) {
    throw Error(ErrorKind::InvalidArgument, "stage plug: the plug SFT must live on a free group");
  }
  const std::vector<Generator>& plug_gens = plug.ambient()->generators();
  if (plug_gens.size() > free.size()) {
    throw Error(ErrorKind::InvalidArgument, "stage plug: plug rank " + std::to_string(plug_gens.size()) +
                                                " exceeds the free subgroup rank " + std::to_string(free.size()));
  }
  r.plug = plug;
  std::string mapping;
  for (std::size_t n = 0; n < plug_gens.size(); ++n) {
    mapping += (n ? ", " : "") + plug_gens[n].name() + " -> " + free[n].name();
  }
  r.notes.push_back("plug generators mapped onto the Freiheitssatz subgroup: " + mapping);

  const ModelPtr g = model_for_one_relator(w.presentation);
  if (!g) {
    r.notes.push_back("no normal-form backend for " + w.presentation.to_string() +
                      "; the free extension, tiling and periodic search were skipped");
    return;
  }
  r.notes.push_back("group backend: " + g->describe());
  std::vector<Word> images;
  for (std::size_t n = 0; n < plug_gens.size(); ++n) images.emplace_back(free[n]);
  const Embedding e{g, plug_gens, images, nullptr};
  const Sft ext = stage("free extension", [&] { return free_extension(plug, e); });
  r.extension = ext;
  bool same = ext.forbidden().size() == plug.forbidden().size() && ext.alphabet() == plug.alphabet();
  for (std::size_t n = 0; same && n < plug.forbidden().size(); ++n) {
    const Pattern& a = plug.forbidden()[n];
    const Pattern& b = ext.forbidden()[n];
    same = a.colors == b.colors && a.support.size() == b.support.size();
    for (std::size_t j = 0; same && j < a.support.size(); ++j) same = e.image(a.support[j]) == b.support[j];
  }
  r.proved.push_back({"free-extension-counts", same,
                      std::to_string(ext.forbidden().size()) + " forbidden patterns and " +
                          std::to_string(ext.alphabet().size()) + " letters, carried over unchanged"});

  auto ball = stage("ball", [&] { return std::make_shared<const Ball>(g, o.radius); });
  const TileResult tile = stage("tiling", [&] { return tile_ball(ext, ball, o.node_budget); });
  bool tiled = false;
  if (tile.config) {
    r.tiling = tile.config;
    tiled = tile.config->total() && violations(ext, *tile.config).empty();
  }
  r.proved.push_back({"ball-tiling", tiled,
                      std::string(to_string(tile.outcome)) + " at radius " + std::to_string(o.radius) + " (" +
                          std::to_string(ball->size()) + " cells); witness rechecked for violations: " +
                          yes_no(tiled)});
  r.evidence.push_back({"tiling", tile.outcome == TileOutcome::Satisfiable,
                        std::string(to_string(tile.outcome)) + " at radius " + std::to_string(o.radius) + " after " +
                            std::to_string(tile.nodes_explored) + " nodes (budget " + std::to_string(o.node_budget) +
                            "); a tiled ball is evidence of nonemptiness, not a proof"});

  std::vector<std::shared_ptr<const CosetTable>> qs = quotients;
  if (qs.empty()) {
    qs.push_back(std::make_shared<const CosetTable>(abelian_quotient_table(w.presentation, 2)));
    r.notes.push_back("no quotients supplied; searched the mod-2 abelianization quotient (index " +
                      std::to_string(qs.back()->index()) + ")");
  }
  const PeriodicSearchResult ps = stage("periodic search", [&] { return search_strongly_periodic(ext, qs, o.node_budget); });
  r.periodic = ps;
  std::string detail = std::string(to_string(ps.outcome)) + " over " + std::to_string(qs.size()) + " quotient(s), " +
                       std::to_string(ps.nodes_explored) + " nodes";
  if (ps.outcome == PeriodicOutcome::Found) {
    const bool exact = quotient_violations(ext, *ps.config).empty();
    detail += "; quotient #" + std::to_string(ps.quotient + 1) + " (index " + std::to_string(qs[ps.quotient]->index()) +
              ") carries a strongly periodic configuration of the extension (rechecked exactly: " + yes_no(exact) +
              "), so this plug is not weakly aperiodic";
  } else if (ps.outcome == PeriodicOutcome::NoneUpToQuotient) {
    detail += "; no strongly periodic configuration factors through the supplied quotients";
  }
  r.evidence.push_back({"periodic-search", ps.outcome != PeriodicOutcome::BudgetExceeded, detail});
}

void infinite_ends_branch(CertificateReport& r, const InfiniteEndsCertificate& c) {
  const FreeProductSplit& s = c.split;
  r.branch = "infinite-ends";
  r.split = s;
  for (const TietzeStep& step : s.log) r.tietze_log.push_back(step.to_string());
  r.proved.push_back({"tietze-replay", replay(r.input, s.log) == s.current,
                      std::to_string(s.log.size()) + " logged steps turn the input into " + s.current.to_string()});
  const Word core = cyclic_reduce(s.current.relators().at(0)).core;
  r.proved.push_back({"absent-generator", s.current.has_generator(s.absent_generator) && !occurs(core, s.absent_generator),
                      s.absent_generator.name() + " does not occur in " + core.to_string()});
  std::vector<Generator> rest;
  for (const Generator& g : s.current.generators()) {
    if (g != s.absent_generator) rest.push_back(g);
  }
  r.proved.push_back({"free-product-split", s.remaining == Presentation(rest, s.current.relators()),
                      "G = " + s.remaining.to_string() + " * <" + s.absent_generator.name() + ">"});
  r.cited = c.citations;
  r.conclusion = "G is a free product with an infinite cyclic factor, so it has infinitely many ends: it contains F2 "
                 "and carries weakly aperiodic SFTs, none of which is strongly aperiodic. G is not periodically rigid.";
}

}  // namespace

CertificateReport check_theorem15_pipeline(const Presentation& p, const std::optional<Sft>& plug,
                                           const std::vector<std::shared_ptr<const CosetTable>>& quotients,
                                           const PipelineOptions& options, RunManifest manifest) {
  CertificateReport r;
  r.manifest = std::move(manifest);
  r.input = p;
  const NonRigidityCertificate cert = stage("analyze", [&] { return analyze_one_relator(p); });
  r.notes.push_back("the absent-generator test runs before the zero-exponent test on every rewriting iteration");
  if (const auto* z = std::get_if<ZeroExponentCertificate>(&cert)) {
    zero_exponent_branch(r, *z, plug, quotients, options);
    r.conclusion = "T \\ {" + z->zero_generator.name() + "} freely generates a subgroup of rank " +
                   std::to_string(z->free_subgroup.size()) +
                   "; the free extension to G of a weakly aperiodic SFT on any rank >= 2 subgroup generated by part "
                   "of T \\ {" + z->zero_generator.name() +
                   "} is weakly but not strongly aperiodic. G is not periodically rigid.";
  } else {
    infinite_ends_branch(r, std::get<InfiniteEndsCertificate>(cert));
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string manifest_text(const RunManifest& m) {
  std::string out = "manifest\n  command " + m.command + "\n";
  for (const std::string& in : m.inputs) out += "  input " + in + "\n";
  for (const auto& [k, v] : m.parameters) out += "  param " + k + " " + v + "\n";
  out += "  tool-version " + m.tool_version + "\n";
  return out;
}

std::string to_text(const CertificateReport& r) {
  std::string out = "certificate v1\n" + manifest_text(r.manifest);
  out += "input " + r.input.to_string() + "\n";
  out += "branch " + r.branch + "\n";
  if (r.witness) {
    out += "witness " + r.witness->presentation.to_string() + " zero-generator " + r.witness->zero_generator.name() + "\n";
  }
  if (r.split) out += "split " + r.split->remaining.to_string() + " * <" + r.split->absent_generator.name() + ">\n";
  out += "tietze-log " + std::to_string(r.tietze_log.size()) + "\n";
  for (std::size_t i = 0; i < r.tietze_log.size(); ++i) out += "  " + std::to_string(i + 1) + ". " + r.tietze_log[i] + "\n";
  out += "PROVED\n";
  for (const Fact& f : r.proved) out += std::string("  [") + (f.holds ? "ok" : "FAILED") + "] " + f.name + ": " + f.detail + "\n";
  out += "CITED\n";
  for (const Citation& c : r.cited) out += "  [" + c.anchor + "] " + c.statement + "\n";
  out += "EVIDENCE\n";
  for (const Fact& f : r.evidence) out += std::string("  [") + (f.holds ? "ok" : "open") + "] " + f.name + ": " + f.detail + "\n";
  out += "NOTES\n";
  for (const std::string& n : r.notes) out += "  " + n + "\n";
  out += "conclusion " + r.conclusion + "\n";
  return out;
}

std::string to_json(const CertificateReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json m;
  m["command"] = r.manifest.command;
  m["inputs"] = r.manifest.inputs;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.manifest.parameters) params[k] = v;
  m["parameters"] = params;
  m["tool_version"] = r.manifest.tool_version;
  j["manifest"] = m;
  j["input"] = r.input.to_string();
  j["branch"] = r.branch;
  if (r.witness) {
    j["witness"] = {{"presentation", r.witness->presentation.to_string()},
                    {"zero_generator", r.witness->zero_generator.name()}};
  }
  if (r.split) {
    j["split"] = {{"remaining", r.split->remaining.to_string()}, {"absent_generator", r.split->absent_generator.name()}};
  }
  j["tietze_log"] = r.tietze_log;
  auto facts = [](const std::vector<Fact>& fs) {
    ordered_json a = ordered_json::array();
    for (const Fact& f : fs) a.push_back({{"name", f.name}, {"holds", f.holds}, {"detail", f.detail}});
    return a;
  };
  j["proved"] = facts(r.proved);
  ordered_json cited = ordered_json::array();
  for (const Citation& c : r.cited) cited.push_back({{"anchor", c.anchor}, {"statement", c.statement}});
  j["cited"] = cited;
  j["evidence"] = facts(r.evidence);
  j["notes"] = r.notes;
  j["conclusion"] = r.conclusion;
  return j.dump(2) + "\n";
}

}  // namespace sftg
