#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sftg/error.hpp"
#include "sftg/extensions.hpp"
#include "sftg/verify.hpp"

using namespace sftg;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kAlternate = 2;

struct Options {
  std::string format = "text";
  bool unchecked = false;
  std::string output;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Parse errors are reported as path:line:column.
template <class F>
auto parse_file(const std::string& path, F&& parse) -> decltype(parse(std::string_view{})) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    std::string where = path;
    if (e.line()) where += ":" + std::to_string(e.line()) + ":" + std::to_string(e.column());
    throw Error(ErrorKind::Parse, where + ": " + e.detail());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
  out << text;
}

std::string manifest_suffix(const RunManifest& m) { return manifest_text(m); }

ordered_json manifest_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["tool_version"] = m.tool_version;
  return j;
}

std::string log_text(const std::vector<TietzeStep>& log) {
  std::string out = "tietze-log " + std::to_string(log.size()) + "\n";
  for (std::size_t i = 0; i < log.size(); ++i) out += "  " + std::to_string(i + 1) + ". " + log[i].to_string() + "\n";
  return out;
}

std::vector<std::string> log_lines(const std::vector<TietzeStep>& log) {
  std::vector<std::string> out;
  for (const TietzeStep& s : log) out.push_back(s.to_string());
  return out;
}

std::string join(const std::vector<long>& v) {
  std::string out;
  for (long x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_rewrite(const std::string& path, const Options& o) {
  const Presentation p = parse_file(path, [](std::string_view t) { return parse_presentation(t); });
  const RunManifest m{"rewrite", {path}, {{"unchecked", o.unchecked ? "yes" : "no"}}, tool_version()};
  const RewriteOutcome r = magnus_moldavansky(p);
  const auto* w = std::get_if<Witness>(&r);
  const auto* s = std::get_if<FreeProductSplit>(&r);
  const std::vector<TietzeStep>& log = w ? w->log : s->log;
  const Presentation& result = w ? w->presentation : s->current;
  std::string check = "skipped";
  if (!o.unchecked) {
    if (replay(p, log) != result) throw Error(ErrorKind::ModelFailure, "the Tietze log does not replay to the result");
    check = "ok";
  }

  if (o.format == "structured") {
    ordered_json j;
    j["manifest"] = manifest_json(m);
    j["input"] = p.to_string();
    j["outcome"] = w ? "witness" : "split";
    if (w) {
      j["presentation"] = w->presentation.to_string();
      j["zero_generator"] = w->zero_generator.name();
      j["substitutions"] = w->substitutions;
      j["measures"] = w->measures;
    } else {
      j["current"] = s->current.to_string();
      j["absent_generator"] = s->absent_generator.name();
      j["remaining"] = s->remaining.to_string();
      j["measures"] = s->measures;
    }
    j["tietze_log"] = log_lines(log);
    j["replay"] = check;
    emit(o, j.dump(2) + "\n");
  } else {
    std::string out = "rewrite v1\n" + manifest_suffix(m) + "input " + p.to_string() + "\n";
    if (w) {
      out += "outcome witness\npresentation " + w->presentation.to_string() + "\nzero-generator " +
             w->zero_generator.name() + "\nsubstitutions " + std::to_string(w->substitutions) + "\n";
      out += "measures " + join(w->measures) + "\n";
    } else {
      out += "outcome split\ncurrent " + s->current.to_string() + "\nabsent-generator " + s->absent_generator.name() +
             "\nfree-product " + s->remaining.to_string() + " * < " + s->absent_generator.name() + " | >\n";
      out += "measures " + join(s->measures) + "\n";
    }
    out += log_text(log) + "replay " + check + "\n";
    emit(o, out);
  }
  return w ? kOk : kAlternate;
}

struct AnalyzeArgs {
  std::string presentation;
  std::string plug;
  std::vector<std::string> quotients;
  std::size_t radius = 3;
  std::size_t barbieri_radius = 4;
  std::size_t budget = 2000000;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

int cmd_analyze(const AnalyzeArgs& a, const Options& o) {
  const Presentation p = parse_file(a.presentation, [](std::string_view t) { return parse_presentation(t); });
  std::optional<Sft> plug;
  if (!a.plug.empty()) plug = parse_file(a.plug, [](std::string_view t) { return parse_sft(t); });
  std::vector<std::shared_ptr<const CosetTable>> qs;
  for (const std::string& q : a.quotients) {
    qs.push_back(std::make_shared<const CosetTable>(parse_file(q, [](std::string_view t) { return parse_coset_table(t); })));
  }
  RunManifest m{"analyze", {a.presentation}, {}, tool_version()};
  if (!a.plug.empty()) m.inputs.push_back(a.plug);
  for (const std::string& q : a.quotients) m.inputs.push_back(q);
  m.parameters = {{"radius", std::to_string(a.radius)},
                  {"barbieri-radius", std::to_string(a.barbieri_radius)},
                  {"budget", std::to_string(a.budget)},
                  {"samples", std::to_string(a.samples)},
                  {"seed", std::to_string(a.seed)}};
  PipelineOptions po;
  po.radius = a.radius;
  po.barbieri_radius = a.barbieri_radius;
  po.node_budget = a.budget;
  po.hom_samples = a.samples;
  po.seed = a.seed;
  const CertificateReport r = check_theorem15_pipeline(p, plug, qs, po, m);
  emit(o, o.format == "structured" ? to_json(r) : to_text(r));
  if (!r.proved_ok()) {
    std::cerr << "error: some PROVED facts failed to check\n";
    return kError;
  }
  return r.branch == "zero-exponent" ? kOk : kAlternate;
}

int cmd_extend(const std::string& sft_path, const std::string& emb_path, const std::string& mode, const Options& o) {
  const Sft x = parse_file(sft_path, [](std::string_view t) { return parse_sft(t); });
  const Embedding e = parse_file(emb_path, [](std::string_view t) { return parse_embedding(t); });
  std::string summary;
  Sft out = x;
  if (mode == "free") {
    out = free_extension(x, e);
    summary = "free extension: " + std::to_string(out.forbidden().size()) + " forbidden patterns (input " +
              std::to_string(x.forbidden().size()) + "), alphabet " + std::to_string(out.alphabet().size()) + "\n";
  } else {
    if (!e.table) throw Error(ErrorKind::PreconditionViolated, "right mode needs a coset table in the embedding file");
    const RightExtension r = right_extension(x, e);
    out = r.sft;
    summary = "right extension: index " + std::to_string(r.k) + ", " + std::to_string(r.type1) + " type-(1) patterns, " +
              std::to_string(r.type2) + " type-(2) patterns, alphabet " + std::to_string(out.alphabet().size()) + "\n";
  }
  const std::string text = to_text(out);
  if (!o.unchecked && to_text(parse_sft(text)) != text) {
    throw Error(ErrorKind::ModelFailure, "the extended SFT does not round-trip through its text form");
  }
  if (o.output.empty()) {
    std::cout << text;
    std::cerr << summary;
  } else {
    emit(o, text);
    std::cout << summary;
  }
  return kOk;
}

int cmd_tile(const std::string& path, std::size_t radius, std::size_t budget, const Options& o) {
  const Sft s = parse_file(path, [](std::string_view t) { return parse_sft(t); });
  const RunManifest m{"tile", {path}, {{"radius", std::to_string(radius)}, {"budget", std::to_string(budget)}}, tool_version()};
  auto ball = std::make_shared<const Ball>(s.ambient(), radius);
  const TileResult r = tile_ball(s, ball, budget);
  std::string check = "skipped";
  if (r.config && !o.unchecked) {
    if (!violations(s, *r.config).empty()) throw Error(ErrorKind::ModelFailure, "tiling witness has violations");
    check = "ok";
  }
  if (o.format == "structured") {
    ordered_json j;
    j["manifest"] = manifest_json(m);
    j["outcome"] = to_string(r.outcome);
    j["nodes_explored"] = r.nodes_explored;
    j["cells"] = ball->size();
    if (r.config) {
      ordered_json c = ordered_json::array();
      for (std::size_t n = 0; n < ball->size(); ++n) {
        c.push_back({ball->element(n).to_string(), s.alphabet().name(*r.config->colors[n])});
      }
      j["coloring"] = c;
      j["witness_check"] = check;
    }
    emit(o, j.dump(2) + "\n");
  } else {
    std::string out = "tile v1\n" + manifest_suffix(m) + "outcome " + to_string(r.outcome) + "\nnodes " +
                      std::to_string(r.nodes_explored) + "\ncells " + std::to_string(ball->size()) + "\n";
    if (r.config) {
      out += "witness-check " + check + "\ncoloring\n";
      for (std::size_t n = 0; n < ball->size(); ++n) {
        out += "  " + ball->element(n).to_string() + " -> " + s.alphabet().name(*r.config->colors[n]) + "\n";
      }
      out += "note a tiled ball is evidence that the SFT is nonempty, not a proof\n";
    } else if (r.outcome == TileOutcome::Unsatisfiable) {
      out += "note no admissible coloring of this ball exists, so the SFT is empty\n";
    }
    emit(o, out);
  }
  return r.outcome == TileOutcome::Satisfiable ? kOk : kAlternate;
}

int cmd_search(const std::string& path, const std::vector<std::string>& quotients, std::size_t budget, const Options& o) {
  const Sft s = parse_file(path, [](std::string_view t) { return parse_sft(t); });
  std::vector<std::shared_ptr<const CosetTable>> qs;
  for (const std::string& q : quotients) {
    qs.push_back(std::make_shared<const CosetTable>(parse_file(q, [](std::string_view t) { return parse_coset_table(t); })));
  }
  RunManifest m{"search-periodic", {path}, {{"budget", std::to_string(budget)}}, tool_version()};
  for (const std::string& q : quotients) m.inputs.push_back(q);
  const PeriodicSearchResult r = search_strongly_periodic(s, qs, budget);
  std::string check = "skipped";
  if (r.config && !o.unchecked) {
    if (!quotient_violations(s, *r.config).empty()) throw Error(ErrorKind::ModelFailure, "periodic witness has violations");
    check = "ok";
  }
  auto status = [](SearchStatus st) {
    switch (st) {
      case SearchStatus::Exhausted: return "exhausted";
      case SearchStatus::Stopped: return "found";
      case SearchStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
  };
  if (o.format == "structured") {
    ordered_json j;
    j["manifest"] = manifest_json(m);
    j["outcome"] = to_string(r.outcome);
    j["nodes_explored"] = r.nodes_explored;
    ordered_json at = ordered_json::array();
    for (const QuotientAttempt& q : r.attempts) {
      at.push_back({{"quotient", quotients[q.index]}, {"index", qs[q.index]->index()}, {"status", status(q.status)}, {"nodes", q.nodes}});
    }
    j["attempts"] = at;
    if (r.config) {
      ordered_json c = ordered_json::array();
      for (std::size_t i = 0; i < r.config->colors.size(); ++i) {
        c.push_back({r.config->table->representatives[i].to_string(), s.alphabet().name(r.config->colors[i])});
      }
      j["quotient"] = quotients[r.quotient];
      j["coloring"] = c;
      j["witness_check"] = check;
    }
    emit(o, j.dump(2) + "\n");
  } else {
    std::string out = "search-periodic v1\n" + manifest_suffix(m) + "outcome " + to_string(r.outcome) + "\nnodes " +
                      std::to_string(r.nodes_explored) + "\n";
    for (const QuotientAttempt& q : r.attempts) {
      out += "attempt " + quotients[q.index] + " index " + std::to_string(qs[q.index]->index()) + " " + status(q.status) +
             " nodes " + std::to_string(q.nodes) + "\n";
    }
    if (r.config) {
      out += "witness-check " + check + "\ncoloring (coset representative -> letter)\n";
      for (std::size_t i = 0; i < r.config->colors.size(); ++i) {
        out += "  " + r.config->table->representatives[i].to_string() + " -> " + s.alphabet().name(r.config->colors[i]) + "\n";
      }
    } else if (r.outcome == PeriodicOutcome::NoneUpToQuotient) {
      out += "note no strongly periodic configuration factors through these quotients\n";
    }
    emit(o, out);
  }
  return r.outcome == PeriodicOutcome::Found ? kOk : kAlternate;
}

int cmd_cosets(const std::string& path, const std::string& subgroup, std::size_t max_cosets, const Options& o) {
  const Presentation p = parse_file(path, [](std::string_view t) { return parse_presentation(t); });
  std::vector<Word> gens;
  std::stringstream in(subgroup);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    if (piece.find_first_not_of(" \t") != std::string::npos) gens.push_back(parse_word(piece));
  }
  const CosetTable t = todd_coxeter(p, gens, max_cosets);
  if (!o.unchecked) {
    const TableCheck c = check_table(t);
    if (!c.ok) throw Error(ErrorKind::ModelFailure, "coset table: " + c.problem);
  }
  emit(o, to_text(t));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subshifts of finite type on finitely generated groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  Options o;
  auto common = [&](CLI::App* c, bool structured) {
    c->add_flag("--unchecked", o.unchecked, "Skip re-verification of the result");
    if (structured) {
      c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    }
    c->add_option("-o,--output", o.output, "Write the result to a file");
  };

  std::string file;
  auto* rewrite = app.add_subcommand("rewrite", "Rewrite a one-relator presentation to a zero-exponent witness");
  rewrite->add_option("presentation", file, ".grp file")->required();
  common(rewrite, true);

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Build and check the non-rigidity certificate");
  analyze->add_option("presentation", aa.presentation, ".grp file")->required();
  analyze->add_option("--plug", aa.plug, ".sft file over a free group");
  analyze->add_option("--quotient", aa.quotients, ".ct files for the periodic search");
  analyze->add_option("--radius", aa.radius, "Tiling radius");
  analyze->add_option("--barbieri-radius", aa.barbieri_radius, "Bound on |gamma| and n");
  analyze->add_option("--budget", aa.budget, "Search node budget");
  analyze->add_option("--samples", aa.samples, "Random word pairs for the exponent identities");
  analyze->add_option("--seed", aa.seed, "Seed for the random word pairs");
  common(analyze, true);

  std::string sft_file, emb_file, mode;
  auto* extend = app.add_subcommand("extend", "Free or right extension of an SFT along an embedding");
  extend->add_option("sft", sft_file, ".sft file over the subgroup")->required();
  extend->add_option("embedding", emb_file, "embedding file")->required();
  extend->add_option("--mode", mode, "free or right")->required()->check(CLI::IsMember({"free", "right"}));
  common(extend, false);

  std::size_t radius = 3, budget = 2000000, max_cosets = 100000;
  auto* tile = app.add_subcommand("tile", "Search for an admissible coloring of a ball");
  tile->add_option("sft", file, ".sft file")->required();
  tile->add_option("--radius", radius, "Ball radius");
  tile->add_option("--budget", budget, "Search node budget");
  common(tile, true);

  std::vector<std::string> quotients;
  auto* search = app.add_subcommand("search-periodic", "Search for strongly periodic points on finite quotients");
  search->add_option("sft", file, ".sft file")->required();
  search->add_option("--quotient", quotients, ".ct files")->required();
  search->add_option("--budget", budget, "Search node budget");
  common(search, true);

  std::string subgroup;
  auto* cosets = app.add_subcommand("cosets", "Coset enumeration");
  cosets->add_option("presentation", file, ".grp file")->required();
  cosets->add_option("--subgroup", subgroup, "Comma-separated subgroup generators");
  cosets->add_option("--max-cosets", max_cosets, "Coset budget");
  common(cosets, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*rewrite) return cmd_rewrite(file, o);
    if (*analyze) return cmd_analyze(aa, o);
    if (*extend) return cmd_extend(sft_file, emb_file, mode, o);
    if (*tile) return cmd_tile(file, radius, budget, o);
    if (*search) return cmd_search(file, quotients, budget, o);
    if (*cosets) return cmd_cosets(file, subgroup, max_cosets, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
