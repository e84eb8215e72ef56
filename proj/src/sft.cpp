#include "sftg/sft.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "sftg/error.hpp"

namespace sftg {

namespace {

bool valid_letter_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.';
  });
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet is empty");
  std::set<std::string> seen;
  for (const std::string& l : letters_) {
    if (!valid_letter_name(l)) throw Error(ErrorKind::InvalidArgument, "invalid letter name '" + l + "'");
    if (!seen.insert(l).second) throw Error(ErrorKind::InvalidArgument, "duplicate letter '" + l + "'");
  }
}

Alphabet Alphabet::product(const Alphabet& base, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "product alphabet needs k >= 1");
  std::vector<std::string> letters;
  for (const std::string& c : base.letters()) {
    for (std::size_t i = 0; i < k; ++i) letters.push_back(c + "." + std::to_string(i + 1));
  }
  Alphabet out(std::move(letters));
  out.base_ = base.letters();
  out.k_ = k;
  return out;
}

std::optional<Color> Alphabet::find(std::string_view name) const {
  auto it = std::find(letters_.begin(), letters_.end(), name);
  if (it == letters_.end()) return std::nullopt;
  return static_cast<Color>(it - letters_.begin());
}

const std::vector<std::string>& Alphabet::base_letters() const {
  if (!is_product()) throw Error(ErrorKind::AlphabetMismatch, "alphabet is not of the form A x [k]");
  return base_;
}

std::size_t Alphabet::cosets() const {
  if (!is_product()) throw Error(ErrorKind::AlphabetMismatch, "alphabet is not of the form A x [k]");
  return k_;
}

Color Alphabet::pair(Color c, std::size_t i) const {
  if (c >= base_letters().size() || i >= k_) throw Error(ErrorKind::InvalidArgument, "product letter out of range");
  return c * k_ + i;
}

Color Alphabet::project1(Color c) const { return c / cosets(); }
std::size_t Alphabet::project2(Color c) const { return c % cosets(); }

// ---------------------------------------------------------------------------

void check_support(const GroupModel& model, const std::vector<Word>& support) {
  std::map<std::string, std::vector<std::size_t>> buckets;
  std::vector<Word> nf;
  for (std::size_t j = 0; j < support.size(); ++j) {
    nf.push_back(model.normal_form(support[j]));
    auto& bucket = buckets[model.bucket_key(nf[j])];
    for (std::size_t i : bucket) {
      if (model.equal(nf[i], nf[j])) {
        throw Error(ErrorKind::DuplicateSupportPoint, "support points " + std::to_string(i + 1) + " (" +
                                                          support[i].to_string() + ") and " + std::to_string(j + 1) +
                                                          " (" + support[j].to_string() + ") are equal");
      }
    }
    bucket.push_back(j);
  }
}

Sft::Sft(Alphabet alphabet, std::vector<Pattern> forbidden, ModelPtr ambient, std::vector<std::string> provenance)
    : alphabet_(std::move(alphabet)),
      forbidden_(std::move(forbidden)),
      ambient_(std::move(ambient)),
      provenance_(std::move(provenance)) {
  if (!ambient_) throw Error(ErrorKind::InvalidArgument, "SFT without an ambient group");
  for (std::size_t n = 0; n < forbidden_.size(); ++n) {
    const Pattern& p = forbidden_[n];
    if (p.support.size() != p.colors.size()) {
      throw Error(ErrorKind::InvalidArgument, "pattern " + std::to_string(n + 1) + ": support and colors differ in size");
    }
    for (Color c : p.colors) {
      if (c >= alphabet_.size()) throw Error(ErrorKind::InvalidArgument, "pattern " + std::to_string(n + 1) + ": color out of range");
    }
    check_support(*ambient_, p.support);
  }
}

// ---------------------------------------------------------------------------

BallConfig::BallConfig(std::shared_ptr<const Ball> b, Alphabet a)
    : ball(std::move(b)), alphabet(std::move(a)), colors(ball->size()) {}

BallConfig::BallConfig(std::shared_ptr<const Ball> b, Alphabet a, std::vector<std::optional<Color>> c)
    : ball(std::move(b)), alphabet(std::move(a)), colors(std::move(c)) {
  if (colors.size() != ball->size()) throw Error(ErrorKind::InvalidArgument, "coloring size differs from the ball");
  for (const auto& col : colors) {
    if (col && *col >= alphabet.size()) throw Error(ErrorKind::InvalidArgument, "color outside the alphabet");
  }
}

std::optional<Color> BallConfig::at(const Word& g) const {
  auto i = ball->find(g);
  if (!i) return std::nullopt;
  return colors[*i];
}

bool BallConfig::total() const {
  return std::all_of(colors.begin(), colors.end(), [](const auto& c) { return c.has_value(); });
}

BallConfig shift(const Word& g, const BallConfig& c) {
  BallConfig out(c.ball, c.alphabet);
  const Word ginv = g.inverse();
  for (std::size_t h = 0; h < c.ball->size(); ++h) {
    if (auto src = c.ball->find(ginv * c.ball->element(h))) out.colors[h] = c.colors[*src];
  }
  return out;
}

const char* to_string(Match m) noexcept {
  switch (m) {
    case Match::Yes: return "yes";
    case Match::No: return "no";
    case Match::Unknown: return "unknown";
  }
  return "?";
}

Match appears(const Pattern& p, const BallConfig& c, const Word& at) {
  bool unknown = false;
  for (std::size_t j = 0; j < p.support.size(); ++j) {
    auto idx = c.ball->find(at * p.support[j]);
    if (!idx || !c.colors[*idx]) {
      unknown = true;
    } else if (*c.colors[*idx] != p.colors[j]) {
      return Match::No;
    }
  }
  return unknown ? Match::Unknown : Match::Yes;
}

CompiledSft compile(const Sft& s, const Ball& b) {
  CompiledSft out;
  std::map<std::vector<Word>, std::vector<std::size_t>> by_support;
  for (std::size_t n = 0; n < s.forbidden().size(); ++n) {
    const Pattern& p = s.forbidden()[n];
    out.pattern_colors.push_back(p.colors);
    if (p.support.empty()) {
      out.has_empty_pattern = true;
      continue;
    }
    by_support[p.support].push_back(n);
  }
  for (const auto& [support, patterns] : by_support) {
    std::vector<Word> offsets;
    const Word q0inv = support[0].inverse();
    for (const Word& q : support) offsets.push_back(q0inv * q);
    for (std::size_t e = 0; e < b.size(); ++e) {
      Constraint c;
      c.patterns = patterns;
      for (const Word& off : offsets) {
        auto cell = b.product(e, off);
        if (!cell) break;
        c.cells.push_back(*cell);
      }
      if (c.cells.size() == offsets.size()) out.constraints.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Violation> violations(const Sft& s, const BallConfig& c) {
  std::vector<Violation> out;
  const CompiledSft compiled = compile(s, *c.ball);
  for (std::size_t n = 0; n < s.forbidden().size(); ++n) {
    if (s.forbidden()[n].support.empty()) out.push_back({n, Word{}});
  }
  const GroupModel& model = c.ball->group();
  for (const Constraint& con : compiled.constraints) {
    for (std::size_t n : con.patterns) {
      const auto& colors = compiled.pattern_colors[n];
      bool match = true;
      for (std::size_t j = 0; j < con.cells.size() && match; ++j) {
        match = c.colors[con.cells[j]] && *c.colors[con.cells[j]] == colors[j];
      }
      if (match) {
        const Word at = model.normal_form(c.ball->element(con.cells[0]) * s.forbidden()[n].support[0].inverse());
        out.push_back({n, at});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) { return a.pattern < b.pattern; });
  return out;
}

std::vector<QuotientViolation> quotient_violations(const Sft& s, const QuotientConfig& q) {
  std::vector<QuotientViolation> out;
  for (std::size_t n = 0; n < s.forbidden().size(); ++n) {
    const Pattern& p = s.forbidden()[n];
    for (std::size_t i = 0; i < q.table->index(); ++i) {
      bool match = true;
      for (std::size_t j = 0; j < p.support.size() && match; ++j) {
        match = q.colors[q.table->trace(i, p.support[j])] == p.colors[j];
      }
      if (match) out.push_back({n, i});
    }
  }
  return out;
}

BallConfig expand(const QuotientConfig& q, std::shared_ptr<const Ball> ball) {
  BallConfig out(std::move(ball), q.alphabet);
  for (std::size_t h = 0; h < out.ball->size(); ++h) out.colors[h] = q.at(out.ball->element(h));
  return out;
}

namespace {

// Whether h -> y(trace(a, h)) and h -> y(trace(b, h)) agree for every h.
bool same_translate(const QuotientConfig& q, std::size_t a, std::size_t b) {
  const CosetTable& t = *q.table;
  const std::size_t k = t.index();
  std::vector<char> seen(k * k, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{a, b}};
  seen[a * k + b] = 1;
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (q.colors[x] != q.colors[y]) return false;
    for (std::size_t col = 0; col < t.action[x].size(); ++col) {
      const std::size_t nx = t.action[x][col];
      const std::size_t ny = t.action[y][col];
      if (!seen[nx * k + ny]) {
        seen[nx * k + ny] = 1;
        stack.emplace_back(nx, ny);
      }
    }
  }
  return true;
}

}  // namespace

bool quotient_stabilizes(const QuotientConfig& q, const Word& g) {
  // (g . y)(h) = y(g^-1 h) = color(trace(coset(g^-1), h)).
  return same_translate(q, q.table->coset_of(g.inverse()), 0);
}

OrbitStabilizerReport stabilizer_scan(const BallConfig& c, std::size_t max_len) {
  const Ball& b = *c.ball;
  OrbitStabilizerReport report;
  report.radius_checked = b.radius();
  report.core_radius = max_len <= b.radius() ? b.radius() - max_len : 0;
  std::set<std::vector<std::optional<Color>>> translates;
  for (std::size_t g = 0; g < b.size(); ++g) {
    if (b.distance(g) > max_len) continue;
    const BallConfig shifted = shift(b.element(g), c);
    bool agrees = true;
    for (std::size_t h = 0; h < b.size() && agrees; ++h) {
      if (shifted.colors[h] && c.colors[h]) agrees = *shifted.colors[h] == *c.colors[h];
    }
    if (agrees) report.stabilizing_elements.push_back(b.element(g));
    if (max_len <= b.radius()) {
      std::vector<std::optional<Color>> core;
      for (std::size_t h = 0; h < b.size(); ++h) {
        if (b.distance(h) <= report.core_radius) core.push_back(shifted.colors[h]);
      }
      translates.insert(std::move(core));
    }
  }
  report.distinct_translates_found = std::max<std::size_t>(translates.size(), 1);
  return report;
}

OrbitStabilizerReport stabilizer_scan(const QuotientConfig& q, const Ball& b, std::size_t max_len) {
  OrbitStabilizerReport report;
  report.exact = true;
  report.radius_checked = std::min(max_len, b.radius());
  std::vector<std::size_t> classes;  // starting cosets of distinct translates
  for (std::size_t g = 0; g < b.size(); ++g) {
    if (b.distance(g) > max_len) continue;
    const std::size_t start = q.table->coset_of(b.element(g).inverse());
    if (same_translate(q, start, 0)) report.stabilizing_elements.push_back(b.element(g));
    if (std::none_of(classes.begin(), classes.end(), [&](std::size_t c) { return same_translate(q, c, start); })) {
      classes.push_back(start);
    }
  }
  report.distinct_translates_found = classes.size();
  return report;
}

// ---------------------------------------------------------------------------

std::string to_text(const Sft& s) {
  std::string out = "sft v1\n";
  for (const std::string& line : s.provenance()) out += "provenance " + line + "\n";
  out += "model " + s.ambient()->describe() + "\n";
  const Alphabet& a = s.alphabet();
  const std::vector<std::string>& listed = a.is_product() ? a.base_letters() : a.letters();
  out += "alphabet";
  for (const std::string& l : listed) out += " " + l;
  out += "\n";
  if (a.is_product()) out += "product " + std::to_string(a.cosets()) + "\n";
  for (const Pattern& p : s.forbidden()) {
    out += "forbid";
    for (std::size_t j = 0; j < p.support.size(); ++j) {
      out += std::string(j ? " , " : " ") + p.support[j].to_string() + " -> " + a.name(p.colors[j]);
    }
    out += "\n";
  }
  return out;
}

namespace {

struct SftLine {
  std::size_t number;
  std::string key;
  std::string rest;
  std::size_t rest_column;
};

std::vector<SftLine> sft_lines(std::string_view text) {
  std::vector<SftLine> out;
  std::size_t number = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') continue;
    const auto key_end = std::min(raw.find_first_of(" \t\r", first), raw.size());
    SftLine line{number, std::string(raw.substr(first, key_end - first)), {}, key_end + 1};
    const auto rest_start = raw.find_first_not_of(" \t\r", key_end);
    if (rest_start != std::string_view::npos) {
      const auto rest_end = raw.find_last_not_of(" \t\r");
      line.rest = std::string(raw.substr(rest_start, rest_end + 1 - rest_start));
      line.rest_column = rest_start + 1;
    }
    out.push_back(std::move(line));
  }
  return out;
}

Pattern parse_forbid(const SftLine& line, const Alphabet& a) {
  Pattern p;
  if (line.rest.empty()) return p;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = std::min(line.rest.find(',', start), line.rest.size());
    const std::string piece = line.rest.substr(start, comma - start);
    const std::size_t arrow = piece.find("->");
    const std::size_t col = line.rest_column + start;
    if (arrow == std::string::npos) throw ParseError(line.number, col, "expected 'WORD -> LETTER'");
    p.support.push_back(parse_word(piece.substr(0, arrow), line.number, col));
    std::string letter = piece.substr(arrow + 2);
    const auto l0 = letter.find_first_not_of(" \t");
    const auto l1 = letter.find_last_not_of(" \t");
    letter = l0 == std::string::npos ? "" : letter.substr(l0, l1 + 1 - l0);
    auto c = a.find(letter);
    if (!c) throw ParseError(line.number, col + arrow + 2, "letter '" + letter + "' is not in the alphabet");
    p.colors.push_back(*c);
    if (comma == line.rest.size()) break;
    start = comma + 1;
  }
  return p;
}

}  // namespace

Sft parse_sft(std::string_view text) {
  const std::vector<SftLine> lines = sft_lines(text);
  std::size_t at = 0;
  auto expect = [&](const std::string& key) -> const SftLine& {
    if (at >= lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1, "expected '" + key + "'");
    if (lines[at].key != key) throw ParseError(lines[at].number, 1, "expected '" + key + "', found '" + lines[at].key + "'");
    return lines[at++];
  };
  const SftLine& header = expect("sft");
  if (header.rest != "v1") throw ParseError(header.number, header.rest_column, "unsupported version '" + header.rest + "'");
  std::vector<std::string> provenance;
  while (at < lines.size() && lines[at].key == "provenance") provenance.push_back(lines[at++].rest);

  const SftLine& model_line = expect("model");
  ModelPtr model;
  try {
    model = parse_model(model_line.rest);
  } catch (const Error& e) {
    throw ParseError(model_line.number, model_line.rest_column, e.what());
  }

  const SftLine& alpha_line = expect("alphabet");
  std::vector<std::string> letters;
  for (std::size_t pos = 0; pos < alpha_line.rest.size();) {
    const auto s = alpha_line.rest.find_first_not_of(" \t", pos);
    if (s == std::string::npos) break;
    const auto e = std::min(alpha_line.rest.find_first_of(" \t", s), alpha_line.rest.size());
    letters.push_back(alpha_line.rest.substr(s, e - s));
    pos = e;
  }
  Alphabet alphabet;
  try {
    alphabet = Alphabet(letters);
    if (at < lines.size() && lines[at].key == "product") {
      const SftLine& pl = lines[at++];
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(pl.rest.data(), pl.rest.data() + pl.rest.size(), k);
      if (ec != std::errc() || ptr != pl.rest.data() + pl.rest.size() || k == 0) {
        throw ParseError(pl.number, pl.rest_column, "expected a positive coset count");
      }
      alphabet = Alphabet::product(alphabet, k);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(alpha_line.number, alpha_line.rest_column, e.what());
  }

  std::vector<Pattern> forbidden;
  while (at < lines.size()) {
    const SftLine& line = expect("forbid");
    forbidden.push_back(parse_forbid(line, alphabet));
  }
  return Sft(std::move(alphabet), std::move(forbidden), std::move(model), std::move(provenance));
}

}  // namespace sftg
