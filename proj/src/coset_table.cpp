#include "sftg/coset_table.hpp"

#include <charconv>
#include <deque>
#include <optional>
#include <sstream>

#include "sftg/error.hpp"

namespace sftg {

namespace {

constexpr std::size_t kUndefined = static_cast<std::size_t>(-1);

std::size_t inverse_column(std::size_t c) { return c ^ 1U; }

std::vector<std::size_t> columns_of(const Presentation& p, const Word& w) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (!p.has_generator(l.generator)) {
      throw Error(ErrorKind::UnknownGenerator, "'" + l.generator.name() + "' is not a generator of " + p.to_string());
    }
    out.push_back(2 * p.generator_index(l.generator) + (l.sign > 0 ? 0 : 1));
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(std::size_t columns, std::size_t max_cosets) : columns_(columns), max_cosets_(max_cosets) {
    new_coset();
  }

  std::size_t size() const { return table_.size(); }
  bool live(std::size_t c) const { return parent_[c] == c; }
  std::size_t entry(std::size_t c, std::size_t x) const { return table_[c][x]; }

  void define(std::size_t c, std::size_t x) {
    const std::size_t n = new_coset();
    table_[c][x] = n;
    table_[n][inverse_column(x)] = c;
  }

  void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::size_t f = c;
    std::size_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && table_[f][w[i]] != kUndefined) f = table_[f][w[i++]];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[b][inverse_column(w[j - 1])] != kUndefined) b = table_[b][inverse_column(w[--j])];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[f][w[i]] = b;
        table_[b][inverse_column(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

 private:
  std::size_t new_coset() {
    if (live_ >= max_cosets_) {
      throw Error(ErrorKind::BudgetExceeded,
                  "coset enumeration did not close within " + std::to_string(max_cosets_) + " cosets");
    }
    table_.emplace_back(columns_, kUndefined);
    parent_.push_back(table_.size() - 1);
    ++live_;
    return table_.size() - 1;
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::size_t a, std::size_t b, std::vector<std::size_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t e = queue[q];
      for (std::size_t x = 0; x < columns_; ++x) {
        const std::size_t f = table_[e][x];
        if (f == kUndefined) continue;
        table_[f][inverse_column(x)] = kUndefined;
        const std::size_t e1 = rep(e);
        const std::size_t f1 = rep(f);
        if (table_[e1][x] != kUndefined) {
          merge(f1, table_[e1][x], queue);
        } else if (table_[f1][inverse_column(x)] != kUndefined) {
          merge(e1, table_[f1][inverse_column(x)], queue);
        } else {
          table_[e1][x] = f1;
          table_[f1][inverse_column(x)] = e1;
        }
      }
    }
  }

  std::size_t columns_;
  std::size_t max_cosets_;
  std::size_t live_ = 0;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> parent_;
};

Letter column_letter(const Presentation& p, std::size_t column) {
  return Letter{p.generators()[column / 2], column % 2 == 0 ? 1 : -1};
}

}  // namespace

std::size_t CosetTable::column(const Letter& l) const {
  if (!presentation.has_generator(l.generator)) {
    throw Error(ErrorKind::UnknownGenerator, "'" + l.generator.name() + "' is not a generator of the coset table");
  }
  return 2 * presentation.generator_index(l.generator) + (l.sign > 0 ? 0 : 1);
}

std::size_t CosetTable::trace(std::size_t coset, const Word& w) const {
  for (const Letter& l : w.letters()) coset = action[coset][column(l)];
  return coset;
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_gens, std::size_t max_cosets) {
  const std::size_t columns = 2 * p.rank();
  std::vector<std::vector<std::size_t>> relators;
  for (const Word& r : p.relators()) relators.push_back(columns_of(p, r));
  std::vector<std::vector<std::size_t>> subgroup;
  for (const Word& w : subgroup_gens) subgroup.push_back(columns_of(p, w));

  Enumerator e(columns, max_cosets);
  for (const auto& w : subgroup) e.scan_and_fill(0, w);
  for (std::size_t c = 0; c < e.size(); ++c) {
    for (const auto& r : relators) {
      if (!e.live(c)) break;
      e.scan_and_fill(c, r);
    }
    for (std::size_t x = 0; x < columns && e.live(c); ++x) {
      if (e.entry(c, x) == kUndefined) e.define(c, x);
    }
  }

  // Renumber live cosets in breadth-first order from coset 0.
  CosetTable t;
  t.presentation = p;
  t.subgroup_generators = subgroup_gens;
  std::vector<std::size_t> number(e.size(), kUndefined);
  std::vector<std::size_t> order{0};
  number[0] = 0;
  t.representatives.push_back(Word{});
  for (std::size_t q = 0; q < order.size(); ++q) {
    const std::size_t c = order[q];
    for (std::size_t x = 0; x < columns; ++x) {
      const std::size_t d = e.entry(c, x);
      if (number[d] != kUndefined) continue;
      number[d] = order.size();
      order.push_back(d);
      const Letter l = column_letter(p, x);
      t.representatives.push_back(t.representatives[q] * Word(l.generator, l.sign));
    }
  }
  t.action.assign(order.size(), std::vector<std::size_t>(columns));
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (std::size_t x = 0; x < columns; ++x) t.action[q][x] = number[e.entry(order[q], x)];
  }
  const TableCheck check = check_table(t);
  if (!check.ok) throw Error(ErrorKind::ModelFailure, "coset enumeration produced an invalid table: " + check.problem);
  return t;
}

TableCheck check_table(const CosetTable& t) {
  const std::size_t k = t.index();
  const std::size_t columns = 2 * t.presentation.rank();
  auto fail = [](std::string msg) { return TableCheck{false, std::move(msg)}; };
  if (k == 0) return fail("no cosets");
  if (t.representatives.size() != k) return fail("representative count differs from the index");
  for (std::size_t c = 0; c < k; ++c) {
    if (t.action[c].size() != columns) return fail("row " + std::to_string(c + 1) + " has the wrong width");
    for (std::size_t x = 0; x < columns; ++x) {
      const std::size_t d = t.action[c][x];
      if (d >= k) return fail("entry out of range in row " + std::to_string(c + 1));
      if (t.action[d][inverse_column(x)] != c) {
        return fail("column " + column_letter(t.presentation, x).to_string() + " is not inverted at coset " +
                    std::to_string(c + 1));
      }
    }
  }
  try {
    for (const Word& r : t.presentation.relators()) {
      for (std::size_t c = 0; c < k; ++c) {
        if (t.trace(c, r) != c) {
          return fail("relator " + r.to_string() + " moves coset " + std::to_string(c + 1));
        }
      }
    }
    for (const Word& h : t.subgroup_generators) {
      if (t.trace(0, h) != 0) return fail("subgroup generator " + h.to_string() + " moves coset 1");
    }
    if (!t.representatives[0].empty()) return fail("first representative is not the identity");
    for (std::size_t c = 0; c < k; ++c) {
      if (t.coset_of(t.representatives[c]) != c) {
        return fail("representative " + t.representatives[c].to_string() + " is not in coset " + std::to_string(c + 1));
      }
    }
  } catch (const Error& err) {
    return fail(err.what());
  }
  return {};
}

std::pair<Word, std::size_t> coset_decompose(const CosetTable& t, const GroupModel& model, const Word& g) {
  const std::size_t i = t.coset_of(g);
  return {model.normal_form(g * t.representatives[i].inverse()), i};
}

Word conjugate_generator(const CosetTable& t, const Word& a, std::size_t i) {
  const Word& g = t.representatives.at(i);
  return g.inverse() * a * g;
}

// ---------------------------------------------------------------------------

namespace {

std::string join_words(const std::vector<Word>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? " , " : "") + words[i].to_string();
  return out;
}

std::string keyword_line(const std::string& key, const std::string& rest) {
  return rest.empty() ? key + "\n" : key + " " + rest + "\n";
}

}  // namespace

std::string to_text(const CosetTable& t) {
  std::string out = "cosets v1\n";
  std::string gens;
  for (const Generator& g : t.presentation.generators()) gens += (gens.empty() ? "" : " ") + g.name();
  out += keyword_line("generators", gens);
  out += keyword_line("relators", join_words(t.presentation.relators()));
  out += keyword_line("subgroup", join_words(t.subgroup_generators));
  out += "index " + std::to_string(t.index()) + "\n";
  for (std::size_t c = 0; c < t.index(); ++c) {
    out += "rep " + std::to_string(c + 1) + " " + t.representatives[c].to_string() + "\n";
  }
  std::string cols;
  for (std::size_t x = 0; x < 2 * t.presentation.rank(); ++x) {
    cols += (cols.empty() ? "" : " ") + column_letter(t.presentation, x).to_string();
  }
  out += keyword_line("columns", cols);
  for (std::size_t c = 0; c < t.index(); ++c) {
    out += "act " + std::to_string(c + 1);
    for (std::size_t d : t.action[c]) out += " " + std::to_string(d + 1);
    out += "\n";
  }
  return out;
}

namespace {

struct Line {
  std::size_t number;
  std::string key;
  std::string rest;
  std::size_t rest_column;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const auto key_end = std::min(raw.find_first_of(" \t\r", first), raw.size());
    Line line{number, std::string(raw.substr(first, key_end - first)), {}, key_end + 2};
    const auto rest_start = raw.find_first_not_of(" \t\r", key_end);
    if (rest_start != std::string_view::npos) {
      const auto rest_end = raw.find_last_not_of(" \t\r");
      line.rest = std::string(raw.substr(rest_start, rest_end + 1 - rest_start));
      line.rest_column = rest_start + 1;
    }
    out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

std::vector<Word> parse_word_list(const Line& line) {
  std::vector<Word> out;
  if (line.rest.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = std::min(line.rest.find(',', start), line.rest.size());
    const std::string piece = line.rest.substr(start, comma - start);
    if (piece.find_first_not_of(" \t") == std::string::npos) {
      throw ParseError(line.number, line.rest_column + start, "empty word in list");
    }
    out.push_back(parse_word(piece, line.number, line.rest_column + start));
    if (comma == line.rest.size()) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& tok, const Line& line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line.number, line.rest_column, "expected a nonnegative integer, found '" + tok + "'");
  }
  return v;
}

const Line& expect_key(const std::vector<Line>& lines, std::size_t& at, const std::string& key) {
  if (at >= lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1, "expected '" + key + "'");
  const Line& line = lines[at];
  if (line.key != key) throw ParseError(line.number, 1, "expected '" + key + "', found '" + line.key + "'");
  ++at;
  return line;
}

}  // namespace

CosetTable parse_coset_table(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t at = 0;
  const Line& header = expect_key(lines, at, "cosets");
  if (header.rest != "v1") throw ParseError(header.number, header.rest_column, "unsupported version '" + header.rest + "'");

  std::vector<Generator> gens;
  for (const std::string& name : tokens(expect_key(lines, at, "generators").rest)) {
    if (!is_valid_identifier(name)) throw ParseError(lines[at - 1].number, 1, "invalid generator name '" + name + "'");
    gens.emplace_back(name);
  }
  CosetTable t;
  t.presentation = Presentation(gens, parse_word_list(expect_key(lines, at, "relators")));
  t.subgroup_generators = parse_word_list(expect_key(lines, at, "subgroup"));
  const Line& index_line = expect_key(lines, at, "index");
  const std::size_t k = parse_count(index_line.rest, index_line);
  if (k == 0) throw ParseError(index_line.number, index_line.rest_column, "index must be positive");

  for (std::size_t c = 0; c < k; ++c) {
    const Line& line = expect_key(lines, at, "rep");
    const auto space = line.rest.find(' ');
    const std::string num = line.rest.substr(0, space);
    if (parse_count(num, line) != c + 1) throw ParseError(line.number, line.rest_column, "representatives out of order");
    if (space == std::string::npos) throw ParseError(line.number, line.rest_column, "missing representative word");
    t.representatives.push_back(parse_word(line.rest.substr(space + 1), line.number, line.rest_column + space + 1));
  }

  const Line& cols = expect_key(lines, at, "columns");
  std::vector<std::string> expected;
  for (std::size_t x = 0; x < 2 * gens.size(); ++x) expected.push_back(column_letter(t.presentation, x).to_string());
  if (tokens(cols.rest) != expected) throw ParseError(cols.number, cols.rest_column, "columns must list each generator and its inverse in order");

  for (std::size_t c = 0; c < k; ++c) {
    const Line& line = expect_key(lines, at, "act");
    const std::vector<std::string> toks = tokens(line.rest);
    if (toks.size() != 1 + expected.size()) throw ParseError(line.number, line.rest_column, "wrong number of entries");
    if (parse_count(toks[0], line) != c + 1) throw ParseError(line.number, line.rest_column, "rows out of order");
    std::vector<std::size_t> row;
    for (std::size_t x = 1; x < toks.size(); ++x) {
      const std::size_t d = parse_count(toks[x], line);
      if (d == 0 || d > k) throw ParseError(line.number, line.rest_column, "coset " + toks[x] + " out of range");
      row.push_back(d - 1);
    }
    t.action.push_back(std::move(row));
  }
  if (at != lines.size()) throw ParseError(lines[at].number, 1, "unexpected '" + lines[at].key + "'");
  const TableCheck check = check_table(t);
  if (!check.ok) throw ParseError(header.number, 1, "inconsistent coset table: " + check.problem);
  return t;
}

}  // namespace sftg
