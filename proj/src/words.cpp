#include "sftg/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

#include "sftg/error.hpp"

namespace sftg {

bool is_valid_identifier(std::string_view name) noexcept {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

Generator::Generator(std::string name) : name_(std::move(name)) {
  if (!is_valid_identifier(name_)) {
    throw Error(ErrorKind::InvalidName, "'" + name_ + "' is not a valid generator name");
  }
}

std::string Letter::to_string() const {
  return sign > 0 ? generator.name() : generator.name() + "^-1";
}

Word::Word(const Generator& g, int power) {
  const int sign = power < 0 ? -1 : 1;
  for (int i = 0; i < power * sign; ++i) letters_.push_back({g, sign});
}

Word Word::from_letters(std::span<const Letter> letters) { return reduce(letters); }

Word reduce(std::span<const Letter> letters) {
  Word out;
  out.letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!out.letters_.empty() && out.letters_.back().cancels(l)) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

Word Word::power(long n) const {
  Word base = n < 0 ? inverse() : *this;
  Word out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out *= base;
  return out;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

Word& Word::operator*=(const Word& v) {
  if (&v == this) return *this = power(2);
  std::size_t i = 0;
  while (i < v.letters_.size() && !letters_.empty() && letters_.back().cancels(v.letters_[i])) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(i), v.letters_.end());
  return *this;
}

Word operator*(const Word& u, const Word& v) {
  Word out = u;
  out *= v;
  return out;
}

Word operator*(Word&& u, const Word& v) {
  u *= v;
  return std::move(u);
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const long run = static_cast<long>(j - i) * letters_[i].sign;
    if (!out.empty()) out += ' ';
    out += letters_[i].generator.name();
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

LetterSeq parse_letters(std::string_view text, std::size_t line, std::size_t column) {
  LetterSeq out;
  std::size_t i = 0;
  auto fail = [&](std::size_t at, const std::string& msg) -> void {
    throw ParseError(line, column + at, msg);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view token = text.substr(start, i - start);
    if (token == "1") continue;
    const auto caret = token.find('^');
    std::string_view name = token.substr(0, caret);
    if (!is_valid_identifier(name)) fail(start, "invalid generator name '" + std::string(name) + "'");
    long power = 1;
    if (caret != std::string_view::npos) {
      std::string_view exp = token.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), power);
      if (ec != std::errc() || ptr != exp.data() + exp.size() || exp.empty()) {
        fail(start + caret + 1, "invalid exponent '" + std::string(exp) + "'");
      }
      if (power == 0) fail(start + caret + 1, "exponent must be nonzero");
    }
    const Generator g{std::string(name)};
    const int sign = power < 0 ? -1 : 1;
    for (long k = 0; k < power * sign; ++k) out.push_back({g, sign});
  }
  return out;
}

Word parse_word(std::string_view text, std::size_t line, std::size_t column) {
  return reduce(parse_letters(text, line, column));
}

bool is_cyclically_reduced(const Word& w) noexcept {
  return w.size() < 2 || !w.front().cancels(w.back());
}

CyclicReduction cyclic_reduce(std::span<const Letter> letters) {
  // Peel mutually inverse end letters, then freely reduce what is left;
  // reduction can expose new cancelling ends, so repeat until stable.
  LetterSeq prefix;
  LetterSeq middle(letters.begin(), letters.end());
  for (;;) {
    std::size_t peel = 0;
    const std::size_t n = middle.size();
    while (2 * peel + 2 < n && middle[peel].cancels(middle[n - 1 - peel])) ++peel;
    prefix.insert(prefix.end(), middle.begin(), middle.begin() + static_cast<std::ptrdiff_t>(peel));
    LetterSeq inner(middle.begin() + static_cast<std::ptrdiff_t>(peel),
                    middle.end() - static_cast<std::ptrdiff_t>(peel));
    Word reduced = reduce(inner);
    LetterSeq next(reduced.letters().begin(), reduced.letters().end());
    const bool stable = peel == 0 && next.size() == inner.size();
    middle = std::move(next);
    if (stable) break;
  }
  return {reduce(middle), reduce(prefix)};
}

CyclicReduction cyclic_reduce(const Word& w) { return cyclic_reduce(w.letters()); }

std::vector<Word> cyclic_permutations(const Word& w) {
  std::vector<Word> out;
  const std::size_t n = w.size();
  if (n == 0) return {w};
  out.reserve(n);
  for (std::size_t shift = 0; shift < n; ++shift) {
    std::vector<Letter> rot(w.letters().begin() + static_cast<std::ptrdiff_t>(shift), w.letters().end());
    rot.insert(rot.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(shift));
    out.push_back(reduce(rot));
  }
  return out;
}

OccurrenceCounts occurrences(std::span<const Letter> letters, const Generator& c) {
  OccurrenceCounts counts;
  for (const Letter& l : letters) {
    if (l.generator != c) continue;
    (l.sign > 0 ? counts.positive : counts.negative) += 1;
  }
  return counts;
}

long exponent_sum(std::span<const Letter> letters, const Generator& c) {
  return occurrences(letters, c).exponent_sum();
}

bool occurs(const Word& w, const Generator& c) noexcept {
  return std::any_of(w.letters().begin(), w.letters().end(),
                     [&](const Letter& l) { return l.generator == c; });
}

Word substitute(const Word& w, const SubstitutionRules& rules) {
  Word out;
  for (const Letter& l : w.letters()) {
    auto it = rules.find(l.generator);
    if (it == rules.end()) {
      throw Error(ErrorKind::MissingRule, "no substitution rule for '" + l.generator.name() + "'");
    }
    out *= l.sign > 0 ? it->second : it->second.inverse();
  }
  return out;
}

std::vector<long> abelianization_vector(const Word& w, std::span<const Generator> alphabet) {
  std::vector<long> out(alphabet.size(), 0);
  for (const Letter& l : w.letters()) {
    auto it = std::find(alphabet.begin(), alphabet.end(), l.generator);
    if (it == alphabet.end()) {
      throw Error(ErrorKind::UnknownGenerator, "'" + l.generator.name() + "' is not in the alphabet");
    }
    out[static_cast<std::size_t>(it - alphabet.begin())] += l.sign;
  }
  return out;
}

std::vector<Generator> generators_of(const Word& w) {
  std::vector<Generator> out;
  for (const Letter& l : w.letters()) {
    if (std::find(out.begin(), out.end(), l.generator) == out.end()) out.push_back(l.generator);
  }
  return out;
}

}  // namespace sftg
