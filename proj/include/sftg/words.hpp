#pragma once

// Free-group word algebra over named generators.
//
// A Word is always freely reduced. Unreduced letter sequences (LetterSeq)
// only appear transiently, as parser output or as input to reduce().

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sftg {

class Generator {
 public:
  Generator() = default;
  // Throws Error(InvalidName) unless name matches [A-Za-z][A-Za-z0-9_]*.
  explicit Generator(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;

 private:
  std::string name_;
};

bool is_valid_identifier(std::string_view name) noexcept;

struct Letter {
  Generator generator;
  int sign = 1;  // +1 for s, -1 for the formal inverse s^-1

  Letter inverse() const { return {generator, -sign}; }
  bool cancels(const Letter& other) const noexcept {
    return sign == -other.sign && generator == other.generator;
  }
  std::string to_string() const;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using LetterSeq = std::vector<Letter>;

class Word {
 public:
  Word() = default;
  // g^power, reduced (power 0 gives the empty word).
  Word(const Generator& g, int power = 1);

  static Word from_letters(std::span<const Letter> letters);

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  Word inverse() const;
  Word power(long n) const;
  // Letters i..i+len (no reduction needed: subwords of reduced words are reduced).
  Word subword(std::size_t pos, std::size_t len) const;

  // Concatenation followed by free reduction.
  friend Word operator*(const Word& u, const Word& v);
  friend Word operator*(Word&& u, const Word& v);
  Word& operator*=(const Word& v);

  // Syntax: whitespace-separated `name`, `name^-1`, `name^k`; identity is `1`.
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
  friend Word reduce(std::span<const Letter> letters);

 private:
  std::vector<Letter> letters_;
};

// Parses the word syntax into an unreduced letter sequence. `line` and
// `column` locate the text inside a larger file for diagnostics.
LetterSeq parse_letters(std::string_view text, std::size_t line = 0, std::size_t column = 1);
Word parse_word(std::string_view text, std::size_t line = 0, std::size_t column = 1);

// The unique freely reduced word equal to the sequence in F(S).
Word reduce(std::span<const Letter> letters);

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // w = conjugator * core * conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);
// Raw form: outer cancelling letters are peeled before the inside is reduced,
// so a b b^-1 a^-1 yields (1, conjugator a).
CyclicReduction cyclic_reduce(std::span<const Letter> letters);
bool is_cyclically_reduced(const Word& w) noexcept;
// All cyclic rotations of a cyclically reduced word, starting with w itself.
std::vector<Word> cyclic_permutations(const Word& w);

struct OccurrenceCounts {
  long positive = 0;  // occurrences of c
  long negative = 0;  // occurrences of c^-1
  long exponent_sum() const noexcept { return positive - negative; }
};

OccurrenceCounts occurrences(std::span<const Letter> letters, const Generator& c);
long exponent_sum(std::span<const Letter> letters, const Generator& c);
inline long exponent_sum(const Word& w, const Generator& c) { return exponent_sum(w.letters(), c); }
bool occurs(const Word& w, const Generator& c) noexcept;

using SubstitutionRules = std::map<Generator, Word>;

// Replaces s by rules[s] and s^-1 by rules[s]^-1; throws MissingRule for an
// unmapped generator.
Word substitute(const Word& w, const SubstitutionRules& rules);

// Component i is the exponent sum of alphabet[i]; throws UnknownGenerator if
// w uses a generator outside the alphabet.
std::vector<long> abelianization_vector(const Word& w, std::span<const Generator> alphabet);

// Generators of w in order of first occurrence.
std::vector<Generator> generators_of(const Word& w);

}  // namespace sftg
