#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sftg/ball.hpp"
#include "sftg/coset_table.hpp"
#include "sftg/group_model.hpp"
#include "sftg/words.hpp"

namespace sftg {

using Color = std::size_t;

// Letters are referred to by index. A product alphabet A x [k] numbers the
// pair (c, i) as c * k + i and names it "c.i" with i counted from 1.
class Alphabet {
 public:
  Alphabet() = default;
  // Throws InvalidArgument on an empty list, duplicates or malformed names.
  explicit Alphabet(std::vector<std::string> letters);
  static Alphabet product(const Alphabet& base, std::size_t k);

  std::size_t size() const noexcept { return letters_.size(); }
  const std::vector<std::string>& letters() const noexcept { return letters_; }
  const std::string& name(Color c) const { return letters_.at(c); }
  std::optional<Color> find(std::string_view name) const;

  bool is_product() const noexcept { return k_ != 0; }
  // Throws AlphabetMismatch unless is_product().
  const std::vector<std::string>& base_letters() const;
  Alphabet base() const { return Alphabet(base_letters()); }
  std::size_t cosets() const;
  Color pair(Color c, std::size_t i) const;
  Color project1(Color c) const;
  std::size_t project2(Color c) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> letters_;
  std::vector<std::string> base_;
  std::size_t k_ = 0;
};

struct Pattern {
  std::vector<Word> support;
  std::vector<Color> colors;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

class Sft {
 public:
  // Throws DuplicateSupportPoint when two support points are equal in the
  // model, InvalidArgument for colors outside the alphabet or size mismatch,
  // UnknownGenerator for support words outside the model's alphabet.
  Sft(Alphabet alphabet, std::vector<Pattern> forbidden, ModelPtr ambient, std::vector<std::string> provenance = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Pattern>& forbidden() const noexcept { return forbidden_; }
  const ModelPtr& ambient() const noexcept { return ambient_; }
  const std::vector<std::string>& provenance() const noexcept { return provenance_; }

 private:
  Alphabet alphabet_;
  std::vector<Pattern> forbidden_;
  ModelPtr ambient_;
  std::vector<std::string> provenance_;
};

// Throws DuplicateSupportPoint naming the two positions.
void check_support(const GroupModel& model, const std::vector<Word>& support);

// Partial coloring of a ball.
struct BallConfig {
  std::shared_ptr<const Ball> ball;
  Alphabet alphabet;
  std::vector<std::optional<Color>> colors;

  BallConfig() = default;
  BallConfig(std::shared_ptr<const Ball> b, Alphabet a);
  BallConfig(std::shared_ptr<const Ball> b, Alphabet a, std::vector<std::optional<Color>> c);

  std::optional<Color> at(const Word& g) const;
  bool total() const;
  friend bool operator==(const BallConfig&, const BallConfig&) = default;
};

// y(g) = colors[coset of g] for the cosets of a finite-index subgroup K.
struct QuotientConfig {
  std::shared_ptr<const CosetTable> table;
  Alphabet alphabet;
  std::vector<Color> colors;

  Color at(const Word& g) const { return colors[table->coset_of(g)]; }
};

// (g . c)(h) = c(g^-1 h) where g^-1 h lies in the ball; uncolored elsewhere.
BallConfig shift(const Word& g, const BallConfig& c);

enum class Match { Yes, No, Unknown };
const char* to_string(Match m) noexcept;

// Whether p occurs at `at`: c(at q) = p(q) for every support point q. A
// definite mismatch anywhere gives No, even when other points are unknown.
Match appears(const Pattern& p, const BallConfig& c, const Word& at);

struct Violation {
  std::size_t pattern;  // index into forbidden()
  Word at;
};

// Every placement with appears() == Yes. An empty support is reported once,
// at the identity.
std::vector<Violation> violations(const Sft& s, const BallConfig& c);

struct QuotientViolation {
  std::size_t pattern;
  std::size_t coset;
};

// Exact: empty iff the configuration induced on the whole group lies in X.
std::vector<QuotientViolation> quotient_violations(const Sft& s, const QuotientConfig& q);

// The induced coloring on a ball of the same group.
BallConfig expand(const QuotientConfig& q, std::shared_ptr<const Ball> ball);

// Exact test of g . y = y for the induced configuration.
bool quotient_stabilizes(const QuotientConfig& q, const Word& g);

// Placements of the forbidden patterns that lie entirely inside a ball,
// grouped by support.
struct Constraint {
  std::vector<std::size_t> cells;  // ball indices, one per support point
  std::vector<std::size_t> patterns;
};

struct CompiledSft {
  std::vector<Constraint> constraints;
  std::vector<std::vector<Color>> pattern_colors;
  bool has_empty_pattern = false;
};

CompiledSft compile(const Sft& s, const Ball& b);

struct OrbitStabilizerReport {
  std::size_t distinct_translates_found = 0;
  std::vector<Word> stabilizing_elements;
  std::size_t radius_checked = 0;
  std::size_t core_radius = 0;  // translates are compared on this sub-ball
  bool exact = false;           // window checks are necessary conditions only
};

// Shifts by every ball element g with |g| <= max_len. g is listed when g . c
// agrees with c wherever both are colored.
OrbitStabilizerReport stabilizer_scan(const BallConfig& c, std::size_t max_len);
// Exact version for configurations given on a quotient; g ranges over the
// ball's elements with |g| <= max_len.
OrbitStabilizerReport stabilizer_scan(const QuotientConfig& q, const Ball& b, std::size_t max_len);

// .sft text format:
//   sft v1
//   provenance free text, one line each
//   model free_abelian a b
//   alphabet 0 1
//   product 2             (optional: letters become "c.i")
//   forbid 1 -> 1 , a -> 1
std::string to_text(const Sft& s);
Sft parse_sft(std::string_view text);

}  // namespace sftg
