#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sftg/words.hpp"

namespace sftg {

// <S | R>. Relators are kept freely reduced; cyclic normalization is an
// explicit, logged step (see StepKind::CyclicReduce).
class Presentation {
 public:
  Presentation() = default;
  // Throws InvalidArgument on duplicate generators and UnknownGenerator when
  // a relator uses an unlisted generator.
  Presentation(std::vector<Generator> generators, std::vector<Word> relators);

  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  std::size_t rank() const noexcept { return generators_.size(); }

  bool has_generator(const Generator& g) const noexcept;
  std::size_t generator_index(const Generator& g) const;

  // `< a b c | a b c , a^2 b >`
  std::string to_string() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<Generator> generators_;
  std::vector<Word> relators_;
};

// Parses the text form. Accepts newlines and `#` comments; errors carry the
// line and column of the offending token.
Presentation parse_presentation(std::string_view text);

// <a1 b1 ... ag bg | [a1,b1]...[ag,bg]>; genus 0 gives < | >.
Presentation surface_presentation(unsigned genus);

// Commutator u v u^-1 v^-1.
Word commutator(const Word& u, const Word& v);

// ---------------------------------------------------------------------------
// Tietze moves
// ---------------------------------------------------------------------------

enum class StepKind {
  AddRelator,
  RemoveRelator,
  AddGenerator,
  RemoveGenerator,
  // Markers outside the four moves: s is replaced by its formal inverse in
  // every relator, and a relator is replaced by its cyclically reduced core.
  InvertGenerator,
  CyclicReduce,
};

const char* to_string(StepKind kind) noexcept;
bool is_tietze_move(StepKind kind) noexcept;

// One factor conjugator * R[relator]^sign * conjugator^-1 of a consequence
// certificate.
struct ConsequenceTerm {
  Word conjugator;
  std::size_t relator = 0;
  int sign = 1;

  friend bool operator==(const ConsequenceTerm&, const ConsequenceTerm&) = default;
};

struct TietzeStep {
  StepKind kind = StepKind::AddRelator;
  // AddGenerator / RemoveGenerator / InvertGenerator.
  std::optional<Generator> generator;
  // AddRelator: the new relator. RemoveRelator: the removed relator.
  // AddGenerator: defining word w (adds relator g w^-1). RemoveGenerator: the
  // word substituted for g. CyclicReduce: the peeled conjugator.
  Word word;
  // RemoveRelator, RemoveGenerator (defining relator), CyclicReduce.
  std::size_t relator = 0;
  // AddRelator / RemoveRelator: proof that the word lies in the normal
  // closure of the (other) relators.
  std::vector<ConsequenceTerm> certificate;
  // AddRelator / RemoveRelator accepted without a certificate.
  bool unchecked = false;
  // Position in the four-phase rewriting schedule (0 when not applicable).
  int phase = 0;

  static TietzeStep add_relator(Word relator, std::vector<ConsequenceTerm> certificate = {},
                                bool unchecked = false);
  static TietzeStep remove_relator(std::size_t index, Word relator,
                                   std::vector<ConsequenceTerm> certificate = {},
                                   bool unchecked = false);
  static TietzeStep add_generator(Generator g, Word defining_word);
  // The replacement word is recomputed and checked on application; pass the
  // empty word to accept whatever the relator determines.
  static TietzeStep remove_generator(Generator g, std::size_t relator, Word replacement = {});
  static TietzeStep invert_generator(Generator g);
  static TietzeStep cyclic_reduce(std::size_t relator, Word conjugator);

  std::string to_string() const;

  friend bool operator==(const TietzeStep&, const TietzeStep&) = default;
};

// Throws InapplicableStep naming the violated side condition.
Presentation apply_tietze(const Presentation& p, const TietzeStep& step);
Presentation replay(const Presentation& p, std::span<const TietzeStep> log);

// If `relator` contains g exactly once, returns the word that g equals in the
// presented group; otherwise nullopt.
std::optional<Word> solve_for_generator(const Word& relator, const Generator& g);

// ---------------------------------------------------------------------------
// One-relator rewriting
// ---------------------------------------------------------------------------

struct FreeProductSplit {
  Generator absent_generator;
  Presentation remaining;  // current presentation with absent_generator dropped
  Presentation current;    // presentation in which the generator is absent
  std::vector<TietzeStep> log;
  std::vector<long> measures;  // sum of |exponent sums| at each iteration
};

struct Witness {
  Presentation presentation;
  Generator zero_generator;
  std::vector<TietzeStep> log;
  std::vector<long> measures;
  std::size_t substitutions = 0;
};

using RewriteOutcome = std::variant<FreeProductSplit, Witness>;

// Iterated generator substitution driving some exponent sum to zero. The
// absent-generator test runs before the zero-exponent test on every
// iteration. Requires one relator, nonempty after cyclic reduction, and at
// least three generators; otherwise throws PreconditionViolated.
RewriteOutcome magnus_moldavansky(const Presentation& p);

// Sum over generators of |exponent sum| in the relator.
long exponent_measure(const Word& relator, std::span<const Generator> generators);

// S \ {s}; throws GeneratorAbsentFromRelator unless s occurs in the single
// cyclically reduced relator. Freeness rests on the Freiheitssatz and is not
// verified here.
std::vector<Generator> freiheitssatz_subgroup(const Presentation& p, const Generator& s);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct Citation {
  std::string anchor;     // stable key, e.g. "freiheitssatz"
  std::string statement;  // the cited result, stated briefly
};

// Citations used in certificates, looked up by anchor. Throws InvalidArgument
// for an unknown anchor.
const Citation& citation(std::string_view anchor);

struct HomCertificate {
  Generator generator;
  std::vector<long> relator_sums;  // exponent sum of each relator at generator
  bool valid = false;              // every relator sum is zero
};

// |.|_c extends to a homomorphism G -> Z iff every relator has exponent sum 0.
HomCertificate exponent_hom_check(const Presentation& p, const Generator& c);

struct InfiniteEndsCertificate {
  FreeProductSplit split;
  std::vector<Citation> citations;
};

struct ZeroExponentCertificate {
  Witness witness;
  Generator zero_generator;
  std::vector<Generator> free_subgroup;  // T \ {t}
  HomCertificate hom;
  std::vector<Citation> citations;
};

using NonRigidityCertificate = std::variant<InfiniteEndsCertificate, ZeroExponentCertificate>;

NonRigidityCertificate analyze_one_relator(const Presentation& p);

// ---------------------------------------------------------------------------
// Quasi-planar classification
// ---------------------------------------------------------------------------

struct Factor {
  enum class Kind { Free, Surface };
  Kind kind = Kind::Free;
  unsigned parameter = 0;  // rank for Free, genus for Surface

  static Factor free(unsigned rank) { return {Kind::Free, rank}; }
  static Factor surface(unsigned genus) { return {Kind::Surface, genus}; }
  bool trivial() const noexcept { return parameter == 0; }
};

struct FactorList {
  std::vector<Factor> factors;
  // G contains the free product as a proper finite-index subgroup.
  bool finite_index_supergroup = false;
  bool torsion_free = true;
};

struct Verdict {
  bool periodically_rigid = false;
  std::string branch;
  std::string reason;
};

// Throws InvalidArgument on an empty factor list.
Verdict classify_quasiplanar(const FactorList& f);

}  // namespace sftg
