#pragma once

// Computation backends for the groups the SFT machinery runs over.
//
// A backend supplies normal forms and equality. When canonical() is false
// (the Dehn backend), normal_form() returns some shorter representative and
// equality must go through equal(); bucket_key() is then an invariant that
// equal elements share, used for hashing.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sftg/presentation.hpp"
#include "sftg/words.hpp"

namespace sftg {

class GroupModel {
 public:
  virtual ~GroupModel() = default;

  const std::vector<Generator>& generators() const noexcept { return generators_; }
  bool has_generator(const Generator& g) const noexcept;

  // Throws UnknownGenerator for letters outside the alphabet.
  virtual Word normal_form(const Word& w) const = 0;
  virtual bool canonical() const noexcept { return true; }
  virtual bool equal(const Word& u, const Word& v) const;
  virtual std::string bucket_key(const Word& w) const;

  // A presentation on generators() defining the same group.
  virtual Presentation presentation() const = 0;
  // Round-trips through parse_model().
  virtual std::string describe() const = 0;

  Word identity() const { return {}; }
  Word multiply(const Word& u, const Word& v) const { return normal_form(u * v); }
  Word inverse(const Word& u) const { return normal_form(u.inverse()); }
  bool is_identity(const Word& w) const { return equal(w, Word{}); }

 protected:
  explicit GroupModel(std::vector<Generator> generators);
  void check_alphabet(const Word& w) const;

 private:
  std::vector<Generator> generators_;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

class FreeGroupModel final : public GroupModel {
 public:
  explicit FreeGroupModel(std::vector<Generator> generators);
  Word normal_form(const Word& w) const override;
  Presentation presentation() const override;
  std::string describe() const override;
};

class FreeAbelianModel final : public GroupModel {
 public:
  explicit FreeAbelianModel(std::vector<Generator> generators);
  Word normal_form(const Word& w) const override;
  Presentation presentation() const override;
  std::string describe() const override;
};

// base x Z/kZ, the cyclic factor generated by a central generator of order k.
// Normal form: base normal form followed by z^i with 0 <= i < k.
class DirectWithCyclicModel final : public GroupModel {
 public:
  DirectWithCyclicModel(ModelPtr base, Generator cyclic, unsigned order);

  const ModelPtr& base() const noexcept { return base_; }
  const Generator& cyclic_generator() const noexcept { return cyclic_; }
  unsigned order() const noexcept { return order_; }
  // (base part, cyclic exponent in [0, k)) of any word.
  std::pair<Word, unsigned> split(const Word& w) const;

  Word normal_form(const Word& w) const override;
  bool canonical() const noexcept override { return base_->canonical(); }
  bool equal(const Word& u, const Word& v) const override;
  std::string bucket_key(const Word& w) const override;
  Presentation presentation() const override;
  std::string describe() const override;

 private:
  ModelPtr base_;
  Generator cyclic_;
  unsigned order_;
};

// F_k x| Z with t x t^-1 = phi(x) for every free generator x. Normal form
// t^i h with h reduced over the free generators.
class FreeByCyclicModel final : public GroupModel {
 public:
  // `inverse_rules` may be omitted when phi permutes the free generators up
  // to inversion; otherwise it is required. Both maps are checked to be
  // mutually inverse automorphisms (throws InvalidArgument).
  FreeByCyclicModel(std::vector<Generator> free_generators, Generator transversal,
                    SubstitutionRules automorphism, std::optional<SubstitutionRules> inverse_rules = {});

  const std::vector<Generator>& free_generators() const noexcept { return free_; }
  const Generator& transversal() const noexcept { return transversal_; }
  const SubstitutionRules& automorphism() const noexcept { return phi_; }
  // (i, h) with w = t^i h.
  std::pair<long, Word> split(const Word& w) const;

  Word normal_form(const Word& w) const override;
  Presentation presentation() const override;
  std::string describe() const override;

 private:
  std::vector<Generator> free_;
  Generator transversal_;
  SubstitutionRules phi_;
  SubstitutionRules phi_inverse_;
  bool explicit_inverse_ = false;
};

struct SmallCancellationReport {
  bool holds = false;     // every piece shorter than |r| / 6
  Word longest_piece;     // a longest piece found
  std::size_t relator_length = 0;
};

// Metric C'(1/6) over all cyclic conjugates of r and r^-1.
SmallCancellationReport small_cancellation_check(const Word& relator);

// One-relator group whose relator satisfies C'(1/6); equality by Dehn's
// algorithm. Not canonical.
class DehnModel final : public GroupModel {
 public:
  // Throws PreconditionViolated (not one relator) or SmallCancellationViolated.
  explicit DehnModel(const Presentation& p);

  const Word& relator() const noexcept { return relator_; }
  // Replaces subwords that are more than half of a cyclic conjugate of r^+-1
  // by the shorter complement until none is left; empty iff w = 1.
  Word dehn_reduce(const Word& w) const;

  Word normal_form(const Word& w) const override { return dehn_reduce(w); }
  bool canonical() const noexcept override { return false; }
  bool equal(const Word& u, const Word& v) const override;
  std::string bucket_key(const Word& w) const override;
  Presentation presentation() const override;
  std::string describe() const override;

 private:
  Word relator_;
  std::vector<Word> rotations_;     // cyclic conjugates of r and r^-1
  std::vector<long> relator_abel_;  // abelianization of r
};

Word dehn_reduce(const Presentation& p, const Word& w);

// One-relator group in which some generator s occurs exactly once in the
// relator; the group is then free on the other generators, and the normal
// form substitutes the solved value of s.
class OneRelatorFreeModel final : public GroupModel {
 public:
  // Throws PreconditionViolated when no generator occurs exactly once.
  explicit OneRelatorFreeModel(const Presentation& p);

  const Generator& eliminated() const noexcept { return eliminated_; }

  Word normal_form(const Word& w) const override;
  Presentation presentation() const override { return presentation_; }
  std::string describe() const override;

 private:
  Presentation presentation_;
  Generator eliminated_;
  SubstitutionRules rules_;
};

// Picks a backend for a one-relator presentation: Dehn when C'(1/6) holds,
// otherwise elimination of a generator occurring once, otherwise nullptr.
ModelPtr model_for_one_relator(const Presentation& p);

// Model description grammar:
//   free NAME...
//   free_abelian NAME...
//   direct_cyclic NAME K MODEL
//   free_by_cyclic NAME [ NAME... ] { NAME -> WORD , ... } [ { inverse rules } ]
//   dehn < presentation >
//   one_relator_free < presentation >
ModelPtr parse_model(std::string_view text);

}  // namespace sftg
