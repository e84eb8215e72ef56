#pragma once

// Moving SFTs from a subgroup H to a supergroup G, and moving configurations
// along with them.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sftg/ball.hpp"
#include "sftg/coset_table.hpp"
#include "sftg/group_model.hpp"
#include "sftg/sft.hpp"

namespace sftg {

// H -> G given on generators. With a table, the table enumerates the right
// cosets of the image of H in G.
struct Embedding {
  ModelPtr supergroup;
  std::vector<Generator> subgroup_generators;  // S_H
  std::vector<Word> images;                    // image of each generator in G
  std::shared_ptr<const CosetTable> table;

  // Throws SupportOutsideSubgroup for generators outside S_H.
  Word image(const Word& h) const;
  std::size_t index() const;  // throws PreconditionViolated without a table
  const Word& representative(std::size_t i) const { return table->representatives.at(i); }
};

// Checks that images are words over G, and that the table (if any) is over
// G's generators, is acted on trivially by G's relators and has exactly the
// images as subgroup generators. Throws PreconditionViolated.
void validate(const Embedding& e);

// Computes the table by coset enumeration over G's presentation.
Embedding make_embedding(ModelPtr supergroup, std::vector<Generator> subgroup_generators, std::vector<Word> images,
                         bool with_table, std::size_t max_cosets = 100000);

// The identity embedding of a model into itself (index 1).
Embedding identity_embedding(ModelPtr model);

// X^free: same alphabet and forbidden patterns, supports read in G.
Sft free_extension(const Sft& x, const Embedding& e);

struct RightExtension {
  Sft sft;
  std::size_t k = 0;
  std::size_t type1 = 0;  // |S_H| |A|^2 k (k - 1)
  std::size_t type2 = 0;  // |F_H| k
  // conjugated[i][n] = g_i^-1 a_n g_i in G normal form.
  std::vector<std::vector<Word>> conjugated;
};

// Alphabet A x [k]. Type (1): for each a, c1, c2, i, j != i, the pattern
// (c1, i) at 1 and (c2, j) at a_i. Type (2): for each forbidden p and each i,
// the support conjugated by g_i colored (p(q), i). Listed in that order.
RightExtension right_extension(const Sft& x, const Embedding& e);

// ---------------------------------------------------------------------------
// Lifts
// ---------------------------------------------------------------------------

// x^(g, i) = x(g) on H x Z/k.
BallConfig product_lift(const BallConfig& x, std::shared_ptr<const DirectWithCyclicModel> g, std::size_t radius);
// Exact form: the lift is constant on cosets of K x Z/k.
QuotientConfig product_lift(const QuotientConfig& x, std::shared_ptr<const DirectWithCyclicModel> g,
                            std::size_t max_cosets = 100000);

// y(h g_i) = (x(h), i). The ball form throws DecompositionFailure when some
// h needed for the target ball is outside x's ball.
BallConfig periodic_right_lift(const BallConfig& x, const Embedding& e, std::size_t radius);
// Exact form: x lives on the cosets of K <= H; y lives on the cosets of the
// image of K in G.
QuotientConfig periodic_right_lift(const QuotientConfig& x, const Embedding& e, std::size_t max_cosets = 100000);

// x(h) = pi_1(y(h g_i)) on the given ball of H; uncolored where y is unknown.
// Throws AlphabetMismatch unless y has a product alphabet.
BallConfig coset_restriction(const BallConfig& y, const Embedding& e, std::size_t i,
                             std::shared_ptr<const Ball> h_ball);

// x^(t^i h) = x(h) for the free-by-cyclic normal form t^i h.
BallConfig cyclic_lift(const BallConfig& x, std::shared_ptr<const FreeByCyclicModel> g, std::size_t radius);

struct ColorClosure {
  std::vector<std::optional<std::size_t>> pi2;  // forced coset label per ball cell
  std::vector<std::optional<std::size_t>> from;  // cell that forced it (none for seeds)
};

// Propagates pi_2 from every colored cell g with pi_2 = i to g a_i, for the
// edges a_i read off the type (1) patterns of s. Throws
// PropagationContradiction with the chain of cells that forced two labels.
ColorClosure coset_color_closure(const Sft& s, const BallConfig& c);

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

// embedding v1
// supergroup direct_cyclic z 2 free_abelian a b
// map a -> a
// map b -> b
// table            (optional; the rest of the file is a .ct table)
// cosets v1
// ...
std::string to_text(const Embedding& e);
Embedding parse_embedding(std::string_view text);

}  // namespace sftg
