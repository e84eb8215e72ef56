#pragma once

// Right cosets H g_1, ..., H g_k of a finite-index subgroup and the action
// Hg . s = Hgs of the generators on them.
//
// Cosets are 0-based here (coset 0 is H itself); the text format and reports
// number them from 1.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sftg/group_model.hpp"
#include "sftg/presentation.hpp"
#include "sftg/words.hpp"

namespace sftg {

struct CosetTable {
  Presentation presentation;
  std::vector<Word> subgroup_generators;
  // Shortest, then lexicographic in the column order below; representatives[0] is 1.
  std::vector<Word> representatives;
  // action[coset][column]; column 2j is generator j, 2j+1 its inverse.
  std::vector<std::vector<std::size_t>> action;

  std::size_t index() const noexcept { return action.size(); }
  // Throws UnknownGenerator.
  std::size_t column(const Letter& l) const;
  std::size_t trace(std::size_t coset, const Word& w) const;
  std::size_t coset_of(const Word& g) const { return trace(0, g); }

  friend bool operator==(const CosetTable&, const CosetTable&) = default;
};

// HLT enumeration with coincidence handling, followed by renumbering in
// breadth-first order. Throws BudgetExceeded when more than max_cosets cosets
// are alive at once.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_gens,
                        std::size_t max_cosets = 100000);

struct TableCheck {
  bool ok = true;
  std::string problem;  // first violated property
};

// Permutation property, relators acting trivially, subgroup generators fixing
// coset 0, representatives landing on their own coset.
TableCheck check_table(const CosetTable& t);

// g = h g_i with h in H, h in model normal form.
std::pair<Word, std::size_t> coset_decompose(const CosetTable& t, const GroupModel& model, const Word& g);

// g_i^-1 a g_i, freely reduced.
Word conjugate_generator(const CosetTable& t, const Word& a, std::size_t i);

// .ct text format:
//   cosets v1
//   generators a b
//   relators a b a b^-1
//   subgroup a , b^2
//   index 2
//   rep 1 1
//   rep 2 b
//   columns a a^-1 b b^-1
//   act 1 1 1 2 2
//   act 2 2 2 1 1
std::string to_text(const CosetTable& t);
CosetTable parse_coset_table(std::string_view text);

}  // namespace sftg
