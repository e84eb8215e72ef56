#pragma once

// Finite searches that produce evidence about SFTs, and the certificate
// pipeline for one-relator groups.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sftg/ball.hpp"
#include "sftg/coset_table.hpp"
#include "sftg/presentation.hpp"
#include "sftg/sft.hpp"

namespace sftg {

// ---------------------------------------------------------------------------
// Constraint search
// ---------------------------------------------------------------------------

// Cells colored 0..colors-1; a constraint forbids listed color tuples on its
// cells. Cells are assigned in index order, colors in increasing order, and a
// constraint is tested once its last cell is assigned.
struct CspConstraint {
  std::vector<std::size_t> cells;
  std::vector<const std::vector<Color>*> forbidden;
};

enum class SearchStatus { Exhausted, Stopped, BudgetExceeded };

struct SearchStats {
  SearchStatus status = SearchStatus::Exhausted;
  std::size_t nodes = 0;
  std::size_t solutions = 0;
};

// The callback returns false to stop. `infeasible` short-circuits to an
// exhausted search with no solutions.
SearchStats run_csp(std::size_t cells, std::size_t colors, const std::vector<CspConstraint>& constraints,
                    bool infeasible, std::size_t node_budget,
                    const std::function<bool(const std::vector<Color>&)>& on_solution);

enum class TileOutcome { Satisfiable, Unsatisfiable, BudgetExceeded };
const char* to_string(TileOutcome o) noexcept;

struct TileResult {
  TileOutcome outcome = TileOutcome::Unsatisfiable;
  std::optional<BallConfig> config;  // lexicographically first admissible coloring
  std::size_t nodes_explored = 0;
};

// Throws PreconditionViolated when the ball is over other generators than s.
TileResult tile_ball(const Sft& s, std::shared_ptr<const Ball> b, std::size_t node_budget);

// Every admissible coloring of the ball, in lexicographic order.
SearchStats for_each_tiling(const Sft& s, std::shared_ptr<const Ball> b, std::size_t node_budget,
                            const std::function<bool(const BallConfig&)>& on_tiling);

enum class PeriodicOutcome { Found, NoneUpToQuotient, BudgetExceeded };
const char* to_string(PeriodicOutcome o) noexcept;

struct QuotientAttempt {
  std::size_t index = 0;  // of the quotient
  SearchStatus status = SearchStatus::Exhausted;
  std::size_t nodes = 0;
  bool found = false;
};

struct PeriodicSearchResult {
  PeriodicOutcome outcome = PeriodicOutcome::NoneUpToQuotient;
  std::optional<QuotientConfig> config;
  std::size_t quotient = 0;  // position of the quotient that produced config
  std::vector<QuotientAttempt> attempts;
  std::size_t nodes_explored = 0;
};

// The budget is shared by all quotients, which are tried in order.
PeriodicSearchResult search_strongly_periodic(const Sft& s,
                                              const std::vector<std::shared_ptr<const CosetTable>>& quotients,
                                              std::size_t node_budget);

// Throws PreconditionViolated unless the table is over the model's
// generators and the model's relators act trivially on it.
void check_table_over(const GroupModel& model, const CosetTable& t);

// Cosets of the kernel of G -> (Z/m)^n / <abelianized relators>, for prime m.
// Subgroup generators are Schreier generators read off the table.
CosetTable abelian_quotient_table(const Presentation& p, unsigned modulus);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version;
};

std::string tool_version();

struct Fact {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct CertificateReport {
  RunManifest manifest;
  Presentation input;
  std::string branch;  // "zero-exponent" or "infinite-ends"
  std::string conclusion;
  std::vector<std::string> tietze_log;
  std::vector<Fact> proved;
  std::vector<Citation> cited;
  std::vector<Fact> evidence;
  std::vector<std::string> notes;

  std::optional<Witness> witness;
  std::optional<FreeProductSplit> split;
  std::optional<Sft> plug;
  std::optional<Sft> extension;
  std::optional<BallConfig> tiling;
  std::optional<PeriodicSearchResult> periodic;

  bool proved_ok() const;
};

struct PipelineOptions {
  std::size_t radius = 3;           // tiling ball
  std::size_t barbieri_radius = 4;  // |gamma| <= R and 1 <= n <= R
  std::size_t node_budget = 2000000;
  std::size_t hom_samples = 1000;
  std::uint64_t seed = 1;
  std::size_t max_cosets = 100000;
};

// The default plug: over F_m with generators x1..xm, letters 0 1, forbidding
// 1 next to 1 along every generator.
Sft default_plug(std::size_t rank);

// Analyzes p and, on the zero-exponent branch, builds the free extension of
// the plug along T \ {t}, rechecks every algebraic identity, tiles a ball and
// looks for strongly periodic points on the quotients (mod-2 abelian quotient
// when none are given). Stage failures are rethrown with the stage name.
CertificateReport check_theorem15_pipeline(const Presentation& p, const std::optional<Sft>& plug,
                                           const std::vector<std::shared_ptr<const CosetTable>>& quotients,
                                           const PipelineOptions& options, RunManifest manifest = {});

std::string to_text(const CertificateReport& r);
std::string to_json(const CertificateReport& r);
std::string manifest_text(const RunManifest& m);

}  // namespace sftg
