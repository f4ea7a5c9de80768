#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qst/interp.hpp"

namespace qst {

/// One curated, ZFC-provable bounded formula. The provenance note records
/// why it is a theorem; the classical sanity gate re-checks every entry
/// against honest finite sets before any lattice run.
struct TheoremEntry {
  std::string id;
  std::string source;
  Formula formula;
  std::size_t arity = 0;
  std::string note;
  std::vector<std::string> tags;
};

/// Corpus file format: one entry per block, blank-line separated, with
/// "id:", "formula:", "arity:", "note:" and optional "tags:" lines.
std::vector<TheoremEntry> parse_corpus(const std::string& text);
std::vector<TheoremEntry> load_corpus_file(const std::string& path);

/// The shipped corpus (also available as text for the file round trip).
const std::vector<TheoremEntry>& builtin_corpus();
const std::string& builtin_corpus_text();

/// Every entry must parse, be bounded, and hold classically on random
/// hereditarily finite instantiations. Throws on the first failure.
void corpus_sanity_gate(const std::vector<TheoremEntry>& corpus,
                        unsigned instantiations = 50, std::uint64_t seed = 1);

/// Builds "bool<k>", "mo<n>", "prod(<a>,<b>)" (nested) or "file:<path>".
OrthoLattice lattice_by_name(const std::string& name, bool allow_non_oml = false);

/// Accepts "j,k", "sasaki" (3,3) and "takeuti" (3,5).
std::pair<int, int> interp_by_name(const std::string& name);

struct SuiteConfig {
  std::vector<std::string> lattices = {"mo2", "prod(bool1,mo2)", "bool3"};
  enum class InterpChoice { All36, SelfDual6, Explicit };
  InterpChoice interp_choice = InterpChoice::All36;
  std::vector<std::pair<int, int>> explicit_interps;
  unsigned rank_bound = 3;
  std::size_t budget = 2000;
  std::uint64_t seed = 42;
  std::string corpus_path;  // empty: builtin corpus

  /// "key = value" lines: lattices, interps (all | selfdual | j,k ...),
  /// rank_bound, budget, seed, corpus.
  static SuiteConfig parse_text(const std::string& text);
  static SuiteConfig load_file(const std::string& path);
  std::vector<Interpretation> interpretations(const OrthoLattice& l) const;
};

/// Stratified argument generator: check embeddings, weighted singletons,
/// mixed-rank nests and restrictions, so noncommuting supports show up often.
QId sample_qset(QSetStore& store, std::mt19937_64& rng, unsigned rank_bound);

struct TransferViolation {
  std::string lattice, interp_id, formula_id;
  std::vector<std::string> arg_literals;
  std::string lhs_label, bound_label;
};

struct TransferSuiteReport {
  std::size_t formulas = 0;
  std::size_t checks = 0;
  std::size_t bound_top_checks = 0;  // instances with commutator 1 (value must be 1)
  std::size_t violations = 0;
  std::optional<TransferViolation> first_violation;
  std::vector<std::string> lattice_lines;  // per-lattice summaries
  bool pass() const { return violations == 0; }
  std::string to_text() const;
};

/// Transfer sweep over the corpus; a violation under a normal interpretation
/// halts the sweep with a full witness.
TransferSuiteReport run_transfer_suite(const SuiteConfig& cfg);

struct DeMorganCell {
  std::string interp_id;
  bool self_dual = false;
  bool bounded_laws = false;      // M5/M6 over the instance budget
  bool connective_laws = false;   // M1/M2 plus finite-family duality
};

struct DeMorganLatticeReport {
  std::string lattice;
  bool boolean = false;
  std::vector<DeMorganCell> cells;
  /// On non-Boolean lattices the bounded laws must pass exactly on the
  /// diagonal pairs; on Boolean lattices everywhere.
  bool diagonal_exact = false;
};

struct DeMorganSuiteReport {
  std::vector<DeMorganLatticeReport> lattices;
  bool pass = false;
  std::string to_text() const;
};

DeMorganSuiteReport run_demorgan_suite(const SuiteConfig& cfg);

struct MetatheoryPart {
  std::string name;
  std::size_t checks = 0, failures = 0;
  std::string first_failure;
  bool pass() const { return failures == 0; }
};

struct MetatheoryReport {
  std::vector<MetatheoryPart> parts;
  bool pass() const;
  std::string to_text() const;
};

/// Seeded property sweeps for the structural principles: absoluteness under
/// sublogic re-rooting, the restriction principle, weight recovery over
/// checked bases, support cutting, and agreement of the two commutator
/// routes. `only` filters by part name when nonempty.
MetatheoryReport run_metatheory_suite(const SuiteConfig& cfg,
                                      const std::vector<std::string>& only = {});

struct CensusLatticeReport {
  std::string lattice;
  std::size_t interpretations = 0;
  std::size_t self_dual = 0;
  std::size_t polynomials = 0;  // Kotas census
  std::vector<std::string> subset_row, membership_row;  // discriminators, labeled
};

struct CensusSuiteReport {
  std::vector<CensusLatticeReport> lattices;
  std::string to_text() const;
};

CensusSuiteReport run_census(const SuiteConfig& cfg);

}  // namespace qst
