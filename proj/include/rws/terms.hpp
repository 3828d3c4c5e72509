#pragma once

// Step 3: legal shift sequences ("terms") for each work-block length.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rws/model.hpp"

namespace rws {

/// All sequences of work shifts of the given length whose every maximal run
/// of shift k has length in [MINS(k), MAXS(k)] and whose adjacent pairs and
/// interior triples are allowed. Runs are local to the term: a work block is
/// bounded by days off on both sides, so edge runs must meet MINS too.
/// Windows that involve the day off are left to the final schedule check.
/// Output is in lexicographic order of shift ids. Throws Error if `length`
/// is outside [MINW, MAXW].
std::vector<Term> enumerate_terms(int length, const ProblemInstance& inst);

/// Stable term identifier: block length plus the 0-based index of the term in
/// lexicographic order. Text form "length:index".
struct TermId {
  int length = 0;
  int index = 0;
  std::string str() const;
  static TermId parse(std::string_view text);
  friend auto operator<=>(const TermId&, const TermId&) = default;
};

struct CatalogEntry {
  TermId id;
  Term term;
  bool excluded = false;
  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

class TermCatalog {
 public:
  TermCatalog() = default;
  static TermCatalog build(std::span<const int> block_lengths, const ProblemInstance& inst);

  const std::map<int, std::vector<CatalogEntry>>& by_length() const noexcept { return by_length_; }
  /// Non-excluded terms of one length, in catalog order.
  std::vector<const Term*> candidates(int length) const;
  const CatalogEntry& entry(const TermId& id) const;
  bool contains(const TermId& id) const;
  std::size_t size() const;

  /// Copy with the listed terms marked (or unmarked). Throws Error on an
  /// unknown id.
  TermCatalog with_excluded(std::span<const TermId> ids, bool excluded) const;

  friend bool operator==(const TermCatalog&, const TermCatalog&) = default;

 private:
  std::map<int, std::vector<CatalogEntry>> by_length_;
};

inline TermCatalog exclude_terms(const TermCatalog& catalog, std::span<const TermId> ids) {
  return catalog.with_excluded(ids, true);
}

}  // namespace rws
