#include "rws/terms.hpp"

#include <charconv>
#include <set>

namespace rws {

namespace {

class TermBuilder {
 public:
  TermBuilder(int length, const ProblemInstance& inst)
      : length_(length), inst_(inst), work_shifts_(inst.shift_count() - 1) {
    seq_.reserve(static_cast<std::size_t>(length));
  }

  std::vector<Term> run() {
    extend(0);
    return std::move(out_);
  }

 private:
  void extend(int run_length) {
    const int pos = static_cast<int>(seq_.size());
    if (pos == length_) {
      if (inst_.run_length(seq_.back()).min <= run_length) out_.push_back(Term{seq_});
      return;
    }
    const auto& changes = inst_.changes();
    for (int k = 0; k < work_shifts_; ++k) {
      const auto s = static_cast<ShiftId>(k);
      int run = 1;
      if (pos > 0) {
        const ShiftId prev = seq_.back();
        if (prev == s) {
          run = run_length + 1;
        } else if (run_length < inst_.run_length(prev).min) {
          continue;
        }
        if (!changes.pair_allowed(prev, s)) continue;
        if (pos > 1 && !changes.allowed(seq_[pos - 2], prev, s)) continue;
      }
      if (run > inst_.run_length(s).max) continue;
      seq_.push_back(s);
      extend(run);
      seq_.pop_back();
    }
  }

  int length_;
  const ProblemInstance& inst_;
  int work_shifts_;
  std::vector<ShiftId> seq_;
  std::vector<Term> out_;
};

}  // namespace

std::vector<Term> enumerate_terms(int length, const ProblemInstance& inst) {
  if (!inst.work_block().contains(length))
    throw Error("block length " + std::to_string(length) + " is outside the work-block bounds");
  return TermBuilder(length, inst).run();
}

std::string TermId::str() const { return std::to_string(length) + ":" + std::to_string(index); }

TermId TermId::parse(std::string_view text) {
  const auto colon = text.find(':');
  TermId id;
  if (colon == std::string_view::npos) throw Error("malformed term id '" + std::string(text) + "'");
  auto a = std::from_chars(text.data(), text.data() + colon, id.length);
  auto b = std::from_chars(text.data() + colon + 1, text.data() + text.size(), id.index);
  if (a.ec != std::errc() || a.ptr != text.data() + colon || b.ec != std::errc() ||
      b.ptr != text.data() + text.size())
    throw Error("malformed term id '" + std::string(text) + "'");
  return id;
}

TermCatalog TermCatalog::build(std::span<const int> block_lengths, const ProblemInstance& inst) {
  TermCatalog catalog;
  for (int len : std::set<int>(block_lengths.begin(), block_lengths.end())) {
    auto terms = enumerate_terms(len, inst);
    auto& entries = catalog.by_length_[len];
    entries.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
      entries.push_back({TermId{len, static_cast<int>(i)}, std::move(terms[i]), false});
  }
  return catalog;
}

std::vector<const Term*> TermCatalog::candidates(int length) const {
  std::vector<const Term*> out;
  auto it = by_length_.find(length);
  if (it == by_length_.end()) return out;
  for (const auto& e : it->second)
    if (!e.excluded) out.push_back(&e.term);
  return out;
}

bool TermCatalog::contains(const TermId& id) const {
  auto it = by_length_.find(id.length);
  return it != by_length_.end() && id.index >= 0 && id.index < static_cast<int>(it->second.size());
}

const CatalogEntry& TermCatalog::entry(const TermId& id) const {
  if (!contains(id)) throw Error("unknown term id " + id.str());
  return by_length_.at(id.length)[static_cast<std::size_t>(id.index)];
}

std::size_t TermCatalog::size() const {
  std::size_t n = 0;
  for (const auto& [len, entries] : by_length_) n += entries.size();
  return n;
}

TermCatalog TermCatalog::with_excluded(std::span<const TermId> ids, bool excluded) const {
  TermCatalog copy = *this;
  for (const auto& id : ids) {
    if (!contains(id)) throw Error("unknown term id " + id.str());
    copy.by_length_[id.length][static_cast<std::size_t>(id.index)].excluded = excluded;
  }
  return copy;
}

}  // namespace rws
