#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skysentry/kg/query.hpp"
#include "skysentry/kg/term.hpp"

namespace skysentry::kg {

struct EvalStats {
  std::uint64_t iterations = 0;    // candidate triples examined, MINUS included
  std::uint64_t triples_read = 0;  // candidates that matched their pattern
  std::chrono::nanoseconds elapsed{0};
};

struct SolutionSet {
  std::vector<std::string> variables;   // the query's select list, in order
  std::vector<std::vector<Term>> rows;  // each row aligned with `variables`
  EvalStats stats;
};

// In-memory triple store with set-semantics insert, hash indexes on each
// triple position, and cumulative read/write counters. Reads count candidate
// triples examined by queries; writes count triples presented for insertion,
// duplicates included. Multiple readers or one writer at a time.
class TripleStore {
 public:
  TripleStore() = default;
  TripleStore(const TripleStore&) = delete;
  TripleStore& operator=(const TripleStore&) = delete;

  // Returns the number of newly stored triples (duplicates are ignored but
  // still counted as writes).
  std::size_t insert(std::span<const Triple> batch);
  std::size_t insert(std::initializer_list<Triple> batch) {
    return insert(std::span<const Triple>(batch.begin(), batch.size()));
  }

  std::size_t size() const;
  bool contains(const Triple& t) const;

  // Pattern lookup for host-side logic; nullopt means wildcard. Counts the
  // candidates it examines as reads.
  std::vector<Triple> match(const std::optional<Iri>& subject,
                            const std::optional<Iri>& predicate,
                            const std::optional<Term>& object) const;

  SolutionSet evaluate(const QueryAst& ast) const;

  std::uint64_t reads() const { return reads_.load(); }
  std::uint64_t writes() const { return writes_.load(); }

  // Counter deltas since the previous call, divided by the window length.
  // Calling this once per window yields per-window rates.
  std::pair<double, double> read_write_rates(double window_s);

  // One `subject predicate object` line per triple.
  void dump(std::ostream& out) const;
  void load(std::istream& in);

 private:
  friend class Evaluation;

  void insert_locked(const Triple& t);

  mutable std::shared_mutex mutex_;
  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> present_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_subject_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_predicate_;
  std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_object_;

  mutable std::atomic<std::uint64_t> reads_{0};
  std::atomic<std::uint64_t> writes_{0};
  std::uint64_t reads_mark_ = 0;
  std::uint64_t writes_mark_ = 0;
};

}  // namespace skysentry::kg
