#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "skysentry/kg/term.hpp"

namespace skysentry::kg {

struct TriplePattern {
  Term subject;    // Iri, Literal or Variable
  Term predicate;  // Iri or Variable
  Term object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

enum class CompareOp { Eq, Ne, Lt, Gt, Le, Ge };

struct Comparison {
  Term lhs;  // Variable or Literal
  CompareOp op = CompareOp::Eq;
  Term rhs;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Disjunction of conjunctions, as parsed ('&&' binds tighter than '||').
struct Filter {
  std::vector<std::vector<Comparison>> clauses;

  friend bool operator==(const Filter&, const Filter&) = default;
};

struct Minus;

using GroupElement = std::variant<TriplePattern, Filter, Minus>;

struct Group {
  std::vector<GroupElement> elements;

  // defined below, once Minus is complete
  friend bool operator==(const Group&, const Group&);
};

struct Minus {
  Group group;

  friend bool operator==(const Minus& a, const Minus& b) {
    return a.group == b.group;
  }
};

inline bool operator==(const Group& a, const Group& b) {
  return a.elements == b.elements;
}

enum class SortDirection { Ascending, Descending };

struct OrderKey {
  std::string variable;
  SortDirection direction = SortDirection::Ascending;

  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct QueryAst {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> select_vars;
  Group where;
  std::vector<OrderKey> order_by;

  std::size_t pattern_count() const;        // patterns outside MINUS groups
  std::size_t minus_count() const;          // top-level MINUS blocks
  std::vector<TriplePattern> patterns() const;  // outside MINUS, in order
  const Filter* first_filter() const;

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

inline constexpr const char* kRdfTypeIri =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

}  // namespace skysentry::kg
