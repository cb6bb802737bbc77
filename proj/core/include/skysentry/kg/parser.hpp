#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "skysentry/kg/query.hpp"

namespace skysentry::kg {

class QueryParseError : public std::runtime_error {
 public:
  QueryParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("query parse error at " + std::to_string(line) +
                           ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Grammar subset:
//   query  := prefix* 'SELECT' var+ 'WHERE' '{' group '}' order?
//   group  := (triples | filter | minus | '{' group '}')+
//   triples:= term ('a'|iri) term (';' ('a'|iri) term)* '.'?
//   filter := 'FILTER' '(' expr ')'
//   minus  := 'MINUS' '{' group '}'
//   order  := 'ORDER' 'BY' (var | ('ASC'|'DESC') '(' var ')')+
// Keywords are case-insensitive; nested braced groups are flattened into the
// enclosing group; 'a' expands to the rdf:type predicate; prefixed names are
// resolved to absolute IRIs at parse time.
QueryAst parse_query(std::string_view text);

// Canonical text form; parse_query(pretty_print(ast)) == ast.
std::string pretty_print(const QueryAst& ast);

}  // namespace skysentry::kg
