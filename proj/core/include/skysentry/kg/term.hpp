#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

namespace skysentry::kg {

struct Iri {
  std::string value;  // non-empty

  friend bool operator==(const Iri&, const Iri&) = default;
  friend auto operator<=>(const Iri&, const Iri&) = default;
};

struct Variable {
  std::string name;  // [A-Za-z][A-Za-z0-9_]*

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// Typed literal value. Integer and decimal literals are distinct stored
// values even when numerically equal; FILTER comparison unifies them.
class Literal {
 public:
  enum class Type { String, Integer, Decimal };

  Literal() : value_(std::string{}) {}
  static Literal str(std::string v) { return Literal(std::move(v)); }
  static Literal integer(std::int64_t v) { return Literal(v); }
  static Literal decimal(double v) { return Literal(v); }

  Type type() const { return static_cast<Type>(value_.index()); }
  bool is_numeric() const { return type() != Type::String; }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  double as_decimal() const { return std::get<double>(value_); }
  double numeric_value() const {
    return type() == Type::Integer ? static_cast<double>(as_integer())
                                   : as_decimal();
  }

  friend bool operator==(const Literal&, const Literal&) = default;

 private:
  explicit Literal(std::string v) : value_(std::move(v)) {}
  explicit Literal(std::int64_t v) : value_(v) {}
  explicit Literal(double v) : value_(v) {}

  std::variant<std::string, std::int64_t, double> value_;
};

using Term = std::variant<Iri, Literal, Variable>;

inline bool is_variable(const Term& t) {
  return std::holds_alternative<Variable>(t);
}
inline bool is_concrete(const Term& t) { return !is_variable(t); }

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;  // Iri or Literal, never Variable

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Canonical text form used by the snapshot dump and diagnostics:
// <iri>, "string", 42, 4.25 (decimals always carry a '.' or exponent).
std::string to_string(const Term& t);
std::string to_string(const Triple& t);

// Total order used by ORDER BY: IRIs, then numeric literals, then string
// literals; numerics compare by value, everything else lexicographically.
int compare_terms(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const;
};

}  // namespace skysentry::kg
