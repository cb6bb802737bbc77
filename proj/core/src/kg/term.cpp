#include "skysentry/kg/term.hpp"

#include <charconv>
#include <cstring>

namespace skysentry::kg {

namespace {

std::string decimal_to_string(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  // keep decimals lexically distinct from integers
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string to_string(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) {
    return "<" + iri->value + ">";
  }
  if (const auto* var = std::get_if<Variable>(&t)) {
    return "?" + var->name;
  }
  const auto& lit = std::get<Literal>(t);
  switch (lit.type()) {
    case Literal::Type::String:
      return "\"" + escape(lit.as_string()) + "\"";
    case Literal::Type::Integer:
      return std::to_string(lit.as_integer());
    case Literal::Type::Decimal:
      return decimal_to_string(lit.as_decimal());
  }
  return {};
}

std::string to_string(const Triple& t) {
  return to_string(Term{t.subject}) + " " + to_string(Term{t.predicate}) + " " +
         to_string(t.object);
}

int compare_terms(const Term& a, const Term& b) {
  auto klass = [](const Term& t) {
    if (std::holds_alternative<Iri>(t)) return 0;
    if (std::holds_alternative<Variable>(t)) return 3;
    return std::get<Literal>(t).is_numeric() ? 1 : 2;
  };
  const int ka = klass(a);
  const int kb = klass(b);
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (ka) {
    case 0: {
      const auto& x = std::get<Iri>(a).value;
      const auto& y = std::get<Iri>(b).value;
      return x < y ? -1 : (x == y ? 0 : 1);
    }
    case 1: {
      const double x = std::get<Literal>(a).numeric_value();
      const double y = std::get<Literal>(b).numeric_value();
      return x < y ? -1 : (x == y ? 0 : 1);
    }
    case 2: {
      const auto& x = std::get<Literal>(a).as_string();
      const auto& y = std::get<Literal>(b).as_string();
      return x < y ? -1 : (x == y ? 0 : 1);
    }
    default: {
      const auto& x = std::get<Variable>(a).name;
      const auto& y = std::get<Variable>(b).name;
      return x < y ? -1 : (x == y ? 0 : 1);
    }
  }
}

std::size_t TermHash::operator()(const Term& t) const {
  std::size_t seed = t.index();
  if (const auto* iri = std::get_if<Iri>(&t)) {
    return combine(seed, std::hash<std::string>{}(iri->value));
  }
  if (const auto* var = std::get_if<Variable>(&t)) {
    return combine(seed, std::hash<std::string>{}(var->name));
  }
  const auto& lit = std::get<Literal>(t);
  seed = combine(seed, static_cast<std::size_t>(lit.type()));
  switch (lit.type()) {
    case Literal::Type::String:
      return combine(seed, std::hash<std::string>{}(lit.as_string()));
    case Literal::Type::Integer:
      return combine(seed, std::hash<std::int64_t>{}(lit.as_integer()));
    case Literal::Type::Decimal:
      return combine(seed, std::hash<double>{}(lit.as_decimal()));
  }
  return seed;
}

std::size_t TripleHash::operator()(const Triple& t) const {
  std::size_t seed = std::hash<std::string>{}(t.subject.value);
  seed = combine(seed, std::hash<std::string>{}(t.predicate.value));
  return combine(seed, TermHash{}(t.object));
}

}  // namespace skysentry::kg
