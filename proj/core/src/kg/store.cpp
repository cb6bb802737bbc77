#include "skysentry/kg/store.hpp"

#include <charconv>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace skysentry::kg {

std::size_t TripleStore::insert(std::span<const Triple> batch) {
  std::unique_lock lock(mutex_);
  std::size_t inserted = 0;
  for (const Triple& t : batch) {
    if (!present_.count(t)) {
      insert_locked(t);
      ++inserted;
    }
  }
  writes_.fetch_add(batch.size(), std::memory_order_relaxed);
  return inserted;
}

void TripleStore::insert_locked(const Triple& t) {
  const auto idx = static_cast<std::uint32_t>(triples_.size());
  triples_.push_back(t);
  present_.insert(t);
  by_subject_[t.subject.value].push_back(idx);
  by_predicate_[t.predicate.value].push_back(idx);
  by_object_[t.object].push_back(idx);
}

std::size_t TripleStore::size() const {
  std::shared_lock lock(mutex_);
  return triples_.size();
}

bool TripleStore::contains(const Triple& t) const {
  std::shared_lock lock(mutex_);
  return present_.count(t) > 0;
}

std::vector<Triple> TripleStore::match(const std::optional<Iri>& subject,
                                       const std::optional<Iri>& predicate,
                                       const std::optional<Term>& object) const {
  std::shared_lock lock(mutex_);
  const std::vector<std::uint32_t>* candidates = nullptr;
  auto pick = [&](const std::vector<std::uint32_t>& v) {
    if (!candidates || v.size() < candidates->size()) candidates = &v;
  };
  if (subject) {
    auto it = by_subject_.find(subject->value);
    if (it == by_subject_.end()) return {};
    pick(it->second);
  }
  if (predicate) {
    auto it = by_predicate_.find(predicate->value);
    if (it == by_predicate_.end()) return {};
    pick(it->second);
  }
  if (object) {
    auto it = by_object_.find(*object);
    if (it == by_object_.end()) return {};
    pick(it->second);
  }
  std::vector<Triple> out;
  std::uint64_t examined = 0;
  auto consider = [&](const Triple& t) {
    ++examined;
    if (subject && !(t.subject == *subject)) return;
    if (predicate && !(t.predicate == *predicate)) return;
    if (object && !(t.object == *object)) return;
    out.push_back(t);
  };
  if (candidates) {
    for (auto idx : *candidates) consider(triples_[idx]);
  } else {
    for (const auto& t : triples_) consider(t);
  }
  reads_.fetch_add(examined, std::memory_order_relaxed);
  return out;
}

std::pair<double, double> TripleStore::read_write_rates(double window_s) {
  if (window_s <= 0.0) {
    throw std::invalid_argument("read_write_rates: window must be positive");
  }
  std::unique_lock lock(mutex_);
  const std::uint64_t r = reads_.load();
  const std::uint64_t w = writes_.load();
  const auto dr = static_cast<double>(r - reads_mark_);
  const auto dw = static_cast<double>(w - writes_mark_);
  reads_mark_ = r;
  writes_mark_ = w;
  return {dr / window_s, dw / window_s};
}

void TripleStore::dump(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  for (const auto& t : triples_) {
    out << to_string(t) << '\n';
  }
}

namespace {

// Parses one dumped term: <iri>, "string", integer or decimal.
Term parse_dumped_term(const std::string& line, std::size_t& pos,
                       std::size_t line_no) {
  auto fail = [&](const std::string& msg) -> Term {
    throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": " +
                             msg);
  };
  while (pos < line.size() && line[pos] == ' ') ++pos;
  if (pos >= line.size()) return fail("missing term");
  if (line[pos] == '<') {
    auto end = line.find('>', pos);
    if (end == std::string::npos) return fail("unterminated IRI");
    Term t = Iri{line.substr(pos + 1, end - pos - 1)};
    pos = end + 1;
    return t;
  }
  if (line[pos] == '"') {
    std::string s;
    ++pos;
    while (pos < line.size() && line[pos] != '"') {
      if (line[pos] == '\\' && pos + 1 < line.size()) {
        ++pos;
        switch (line[pos]) {
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          case '"': s += '"'; break;
          case '\\': s += '\\'; break;
          default: return fail("bad escape");
        }
      } else {
        s += line[pos];
      }
      ++pos;
    }
    if (pos >= line.size()) return fail("unterminated string");
    ++pos;
    return Literal::str(std::move(s));
  }
  auto end = line.find(' ', pos);
  if (end == std::string::npos) end = line.size();
  std::string num = line.substr(pos, end - pos);
  pos = end;
  if (num.find('.') != std::string::npos ||
      num.find('e') != std::string::npos ||
      num.find('E') != std::string::npos) {
    double v = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc{} || p != num.data() + num.size()) {
      return fail("bad decimal");
    }
    return Literal::decimal(v);
  }
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc{} || p != num.data() + num.size()) {
    return fail("bad integer");
  }
  return Literal::integer(v);
}

}  // namespace

void TripleStore::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Triple> batch;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t pos = 0;
    Term s = parse_dumped_term(line, pos, line_no);
    Term p = parse_dumped_term(line, pos, line_no);
    Term o = parse_dumped_term(line, pos, line_no);
    const auto* si = std::get_if<Iri>(&s);
    const auto* pi = std::get_if<Iri>(&p);
    if (!si || !pi) {
      throw std::runtime_error("snapshot line " + std::to_string(line_no) +
                               ": subject and predicate must be IRIs");
    }
    batch.push_back(Triple{*si, *pi, std::move(o)});
  }
  insert(batch);
}

}  // namespace skysentry::kg
