#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "skysentry/kg/store.hpp"

namespace skysentry::kg {

namespace {

using Row = std::vector<std::pair<std::string, Term>>;

const Term* find_binding(const Row& row, const std::string& var) {
  for (const auto& [name, term] : row) {
    if (name == var) return &term;
  }
  return nullptr;
}

void collect_pattern_vars(const TriplePattern& p, std::set<std::string>& out) {
  for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
    if (const auto* v = std::get_if<Variable>(t)) out.insert(v->name);
  }
}

std::set<std::string> positive_vars(const Group& group) {
  std::set<std::string> vars;
  for (const auto& el : group.elements) {
    if (const auto* p = std::get_if<TriplePattern>(&el)) {
      collect_pattern_vars(*p, vars);
    }
  }
  return vars;
}

bool compare(const Term& lhs, CompareOp op, const Term& rhs) {
  const auto* ll = std::get_if<Literal>(&lhs);
  const auto* rl = std::get_if<Literal>(&rhs);
  if (!ll || !rl) return false;
  int cmp;
  if (ll->is_numeric() && rl->is_numeric()) {
    const double a = ll->numeric_value();
    const double b = rl->numeric_value();
    cmp = a < b ? -1 : (a == b ? 0 : 1);
  } else if (ll->type() == Literal::Type::String &&
             rl->type() == Literal::Type::String) {
    const auto& a = ll->as_string();
    const auto& b = rl->as_string();
    cmp = a < b ? -1 : (a == b ? 0 : 1);
  } else {
    return false;  // cross-type comparison rejects the row
  }
  switch (op) {
    case CompareOp::Eq: return cmp == 0;
    case CompareOp::Ne: return cmp != 0;
    case CompareOp::Lt: return cmp < 0;
    case CompareOp::Gt: return cmp > 0;
    case CompareOp::Le: return cmp <= 0;
    case CompareOp::Ge: return cmp >= 0;
  }
  return false;
}

}  // namespace

// One query evaluation. Holds the stats that accumulate across the outer
// group and any MINUS sub-evaluations.
class Evaluation {
 public:
  explicit Evaluation(const TripleStore& store) : store_(store) {}

  EvalStats stats;

  std::vector<Row> evaluate_group(const Group& group) {
    std::vector<const TriplePattern*> patterns;
    std::vector<const Filter*> filters;
    std::vector<const Minus*> minuses;
    for (const auto& el : group.elements) {
      if (const auto* p = std::get_if<TriplePattern>(&el)) {
        patterns.push_back(p);
      } else if (const auto* f = std::get_if<Filter>(&el)) {
        filters.push_back(f);
      } else {
        minuses.push_back(&std::get<Minus>(el));
      }
    }

    // Anti-join planning: a MINUS prunes on the variables it shares with the
    // positive patterns. Hoisting the patterns that bind those variables lets
    // the anti-join run as early as possible, so rows that will be removed
    // are never joined against the remaining patterns.
    const std::set<std::string> group_vars = positive_vars_of(patterns);
    std::vector<std::set<std::string>> shared(minuses.size());
    std::set<std::string> hoist_vars;
    for (std::size_t i = 0; i < minuses.size(); ++i) {
      const auto minus_vars = positive_vars(minuses[i]->group);
      std::set_intersection(minus_vars.begin(), minus_vars.end(),
                            group_vars.begin(), group_vars.end(),
                            std::inserter(shared[i], shared[i].begin()));
      hoist_vars.insert(shared[i].begin(), shared[i].end());
    }
    std::stable_partition(patterns.begin(), patterns.end(),
                          [&](const TriplePattern* p) {
                            std::set<std::string> vars;
                            collect_pattern_vars(*p, vars);
                            return std::any_of(vars.begin(), vars.end(),
                                               [&](const std::string& v) {
                                                 return hoist_vars.count(v) > 0;
                                               });
                          });

    std::vector<Row> rows;
    rows.emplace_back();
    std::set<std::string> bound;
    std::vector<bool> minus_applied(minuses.size(), false);

    auto apply_ready_minuses = [&]() {
      for (std::size_t i = 0; i < minuses.size(); ++i) {
        if (minus_applied[i] || shared[i].empty()) continue;
        if (!std::includes(bound.begin(), bound.end(), shared[i].begin(),
                           shared[i].end())) {
          continue;
        }
        minus_applied[i] = true;
        if (rows.empty()) continue;
        anti_join(rows, *minuses[i], shared[i]);
      }
    };

    apply_ready_minuses();
    for (const TriplePattern* pattern : patterns) {
      rows = join_pattern(std::move(rows), *pattern);
      std::set<std::string> vars;
      collect_pattern_vars(*pattern, vars);
      bound.insert(vars.begin(), vars.end());
      apply_ready_minuses();
    }

    for (const Filter* f : filters) {
      std::erase_if(rows, [&](const Row& row) { return !passes(row, *f); });
    }
    return rows;
  }

 private:
  static std::set<std::string> positive_vars_of(
      const std::vector<const TriplePattern*>& patterns) {
    std::set<std::string> vars;
    for (const auto* p : patterns) collect_pattern_vars(*p, vars);
    return vars;
  }

  std::vector<Row> join_pattern(std::vector<Row> rows,
                                const TriplePattern& pattern) {
    std::vector<Row> out;
    for (const Row& row : rows) {
      // substitute already-bound variables
      auto resolve = [&](const Term& t) -> Term {
        if (const auto* v = std::get_if<Variable>(&t)) {
          if (const Term* bound = find_binding(row, v->name)) return *bound;
        }
        return t;
      };
      const Term s = resolve(pattern.subject);
      const Term p = resolve(pattern.predicate);
      const Term o = resolve(pattern.object);

      // index-assisted candidate lookup: smallest list wins
      const std::vector<std::uint32_t>* candidates = nullptr;
      bool impossible = false;
      auto narrow = [&](const std::vector<std::uint32_t>* list) {
        if (!list) {
          impossible = true;
        } else if (!candidates || list->size() < candidates->size()) {
          candidates = list;
        }
      };
      if (const auto* iri = std::get_if<Iri>(&s)) {
        auto it = store_.by_subject_.find(iri->value);
        narrow(it == store_.by_subject_.end() ? nullptr : &it->second);
      } else if (std::holds_alternative<Literal>(s)) {
        impossible = true;  // literal subjects never occur in stored triples
      }
      if (const auto* iri = std::get_if<Iri>(&p)) {
        auto it = store_.by_predicate_.find(iri->value);
        narrow(it == store_.by_predicate_.end() ? nullptr : &it->second);
      } else if (std::holds_alternative<Literal>(p)) {
        impossible = true;
      }
      if (is_concrete(o)) {
        auto it = store_.by_object_.find(o);
        narrow(it == store_.by_object_.end() ? nullptr : &it->second);
      }
      if (impossible) continue;

      auto try_candidate = [&](const Triple& t) {
        ++stats.iterations;
        Row extended = row;
        if (!unify(extended, pattern.subject, Term{t.subject})) return;
        if (!unify(extended, pattern.predicate, Term{t.predicate})) return;
        if (!unify(extended, pattern.object, t.object)) return;
        ++stats.triples_read;
        out.push_back(std::move(extended));
      };
      if (candidates) {
        for (auto idx : *candidates) try_candidate(store_.triples_[idx]);
      } else {
        for (const auto& t : store_.triples_) try_candidate(t);
      }
    }
    return out;
  }

  // Binds or checks one pattern position against a concrete term.
  static bool unify(Row& row, const Term& pattern_term, const Term& value) {
    if (const auto* v = std::get_if<Variable>(&pattern_term)) {
      if (const Term* bound = find_binding(row, v->name)) {
        return *bound == value;
      }
      row.emplace_back(v->name, value);
      return true;
    }
    return pattern_term == value;
  }

  void anti_join(std::vector<Row>& rows, const Minus& minus,
                 const std::set<std::string>& shared) {
    const std::vector<Row> minus_rows = evaluate_group(minus.group);
    if (minus_rows.empty()) return;
    std::unordered_set<std::string> keys;
    keys.reserve(minus_rows.size());
    for (const Row& m : minus_rows) {
      keys.insert(projection_key(m, shared));
    }
    std::erase_if(rows, [&](const Row& row) {
      return keys.count(projection_key(row, shared)) > 0;
    });
  }

  static std::string projection_key(const Row& row,
                                    const std::set<std::string>& shared) {
    std::string key;
    for (const auto& var : shared) {
      const Term* t = find_binding(row, var);
      key += t ? to_string(*t) : "?";
      key += '\x1f';
    }
    return key;
  }

  static bool passes(const Row& row, const Filter& filter) {
    for (const auto& clause : filter.clauses) {
      bool all = true;
      for (const auto& cmp : clause) {
        auto resolve = [&](const Term& t) -> const Term* {
          if (const auto* v = std::get_if<Variable>(&t)) {
            return find_binding(row, v->name);
          }
          return &t;
        };
        const Term* lhs = resolve(cmp.lhs);
        const Term* rhs = resolve(cmp.rhs);
        if (!lhs || !rhs || !compare(*lhs, cmp.op, *rhs)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  const TripleStore& store_;
};

SolutionSet TripleStore::evaluate(const QueryAst& ast) const {
  const auto start = std::chrono::steady_clock::now();
  std::shared_lock lock(mutex_);
  Evaluation eval(*this);
  std::vector<Row> rows = eval.evaluate_group(ast.where);

  // ORDER BY over full bindings, then projection to the select list
  if (!ast.order_by.empty()) {
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
      for (const auto& key : ast.order_by) {
        const Term* ta = find_binding(a, key.variable);
        const Term* tb = find_binding(b, key.variable);
        int cmp = compare_terms(*ta, *tb);
        if (key.direction == SortDirection::Descending) cmp = -cmp;
        if (cmp != 0) return cmp < 0;
      }
      return false;
    });
  }

  SolutionSet result;
  result.variables = ast.select_vars;
  result.rows.reserve(rows.size());
  for (const Row& row : rows) {
    std::vector<Term> projected;
    projected.reserve(ast.select_vars.size());
    for (const auto& var : ast.select_vars) {
      projected.push_back(*find_binding(row, var));
    }
    result.rows.push_back(std::move(projected));
  }
  result.stats = eval.stats;
  result.stats.elapsed = std::chrono::steady_clock::now() - start;
  reads_.fetch_add(result.stats.iterations, std::memory_order_relaxed);
  return result;
}

}  // namespace skysentry::kg
