#include <doctest.h>

#include <sstream>

#include "skysentry/kg/parser.hpp"
#include "skysentry/kg/store.hpp"

using namespace skysentry;
using kg::Iri;
using kg::Literal;
using kg::Term;
using kg::Triple;

namespace {

Triple t(const char* s, const char* p, Term o) {
  return Triple{Iri{s}, Iri{p}, std::move(o)};
}

}  // namespace

TEST_CASE("insert has set semantics but counts every presented triple") {
  kg::TripleStore store;
  const Triple a = t("http://x/s", "http://x/p", Term{Literal::integer(1)});
  CHECK(store.insert({a}) == 1);
  CHECK(store.insert({a}) == 0);
  CHECK(store.size() == 1);
  CHECK(store.writes() == 2);
  CHECK(store.insert(std::vector<Triple>{}) == 0);
  CHECK(store.writes() == 2);
}

TEST_CASE("read and write rates are per-window counter deltas") {
  kg::TripleStore store;
  auto [r0, w0] = store.read_write_rates(5.0);
  CHECK(r0 == 0.0);
  CHECK(w0 == 0.0);

  std::vector<Triple> batch;
  for (int i = 0; i < 50; ++i) {
    batch.push_back(t(("http://x/s" + std::to_string(i)).c_str(), "http://x/p",
                      Term{Literal::integer(i)}));
  }
  store.insert(batch);
  auto [r1, w1] = store.read_write_rates(5.0);
  CHECK(r1 == 0.0);
  CHECK(w1 == doctest::Approx(10.0));  // 50 presented over 5 s

  const auto ast = kg::parse_query("SELECT ?s WHERE { ?s <http://x/p> ?v }");
  store.evaluate(ast);
  auto [r2, w2] = store.read_write_rates(5.0);
  CHECK(r2 > 0.0);
  CHECK(w2 == 0.0);

  CHECK_THROWS(store.read_write_rates(0.0));
}

TEST_CASE("match narrows by any position and counts reads") {
  kg::TripleStore store;
  store.insert({t("http://x/a", "http://x/p", Term{Iri{"http://x/b"}}),
                t("http://x/a", "http://x/q", Term{Literal::str("v")}),
                t("http://x/c", "http://x/p", Term{Iri{"http://x/b"}})});
  const auto reads_before = store.reads();
  const auto by_subject = store.match(Iri{"http://x/a"}, std::nullopt,
                                      std::nullopt);
  CHECK(by_subject.size() == 2);
  CHECK(store.reads() > reads_before);

  const auto by_pair =
      store.match(Iri{"http://x/a"}, Iri{"http://x/q"}, std::nullopt);
  REQUIRE(by_pair.size() == 1);
  CHECK(by_pair[0].object == Term{Literal::str("v")});

  CHECK(store.match(Iri{"http://x/zz"}, std::nullopt, std::nullopt).empty());
}

TEST_CASE("snapshot dump and load round-trip") {
  kg::TripleStore store;
  store.insert({t("http://x/s", "http://x/p", Term{Iri{"http://x/o"}}),
                t("http://x/s", "http://x/q", Term{Literal::str("hi \"there\"")}),
                t("http://x/s", "http://x/r", Term{Literal::integer(-3)}),
                t("http://x/s", "http://x/d", Term{Literal::decimal(4.25)})});
  std::ostringstream dumped;
  store.dump(dumped);

  kg::TripleStore loaded;
  std::istringstream in(dumped.str());
  loaded.load(in);
  CHECK(loaded.size() == store.size());
  CHECK(loaded.contains(
      t("http://x/s", "http://x/q", Term{Literal::str("hi \"there\"")})));
  CHECK(loaded.contains(
      t("http://x/s", "http://x/d", Term{Literal::decimal(4.25)})));

  std::ostringstream redumped;
  loaded.dump(redumped);
  CHECK(redumped.str() == dumped.str());
}

TEST_CASE("evaluate on an empty store returns nothing and scans nothing") {
  kg::TripleStore store;
  const auto ast = kg::parse_query(
      "SELECT ?s WHERE { ?s a <http://x/C> . ?s <http://x/p> ?v }");
  const auto result = store.evaluate(ast);
  CHECK(result.rows.empty());
  CHECK(result.stats.iterations == 0);
  CHECK(result.stats.triples_read == 0);
}
