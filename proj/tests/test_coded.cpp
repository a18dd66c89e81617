#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "shiftlab/beta_shift.hpp"
#include "shiftlab/coded_system.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/sgap_shift.hpp"

using namespace shiftlab;
using oracle::w;

namespace {

/// Brute-force coded membership: w is a subword of some concatenation of generators.
bool brute_contains(const std::vector<Word>& gens, WordView x) {
  if (x.empty()) return true;
  std::size_t longest = 0;
  for (const Word& g : gens) longest = std::max(longest, g.size());
  // concatenations up to |x| + 2 * longest cover every placement
  const std::size_t limit = x.size() + 2 * longest;
  std::vector<Word> frontier{Word{}};
  std::set<Word> seen;
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& c : frontier)
      for (const Word& g : gens) {
        Word y = concat(c, g);
        if (y.size() > limit || !seen.insert(y).second) continue;
        if (std::search(y.begin(), y.end(), x.begin(), x.end()) != y.end()) return true;
        next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return false;
}

bool brute_core(const std::vector<Word>& gens, WordView x) {
  std::vector<bool> ok(x.size() + 1, false);
  ok[0] = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!ok[i]) continue;
    for (const Word& g : gens)
      if (i + g.size() <= x.size() && std::equal(g.begin(), g.end(), x.begin() + static_cast<std::ptrdiff_t>(i)))
        ok[i + g.size()] = true;
  }
  return ok[x.size()];
}

}  // namespace

TEST_CASE("coded_contains examples") {
  const CodedSystem c(GeneratorSet::parse("0,100"));
  CHECK(c.contains(w("0100")));
  CHECK_FALSE(c.contains(w("11")));
  const CodedSystem ab(GeneratorSet::parse("01"));
  CHECK(ab.contains(w("10")));
  CHECK_FALSE(ab.contains(w("00")));
}

TEST_CASE("coded membership against brute force") {
  for (const std::string list : {"0,100", "01,001", "011,0", "0,1", "10,0110,111", "2,01,120"}) {
    INFO(list);
    const GeneratorSet gens = GeneratorSet::parse(list);
    const CodedSystem c(gens);
    const auto a = c.automaton();
    const int p = gens.alphabet_size();
    for (std::size_t n = 0; n <= (p > 2 ? 6u : 9u); ++n)
      for (const Word& x : oracle::all_words(n, p)) {
        const bool expected = brute_contains(gens.words(), x);
        CHECK(c.contains(x) == expected);
        CHECK(a.accepts(x) == expected);
        CHECK(c.in_core(x) == brute_core(gens.words(), x));
      }
  }
}

TEST_CASE("coded_cn examples") {
  const CodedSystem golden(GeneratorSet::parse("0,100"));
  CHECK(golden.cn(1) == 2);
  const CodedSystem s12(GeneratorSet::parse("01,001"));
  for (std::size_t n = 1; n <= 10; ++n) CHECK(s12.cn(n) <= 2);
  CHECK(CodedSystem(GeneratorSet::parse("01")).cn(1) == 2);
  CHECK(CodedSystem(GeneratorSet::parse("01")).cn(3) == 0);
}

TEST_CASE("coded_decomposition examples") {
  const CodedSystem c(GeneratorSet::parse("0,100"));
  const auto d = c.decomposition();
  CHECK(d.core(w("1000")));
  CHECK_FALSE(d.core(w("10")));
  CHECK(d.suffixes(w("10")));
  CHECK(d.prefixes(w("00")));
  CHECK(d.core(w("00")));
  CHECK(d.prefixes(Word{}));
  CHECK(d.core(Word{}));
  CHECK(d.suffixes(Word{}));
  CHECK(d.gap == 0);
  CHECK(d.periodic_spec);
}

TEST_CASE("tau table") {
  const CodedSystem c(GeneratorSet::parse("0,100"));
  const auto t = c.tau(3);
  CHECK(t.tau() <= 6);
  CHECK(t.tau_prefix <= 3);
  CHECK(t.tau_suffix <= 3);
  CHECK(c.tau(0).tau() == 0);
}

TEST_CASE("theoremB_report verdicts") {
  const auto golden = BetaShift::parse("golden", 40);
  auto gens = GeneratorSet(golden.generators(30));
  gens.with_truncation(30);
  const auto r = CodedSystem(gens).theorem_b_report(20);
  CHECK(r.verdict == "evidence-for-case-2");
  CHECK(r.lower_bound);
  CHECK(r.truncation == 30);
  for (auto c : r.cn) CHECK(c <= 2);
  CHECK(CodedSystem(GeneratorSet::parse("01,001")).theorem_b_report(20).verdict == "evidence-for-case-2");
  const auto full = CodedSystem(GeneratorSet::parse("00,01,10,11")).theorem_b_report(20);
  CHECK(full.verdict == "evidence-for-case-2");
  CHECK(full.language_counts.back() == Count(1) << 20);
}

TEST_CASE("coded view agrees with the direct shifts") {
  const auto golden = BetaShift::parse("golden", 40);
  const CodedSystem cg(GeneratorSet(golden.generators(12)));
  for (std::size_t n = 0; n <= 10; ++n)
    for (const Word& x : oracle::all_words(n)) CHECK(cg.contains(x) == golden.contains(x));

  const SGapShift s12(GapSet::finite({1, 2}));
  const CodedSystem cs(GeneratorSet::parse("01,001"));
  for (std::size_t n = 0; n <= 12; ++n)
    for (const Word& x : oracle::all_words(n)) CHECK(cs.contains(x) == s12.contains(x));

  // a truncated generator list under-approximates, with equality on short words
  const auto b18 = BetaShift::parse("1.8", 40);
  const CodedSystem c18(GeneratorSet(b18.generators(8)));
  for (std::size_t n = 0; n <= 10; ++n)
    for (const Word& x : oracle::all_words(n)) {
      if (c18.contains(x)) CHECK(b18.contains(x));
      if (n <= 7) CHECK(c18.contains(x) == b18.contains(x));
    }
}

TEST_CASE("G concatenates freely") {
  const CodedSystem c(GeneratorSet::parse("0,100,1010"));
  std::vector<Word> g;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const Word& x : oracle::all_words(n))
      if (c.in_core(x)) g.push_back(x);
  for (const Word& a : g)
    for (const Word& b : g) CHECK(c.in_core(concat(a, b)));
}

TEST_CASE("parse witnesses round trip") {
  for (const std::string list : {"0,100", "011,0", "10,0110,111"}) {
    const GeneratorSet gens = GeneratorSet::parse(list);
    const std::set<Word> gset(gens.words().begin(), gens.words().end());
    const CodedSystem c(gens);
    for (std::size_t n = 1; n <= 8; ++n)
      for (const Word& x : oracle::all_words(n)) {
        const auto table = c.parse_table(x);
        CHECK(table.accepted() == c.contains(x));
        if (!table.accepted()) continue;
        const auto wit = table.witness();
        REQUIRE(wit.has_value());
        Word rebuilt = wit->head;
        for (const Word& m : wit->middle) {
          CHECK(gset.count(m) == 1);
          rebuilt = concat(rebuilt, m);
        }
        rebuilt = concat(rebuilt, wit->tail);
        CHECK(rebuilt == x);
        if (wit->inner) {
          bool inside = false;
          for (const Word& g : gens.words())
            if (std::search(g.begin(), g.end(), x.begin(), x.end()) != g.end()) inside = true;
          CHECK(inside);
        } else {
          bool head_ok = wit->head.empty(), tail_ok = wit->tail.empty();
          for (const Word& g : gens.words()) {
            if (wit->head.size() <= g.size() && suffix(g, wit->head.size()) == wit->head) head_ok = true;
            if (wit->tail.size() <= g.size() && prefix(g, wit->tail.size()) == wit->tail) tail_ok = true;
          }
          CHECK(head_ok);
          CHECK(tail_ok);
        }
        if (c.in_core(x)) {
          const auto core = c.parse_table(x, true).witness(true);
          REQUIRE(core.has_value());
          CHECK(core->head.empty());
          CHECK(core->tail.empty());
        }
      }
  }
}

TEST_CASE("generator sets") {
  const auto g = GeneratorSet::parse("100,0,100");
  CHECK(g.words() == std::vector<Word>{w("0"), w("100")});
  CHECK(g.max_length() == 3);
  CHECK(g.alphabet_size() == 2);
  CHECK(GeneratorSet::parse("0,2").alphabet_size() == 3);
  CHECK_THROWS_AS(GeneratorSet::parse("0,,1"), ConfigError);
  CHECK_THROWS_AS(GeneratorSet(std::vector<Word>{}), ConfigError);

  const auto file = std::filesystem::temp_directory_path() / "shiftlab-generators.txt";
  {
    std::ofstream out(file);
    out << "# golden mean loops\n0\n\n100\n10100\n";
  }
  const auto from_file = GeneratorSet::from_file(file);
  CHECK(from_file.words() == std::vector<Word>{w("0"), w("100"), w("10100")});
  std::filesystem::remove(file);
  CHECK_THROWS_AS(GeneratorSet::from_file("/nonexistent/generators.txt"), ConfigError);
}

TEST_CASE("periodic orbit language") {
  const auto orbit = periodic_orbit_language(w("0101"));
  for (std::size_t n = 1; n <= 10; ++n) CHECK(count_dp(orbit, n) == 2);
  CHECK(orbit.contains(w("01010")));
  CHECK_FALSE(orbit.contains(w("00")));
  const auto three = periodic_orbit_language(w("001"));
  for (std::size_t n = 3; n <= 10; ++n) CHECK(count_dp(three, n) == 3);
}
