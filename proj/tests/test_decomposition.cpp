#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftlab/beta_shift.hpp"
#include "shiftlab/coded_system.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/sgap_shift.hpp"
#include "shiftlab/systems.hpp"

using namespace shiftlab;
using oracle::w;

namespace {

struct Flagship {
  std::string name;
  LanguageOracle language;
  Decomposition d;
  double h;
};

std::vector<Flagship> flagships() {
  const auto golden = BetaShift::parse("golden", 64);
  const SGapShift s12(GapSet::finite({1, 2}));
  return {{"golden", golden.language(), golden.decomposition(), std::log(oracle::phi)},
          {"S={1,2}", s12.language(), s12.decomposition(), s12.entropy().log_lambda}};
}

Decomposition from_sets(std::vector<Word> g) {
  Decomposition d;
  d.name = "explicit";
  d.prefixes = [](WordView x) { return x.empty(); };
  d.suffixes = [](WordView x) { return x.empty(); };
  d.core = [g](WordView x) {
    if (x.empty()) return true;
    for (const Word& y : g)
      if (std::equal(y.begin(), y.end(), x.begin(), x.end())) return true;
    return false;
  };
  return d;
}

/// Brute-force parses: every split with each piece checked by the oracles.
std::size_t brute_parse_count(const Decomposition& d, WordView x) {
  std::size_t count = 0;
  for (std::size_t i = 0; i <= x.size(); ++i)
    for (std::size_t j = i; j <= x.size(); ++j)
      if (d.prefixes(x.first(i)) && d.core(x.subspan(i, j - i)) && d.suffixes(x.subspan(j))) ++count;
  return count;
}

}  // namespace

TEST_CASE("parse examples") {
  const auto golden = BetaShift::parse("golden", 32).decomposition();
  const auto p = parse(golden, w("1000"));
  CHECK(std::find(p.begin(), p.end(), Parse{Word{}, w("1000"), Word{}}) != p.end());
  CHECK(std::find(p.begin(), p.end(), Parse{Word{}, w("100"), w("0")}) == p.end());  // 0 is not a prefix of w(beta)
  CHECK(std::find(p.begin(), p.end(), Parse{Word{}, w("00"), Word{}}) == p.end());
  for (const Parse& q : p) CHECK(concat(concat(q.prefix, q.core), q.suffix) == w("1000"));
  CHECK(parse(golden, Word{}) == std::vector<Parse>{Parse{}});

  const auto s2 = SGapShift(GapSet::finite({2})).decomposition();
  CHECK(parse(s2, w("01")) == std::vector<Parse>{Parse{w("01"), Word{}, Word{}}});
}

TEST_CASE("parse returns exactly the valid splits") {
  for (const auto& f : flagships())
    for (std::size_t n = 0; n <= 9; ++n)
      for (const Word& x : enumerate(f.language, n)) {
        const auto ps = parse(f.d, x);
        CHECK(ps.size() == brute_parse_count(f.d, x));
        for (const Parse& q : ps) {
          CHECK(f.d.prefixes(q.prefix));
          CHECK(f.d.core(q.core));
          CHECK(f.d.suffixes(q.suffix));
          CHECK(concat(concat(q.prefix, q.core), q.suffix) == x);
        }
      }
}

TEST_CASE("check_specification examples") {
  const auto golden = BetaShift::parse("golden", 64);
  SpecificationConfig sc;
  sc.gap = 0;
  sc.tuple_size = 3;
  sc.max_length = 6;
  const auto r = check_specification(golden.decomposition(), golden.language(), sc);
  CHECK(r.passed);
  CHECK(r.tuples_checked > 0);
  CHECK(r.counterexample.empty());

  const auto full = make_system("full:2");
  CHECK(check_specification(*full.decomposition, full.language, sc).passed);

  const auto bad = check_specification(from_sets({w("1"), w("10")}), golden.language(), sc);
  CHECK_FALSE(bad.passed);
  CHECK(bad.counterexample == std::vector<Word>{w("1"), w("1")});
}

TEST_CASE("specification modes") {
  const auto golden = BetaShift::parse("golden", 64);
  SpecificationConfig sc;
  sc.max_length = 5;
  sc.tuple_size = 2;
  sc.mode = SpecMode::periodic;
  CHECK(check_specification(golden.decomposition(), golden.language(), sc).passed);

  // G = {1}: needs a connector of length >= 1
  const auto ones = from_sets({w("1")});
  sc.mode = SpecMode::strict;
  sc.gap = 0;
  CHECK_FALSE(check_specification(ones, golden.language(), sc).passed);
  sc.gap = 1;
  CHECK(check_specification(ones, golden.language(), sc).passed);
  sc.gap = 2;
  CHECK(check_specification(ones, golden.language(), sc).passed);
  sc.mode = SpecMode::weak;
  sc.gap = 1;
  CHECK(check_specification(ones, golden.language(), sc).passed);

  // periodic: 1 0 repeated is a point; with gap 0 the periodic variant fails on (1)
  sc.mode = SpecMode::periodic;
  sc.gap = 0;
  CHECK_FALSE(check_specification(ones, golden.language(), sc).passed);
  sc.gap = 1;
  CHECK(check_specification(ones, golden.language(), sc).passed);

  CHECK(to_string(SpecMode::strict) == "S");
  CHECK(to_string(SpecMode::periodic) == "Per");
  CHECK(to_string(SpecMode::weak) == "W");
}

TEST_CASE("specification tuple budget is reported") {
  const auto full = make_system("full:2");
  SpecificationConfig sc;
  sc.max_length = 6;
  sc.tuple_size = 3;
  sc.max_tuples = 1000;
  const auto r = check_specification(*full.decomposition, full.language, sc);
  CHECK(r.budget_exceeded);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("check_condition_II examples") {
  for (const auto& f : flagships()) {
    const auto r = check_condition_II(f.d, f.language, 25, 15);
    CHECK(r.verdict == "evidence");
    CHECK(r.min_window_margin >= 0.3);
    // #(C^p u C^s)_n <= 2 for these systems
    for (const auto& c : r.boundary_counts) CHECK(c <= 2);
    CHECK(std::abs(r.margins.back() - f.h) < 0.1);
  }
  const auto golden = BetaShift::parse("golden", 64);
  auto degenerate = golden.decomposition();
  const auto lang = golden.language();
  degenerate.prefixes = [lang](WordView x) { return lang.contains(x); };
  const auto r = check_condition_II(degenerate, lang, 20);
  CHECK(r.verdict == "inconclusive");
  CHECK(std::abs(r.min_window_margin) < 1e-12);
}

TEST_CASE("check_condition_III examples") {
  const auto golden = BetaShift::parse("golden", 64);
  const auto r = check_condition_III(golden.decomposition(), golden.language(), 2, 6, 10);
  REQUIRE(r.tau.has_value());
  CHECK(*r.tau <= 2);
  CHECK(r.family_tau == std::size_t{2});

  const CodedSystem coded(GeneratorSet::parse("0,100"));
  const auto rc = check_condition_III(coded.decomposition(), coded.language(), 3, 8, 8);
  REQUIRE(rc.tau.has_value());
  CHECK(*rc.tau <= coded.tau(3).tau());
  CHECK(coded.tau(3).tau() <= 6);

  for (const auto& f : flagships()) {
    const auto r0 = check_condition_III(f.d, f.language, 0, 4, 10);
    REQUIRE(r0.tau.has_value());
    CHECK(*r0.tau == 0);
  }
}

TEST_CASE("condition III reports failure within tau_max") {
  // G = {empty, 0}: 1 never extends into G
  Decomposition d = from_sets({w("0"), w("00"), w("000")});
  d.suffixes = [](WordView x) { return x.size() <= 1; };
  const auto r = check_condition_III(d, full_shift(2), 1, 2, 3);
  CHECK_FALSE(r.tau.has_value());
  CHECK(r.failure.has_value());
}

TEST_CASE("dichotomy_diagnostic examples") {
  const auto golden = BetaShift::parse("golden", 64);
  const auto r = dichotomy_diagnostic(golden.language(), golden.decomposition(), 12);
  CHECK(r.verdict == Dichotomy::positive_entropy);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first == w("0"));
  CHECK(r.witness->second == w("100"));
  CHECK(to_string(r.verdict) == "positive-entropy-evidence");

  const auto orbit = make_system("orbit:01");
  const auto ro = dichotomy_diagnostic(orbit.language, *orbit.decomposition, 12);
  CHECK(ro.verdict == Dichotomy::single_periodic_orbit);
  REQUIRE(ro.orbit.has_value());
  CHECK(ro.orbit->size() == 2);

  const SGapShift s0(GapSet::finite({0}));
  const auto r0 = dichotomy_diagnostic(s0.language(), s0.decomposition(), 12);
  CHECK(r0.verdict == Dichotomy::single_periodic_orbit);
  CHECK(r0.orbit == w("1"));
}

TEST_CASE("parse cover on the built-ins up to length 12") {
  for (const std::string spec :
       {"beta:golden", "beta:1.8", "beta:3/2", "sgap:1,2", "sgap:1,3", "sgap:1,2:display", "sgap:pow2:32",
        "coded-words:0,100", "coded-words:01,001", "full:2", "orbit:001"}) {
    INFO(spec);
    const auto s = make_system(spec);
    REQUIRE(s.decomposition.has_value());
    CHECK_FALSE(parse_cover_gap(*s.decomposition, s.language, 12).has_value());
  }
}

TEST_CASE("parse_cover_gap finds uncovered words") {
  const auto golden = BetaShift::parse("golden", 64);
  const auto d = from_sets({w("0")});
  const auto gap = parse_cover_gap(d, golden.language(), 3);
  REQUIRE(gap.has_value());
  CHECK(*gap == w("1"));
}

TEST_CASE("G(M) is monotone in M and exhausts L") {
  for (const auto& f : flagships())
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto layer = enumerate(f.language, n);
      std::size_t previous = 0;
      for (std::size_t m = 0; m <= n; ++m) {
        std::size_t count = 0;
        for (const Word& x : layer) {
          const bool in = in_g_of_m(f.d, x, m);
          if (m > 0 && in_g_of_m(f.d, x, m - 1)) CHECK(in);
          if (in) ++count;
        }
        CHECK(count >= previous);
        previous = count;
      }
      CHECK(previous == layer.size());
    }
}

TEST_CASE("density of G(M)") {
  for (const auto& f : flagships())
    for (const double delta : {0.5, 0.1}) {
      INFO(f.name << " delta=" << delta);
      bool found = false;
      for (std::size_t m = 0; m <= 8 && !found; ++m) {
        bool all = true;
        for (std::size_t n = 1; n <= 20 && all; ++n) {
          const auto layer = enumerate(f.language, n);
          std::size_t in = 0;
          for (const Word& x : layer)
            if (in_g_of_m(f.d, x, m)) ++in;
          all = static_cast<double>(in) >= (1 - delta) * static_cast<double>(layer.size());
        }
        found = all;
      }
      CHECK(found);
    }
}

TEST_CASE("#G_n <= e^{(n+t) h}") {
  for (const auto& f : flagships())
    for (std::size_t n = 1; n <= 25; ++n) {
      const auto g = filter_layer(f.language, n, f.d.core).size();
      CHECK(std::log(static_cast<double>(g)) <= static_cast<double>(n + f.d.gap) * f.h + 1e-12);
    }
}

TEST_CASE("filter_layer") {
  const auto golden = BetaShift::parse("golden", 32);
  const auto g3 = filter_layer(golden.language(), 3, golden.decomposition().core);
  CHECK(g3 == std::vector<Word>{w("000"), w("100")});
}
