// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance          run all criteria
//   acceptance <id>     run one criterion (1..10)
// Exit status is 0 iff every criterion that ran passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shiftlab/beta_shift.hpp"
#include "shiftlab/coded_system.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/factor.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/sgap_shift.hpp"

using namespace shiftlab;
using Float = boost::multiprecision::cpp_bin_float_100;

namespace {

// Tolerances and thresholds, pinned.
constexpr double kDigitsRuntime = 1.0;        // s, criterion 1
constexpr double kCountsRuntime = 5.0;        // s, criterion 2
constexpr double kEntropyResidual = 1e-10;    // criterion 3
constexpr double kRateGap = 0.05;             // criteria 3, 7
constexpr double kLambdaAll = 1e-6;           // criterion 3
constexpr double kMarginII = 0.3;             // criterion 4
constexpr double kDensity = 0.9;              // criterion 5
constexpr double kCylinderGap = 0.05;         // criterion 7
constexpr double kMinGapRuntime = 10.0;       // s, criterion 9

const double kPhi = (1 + std::sqrt(5.0)) / 2;
// Golden-mean Parry measure: mu[w] phi^n = phi v_{w_1} v_{w_n} / (phi^2 + 1), v = (phi, 1).
// Over G_n (words from v_1 back to v_1, some starting with 1, ending in 0) the minimum is
// phi^2 / (phi^2 + 1); over L_n the maximum is phi^3 / (phi^2 + 1). Both +-10%.
const double kGibbsLower = 0.9 * kPhi * kPhi / (kPhi * kPhi + 1);         // 0.651246...
const double kGibbsUpper = 1.1 * kPhi * kPhi * kPhi / (kPhi * kPhi + 1);  // 1.287902...

struct Line {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Float beta_value(const std::string& spec) {
  if (spec == "golden") return (1 + boost::multiprecision::sqrt(Float(5))) / 2;
  if (spec == "1.8") return Float(9) / 5;
  return Float(spec);
}

bool golden_word(WordView w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == 1 && w[i + 1] == 1) return false;
  for (Symbol s : w)
    if (s > 1) return false;
  return true;
}

double parry_golden(WordView w) {
  if (w.empty()) return 1;
  if (!golden_word(w)) return 0;
  auto v = [](Symbol s) { return s == 0 ? kPhi : 1.0; };
  return kPhi * v(w.front()) * v(w.back()) / (kPhi * kPhi + 1) / std::pow(kPhi, static_cast<double>(w.size()));
}

std::vector<Word> all_words(std::size_t n, int p = 2) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (int s = 0; s < p; ++s) {
        Word x = w;
        x.push_back(static_cast<Symbol>(s));
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

Line criterion_1() {
  Line line;
  const std::size_t n = 64;
  const auto t0 = std::chrono::steady_clock::now();
  for (const std::string spec : {"2", "golden", "1.8"}) {
    const BetaShift shift = BetaShift::parse(spec, n);
    const auto& w = shift.digits();
    const Float beta = beta_value(spec);
    Float sum = 0, power = 1;
    for (std::size_t j = 0; j < n; ++j) {
      power /= beta;
      sum += Float(w[j]) * power;
    }
    const Float lower = 1 - 2 * power;
    line.require(w.size() == n, spec + ": digit count");
    line.require(sum >= lower && sum <= 1, spec + ": sum outside [1 - 2 beta^-N, 1]");
    bool dominated = true;
    for (std::size_t k = 1; k < n; ++k)
      if (!lex_leq(WordView(w).subspan(k), WordView(w).first(n - k))) dominated = false;
    line.require(dominated, spec + ": shift dominance");
    line.detail << " " << spec << ":1-sum=" << static_cast<double>(1 - sum);
  }
  const double elapsed = seconds_since(t0);
  line.require(elapsed < kDigitsRuntime, "runtime");
  line.detail << " runtime=" << elapsed << "s";
  return line;
}

Line criterion_2() {
  Line line;
  const auto t0 = std::chrono::steady_clock::now();
  const LanguageOracle golden = BetaShift::parse("golden", 64).language();
  const auto dp = count_dp_series(golden, 25);
  Count a = 1, b = 2;  // F_2, F_3
  bool fib = true;
  for (std::size_t n = 1; n <= 25; ++n) {
    if (dp[n - 1] != b) fib = false;
    const Count c = a + b;
    a = b;
    b = c;
  }
  line.require(fib, "#L_n = F_{n+2}, n <= 25");
  bool brute = true;
  for (std::size_t n = 1; n <= 12; ++n) {
    std::size_t count = 0;
    for (const Word& w : all_words(n))
      if (golden_word(w)) ++count;
    if (Count(count) != dp[n - 1] || enumerate(golden, n).size() != count) brute = false;
  }
  line.require(brute, "DP, enumeration and brute force agree for n <= 12");
  const double elapsed = seconds_since(t0);
  line.require(elapsed < kCountsRuntime, "runtime");
  line.detail << " #L_25=" << dp[24] << " runtime=" << elapsed << "s";
  return line;
}

Line criterion_3() {
  Line line;
  const SGapShift s12(GapSet::finite({1, 2}));
  const SGapEntropy e = s12.entropy();
  const double lam = e.lambda;
  const double residual = std::abs(1 - (std::pow(lam, -2) + std::pow(lam, -3)));
  line.require(residual < kEntropyResidual, "S={1,2} residual");
  const double rate30 = log_count(count_dp(s12.language(), 30)) / 30;
  line.require(std::abs(rate30 - std::log(lam)) < kRateGap, "S={1,2} rate at n = 30");

  std::vector<std::size_t> upto64;
  for (std::size_t i = 0; i <= 64; ++i) upto64.push_back(i);
  const double lam_trunc = SGapShift(GapSet::finite(upto64)).entropy().lambda;
  const double lam_rule = SGapShift(GapSet::rule("all", 64)).entropy().lambda;
  line.require(std::abs(lam_trunc - 2) < kLambdaAll, "S = {0..64}: lambda");
  line.require(std::abs(lam_rule - 2) < kLambdaAll, "S = N (rule, cap 64): lambda");
  char buf[256];
  std::snprintf(buf, sizeof buf, " lambda{1,2}=%.12g residual=%.3g rate30=%.6f |lambda{0..64}-2|=%.3g |lambda(N)-2|=%.3g",
                lam, residual, rate30, std::abs(lam_trunc - 2), std::abs(lam_rule - 2));
  line.detail << buf;
  return line;
}

Line criterion_4() {
  Line line;
  const BetaShift golden = BetaShift::parse("golden", 64);
  const SGapShift s12(GapSet::finite({1, 2}));
  struct Flagship {
    std::string name;
    LanguageOracle language;
    Decomposition d;
  };
  const std::vector<Flagship> systems{{"golden", golden.language(), golden.decomposition()},
                                      {"S={1,2}", s12.language(), s12.decomposition()}};
  for (const auto& sys : systems) {
    SpecificationConfig sc;
    sc.gap = 0;
    sc.tuple_size = 3;
    sc.max_length = 6;
    const auto spec = check_specification(sys.d, sys.language, sc);
    line.require(spec.passed, sys.name + ": specification");
    line.require(!parse_cover_gap(sys.d, sys.language, 12).has_value(), sys.name + ": parse cover to 12");
    const auto iii = check_condition_III(sys.d, sys.language, 3, 8, 10);
    line.require(iii.tau.has_value(), sys.name + ": condition III tau at M = 3");
    const auto ii = check_condition_II(sys.d, sys.language, 25, 15);
    line.require(ii.min_window_margin >= kMarginII, sys.name + ": condition II margin");
    line.detail << " " << sys.name << ":tuples=" << spec.tuples_checked
                << ",tau=" << (iii.tau ? std::to_string(*iii.tau) : "none")
                << ",margin=" << ii.min_window_margin;
  }
  return line;
}

Line criterion_5() {
  Line line;
  const BetaShift golden = BetaShift::parse("golden", 64);
  const SGapShift s12(GapSet::finite({1, 2}));
  struct Flagship {
    std::string name;
    LanguageOracle language;
    Decomposition d;
    double h;
  };
  const std::vector<Flagship> systems{
      {"golden", golden.language(), golden.decomposition(), std::log(kPhi)},
      {"S={1,2}", s12.language(), s12.decomposition(), s12.entropy().log_lambda}};
  for (const auto& sys : systems) {
    bool bound = true;
    double worst = 0;
    for (std::size_t n = 1; n <= 25; ++n) {
      const auto g = filter_layer(sys.language, n, sys.d.core).size();
      const double ratio = static_cast<double>(g) / std::exp(static_cast<double>(n) * sys.h);
      worst = std::max(worst, ratio);
      if (ratio > 1) bound = false;
    }
    line.require(bound, sys.name + ": #G_n <= e^{n h}");

    std::optional<std::size_t> good_m;
    double density_at_m = 0;
    for (std::size_t m = 0; m <= 6 && !good_m; ++m) {
      double least = 1;
      for (std::size_t n = 1; n <= 20; ++n) {
        const auto layer = enumerate(sys.language, n);
        std::size_t inside = 0;
        for (const Word& w : layer)
          if (in_g_of_m(sys.d, w, m)) ++inside;
        least = std::min(least, static_cast<double>(inside) / static_cast<double>(layer.size()));
      }
      if (least >= kDensity) {
        good_m = m;
        density_at_m = least;
      }
    }
    line.require(good_m.has_value(), sys.name + ": density >= 0.9 for some M <= 6");
    line.detail << " " << sys.name << ":max#G_n/e^{nh}=" << worst << ",M="
                << (good_m ? std::to_string(*good_m) : "none") << ",density=" << density_at_m;
  }
  return line;
}

Line criterion_6() {
  Line line;
  const BetaShift golden = BetaShift::parse("golden", 64);
  const auto report = gibbs_report(golden.language(), golden.decomposition(), std::log(kPhi), 8, 24);
  line.require(report.rows.size() == 8, "rows for n = 1..8");
  line.require(report.lower >= kGibbsLower, "min over G_n of mu(w) phi^n >= c*");
  line.require(report.upper <= kGibbsUpper, "max over L_n of mu(w) phi^n <= C*");
  char buf[160];
  std::snprintf(buf, sizeof buf, " lower=%.6f (c*=%.6f) upper=%.6f (C*=%.6f)", report.lower, kGibbsLower,
                report.upper, kGibbsUpper);
  line.detail << buf;
  return line;
}

Line criterion_7() {
  Line line;
  const LanguageOracle golden = BetaShift::parse("golden", 64).language();
  const auto cylinders = enumerate(golden, 3);
  auto deviation = [&](std::size_t n) {
    const auto mu = periodic_measure(periodic_points(golden, n), cylinders);
    double worst = 0;
    for (const Word& w : cylinders) worst = std::max(worst, std::abs(mu.at(w) - parry_golden(w)));
    return worst;
  };
  const double dev8 = deviation(8), dev20 = deviation(20);
  line.require(dev20 <= kCylinderGap, "|mu_per(20) - Parry| <= 0.05 on length-3 cylinders");
  line.require(dev20 <= dev8, "deviation at n = 20 <= deviation at n = 8");

  const PeriodicSet per18 = periodic_points(golden, 18);
  const double rate = std::log(static_cast<double>(per18.total())) / 18;
  const double fixed_rate = std::log(static_cast<double>(per18.fixed_points(18))) / 18;
  line.require(std::abs(rate - std::log(kPhi)) <= kRateGap, "#Per(18) rate within 0.05 of log phi");
  char buf[256];
  std::snprintf(buf, sizeof buf,
                " dev8=%.3g dev20=%.3g #Per(18)=%zu rate=%.5f log(phi)=%.5f |diff|=%.5f (#Fix(sigma^18)=%zu rate=%.5f)",
                dev8, dev20, per18.total(), rate, std::log(kPhi), std::abs(rate - std::log(kPhi)),
                per18.fixed_points(18), fixed_rate);
  line.detail << buf;
  return line;
}

BlockCode swap_code() {
  BlockCode code;
  code.k = 0;
  code.table = {{Word{0}, 1}, {Word{1}, 0}};
  return code;
}

BlockCode edge_code(const LanguageOracle& source) {
  BlockCode code;
  code.k = 1;
  for (const Word& w : enumerate(source, 3))
    code.table[w] = (w[1] == 0 && (w[0] == 1 || w[2] == 1)) ? 1 : 0;
  return code;
}

Line criterion_8() {
  Line line;
  const BetaShift golden = BetaShift::parse("golden", 64);
  const LanguageOracle source = golden.language();
  const Decomposition d = golden.decomposition();
  for (const BlockCode& code : {swap_code(), edge_code(source)}) {
    const std::string tag = "k=" + std::to_string(code.k);
    bool identities = true;
    std::size_t pairs = 0;
    for (const Word& v : enumerate(source, 3))
      for (const Word& w : enumerate(source, 3)) {
        if (!source.contains(concat(v, w))) continue;
        ++pairs;
        if (!homomorphism_check(code, v, w).holds()) identities = false;
      }
    line.require(identities, tag + ": block-code identities for |v| = |w| = 3");

    const FactorSystem factor(source, code);
    const LanguageOracle image = factor.language();
    const Decomposition td = factor.transport(d);
    const std::size_t l2k = enumerate(source, 2 * code.k).size();
    bool bounds = true;
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto cp = filter_layer(image, n, td.prefixes).size();
      const auto cs = filter_layer(image, n, td.suffixes).size();
      const auto src_cp = filter_layer(source, n, d.prefixes).size();
      const auto src_cs = filter_layer(source, n, d.suffixes).size();
      if (cp > l2k * src_cp || cs > l2k * src_cs) bounds = false;
    }
    line.require(bounds, tag + ": #C~_n <= #L_2k #C_n for n <= 10");

    SpecificationConfig sc;
    sc.gap = d.gap + 2 * code.k;
    sc.max_length = 5;
    sc.tuple_size = 3;
    const auto spec = check_specification(td, image, sc);
    line.require(td.gap == sc.gap, tag + ": transported gap is t + 2k");
    line.require(spec.passed, tag + ": transported specification");
    line.detail << " " << tag << ":pairs=" << pairs << ",gap=" << td.gap << ",tuples=" << spec.tuples_checked;
  }
  return line;
}

Line criterion_9() {
  Line line;
  const auto t0 = std::chrono::steady_clock::now();
  const SGapShift shift(GapSet::rule("pow2", 64));
  const LanguageOracle language = shift.language();
  // u = 1 0^i, w = 0^0 1 with i = 2^{n-1} + 1 > 2^{n-1}: the shortest connector is 0^{2^n - i}.
  std::vector<std::size_t> gaps;
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::size_t i = (std::size_t{1} << (n - 1)) + 1;
    Word u{1};
    u.insert(u.end(), i, 0);
    const Word w{1};
    const auto g = min_gap(language, u, w, 16);
    line.require(g.has_value(), "min_gap found for n = " + std::to_string(n));
    gaps.push_back(g ? g->t : 0);
    line.detail << " n=" << n << ":t=" << (g ? std::to_string(g->t) : "none");
  }
  bool increasing = true;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] <= gaps[i - 1]) increasing = false;
  line.require(increasing, "min_gap strictly increasing");
  const double elapsed = seconds_since(t0);
  line.require(elapsed < kMinGapRuntime, "runtime");
  line.detail << " runtime=" << elapsed << "s";
  return line;
}

Line criterion_10() {
  Line line;
  const BetaShift golden = BetaShift::parse("golden", 64);
  const CodedSystem coded(GeneratorSet(golden.generators(12)));
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t n = 0; n <= 10; ++n)
    for (const Word& w : all_words(n)) {
      ++checked;
      if (coded.contains(w) != golden.contains(w)) ++mismatches;
    }
  line.require(mismatches == 0, "coded and direct membership agree");
  line.detail << " words=" << checked << " mismatches=" << mismatches;
  return line;
}

const std::map<int, std::pair<std::string, std::function<Line()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Line()>>> table{
      {1, {"beta digits", criterion_1}},
      {2, {"golden-mean counts", criterion_2}},
      {3, {"S-gap entropy", criterion_3}},
      {4, {"decomposition conditions", criterion_4}},
      {5, {"counting bounds", criterion_5}},
      {6, {"Gibbs evidence", criterion_6}},
      {7, {"periodic-measure convergence", criterion_7}},
      {8, {"factor transport", criterion_8}},
      {9, {"specification-failure witness", criterion_9}},
      {10, {"cross-representation consistency", criterion_10}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (const auto& [id, _] : criteria()) ids.push_back(id);

  bool all = true;
  for (int id : ids) {
    auto it = criteria().find(id);
    if (it == criteria().end()) {
      std::printf("criterion %d: unknown\n", id);
      return 2;
    }
    Line line;
    try {
      line = it->second.second();
    } catch (const std::exception& e) {
      line.pass = false;
      line.detail << " [exception: " << e.what() << "]";
    }
    all = all && line.pass;
    std::printf("criterion %2d %-34s %s%s\n", id, it->second.first.c_str(), line.pass ? "PASS" : "FAIL",
                line.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
