#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "forge/forge.hpp"

using namespace forge;

namespace {

using Clock = std::chrono::steady_clock;

std::string data(const std::string& name) { return std::string(FORGE_DATA_DIR) + "/" + name; }

Ring P(int n, std::uint32_t p = 32003) { return Ring::projective(p, n); }

Ideal ideal(const Ring& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto* s : gens) g.push_back(parse_polynomial(R, s));
  return Ideal(R, std::move(g));
}

std::string show(const Series& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <class A, class B>
  void equal(const A& actual, const B& expected, const std::string& what) {
    if (!(actual == expected)) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<void(Check&)> body;
};

bool s_pairs_vanish(const std::vector<Polynomial>& G) {
  if (G.empty()) return true;
  const Ring& R = G.front().ring();
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      const Monomial& a = G[i].leading().mono;
      const Monomial& b = G[j].leading().mono;
      Monomial l = lcm(a, b);
      Polynomial s = G[i].times_monomial(quotient(l, a), R.field.inv(G[i].leading().coeff)) -
                     G[j].times_monomial(quotient(l, b), R.field.inv(G[j].leading().coeff));
      if (!normal_form(s, G).is_zero()) return false;
    }
  return true;
}

long long series_sum(const Series& s) { return std::accumulate(s.begin(), s.end(), 0LL); }

ConstructionReport report_of(const BrRun& run) {
  return verify_construction(run.top, twist_spec_of(run.matrix, module_degree_for(run.matrix, run.section_degree)));
}

void example_one(Check& c) {
  Ideal listed = load_ideal(data("example1_section.id"));
  Ideal J = load_ideal(data("example1_J.id"));
  Ideal S = saturation(listed);
  c.expect(same_ideal(S, J), "saturation differs from J");
  c.equal(S.degree(), 54, "degree != 54");
  c.equal(S.hilbert().second_series, Series{1, 3, 6, 8, 9, 9, 8, 6, 3, 1}, "h-vector " + show(S.hilbert().second_series));
  auto cert = is_arithmetically_gorenstein(S);
  c.equal(cert.betti.display(), std::string("0 -> R(-12) -> R(-6) + 2R(-9) -> 2R(-3) + R(-6)"),
          "Betti " + cert.betti.display());
  c.expect(cert.gorenstein, "not Gorenstein");
}

void example_one_raw(Check& c) {
  Ideal listed = load_ideal(data("example1_section.id"));
  const auto& h = listed.hilbert().second_series;
  c.equal(h, Series{1, 3, 6, 10, 15, 21, 23, 21, 15, 7, -3, -15, -20, -18, -9, -3}, "h-vector " + show(h));
  c.equal(series_sum(h), 54LL, "sum(h) != 54");
}

void curve_of_degree_21(Check& c) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto t0 = Clock::now();
    BrRun run = br_run(ConstructionSpec{1, 5, 1, 2, 6, 32003, seed});
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const auto& h = run.top.hilbert();
    std::string s = "seed " + std::to_string(seed) + ": ";
    c.equal(h.degree, 21, s + "degree");
    c.equal(h.second_series, Series{1, 5, 9, 5, 1}, s + "h-vector " + show(h.second_series));
    c.equal(h.codim, 5, s + "codim");
    auto rep = report_of(run);
    c.equal(rep.regularity, 5, s + "regularity " + std::to_string(rep.regularity));
    c.expect(rep.shape && rep.exact_shape, s + "Betti " + rep.betti.display() + " differs from the predicted shape");
    c.expect(secs < 600, s + "slower than 10 min");
  }
}

void curve_of_degree_13(Check& c) {
  BrRun run = br_run(ConstructionSpec{1, 3, 2, 3, 6, 23, 1});
  const auto& h = run.top.hilbert();
  c.equal(h.degree, 13, "degree");
  c.equal(h.second_series, Series{1, 3, 5, 3, 1}, "h-vector " + show(h.second_series));
  auto b = betti(free_resolution(run.top));
  c.equal(b.display(), std::string("0 -> R(-7) -> 4R(-4) + R(-5) -> R(-2) + 4R(-3)"), "Betti " + b.display());
}

void chern_values(Check& c) {
  auto r1 = chern_coefficients(TwistSpec{{2, 2, 2, 2, 2, 2}, {3}, {0}, 6});
  c.equal(r1.c1, BigInt(9), "(2^6;3) c1");
  c.equal(r1.c[5], BigInt(21), "(2^6;3) c5");
  auto r2 = chern_coefficients(TwistSpec{{3, 3, 3, 3}, {5}, {0}, 6});
  c.equal(r2.c1, BigInt(7), "(3^4;5) c1");
  c.equal(r2.c[3], BigInt(13), "(3^4;5) c3");
  std::vector<int> a6(5, 6);
  c.equal(degree_formula_r3(a6, {9, 9}), BigInt(54), "(6^5;9,9) rank-3 formula");
  c.equal(chern_coefficients(TwistSpec{a6, {9, 9}, {0}, 3}).expected_degree, BigInt(54), "(6^5;9,9) c3");
  auto r4 = chern_coefficients(TwistSpec{{2, 2, 2, 2}, {3}, {0}, 3});
  c.equal(r4.c[3], BigInt(5), "(2^4;3) c3");
}

// The rank-3 formula with the t >= 3 row exactly as printed (minus sign on e1^2 s1).
BigInt printed_t3(const std::vector<int>& a, const std::vector<int>& b) {
  BigInt s1 = elementary_symmetric(a, 1), s2 = elementary_symmetric(a, 2), s3 = elementary_symmetric(a, 3);
  BigInt e1 = elementary_symmetric(b, 1), e2 = elementary_symmetric(b, 2), e3 = elementary_symmetric(b, 3);
  return s3 - e3 - s1 * e2 - s2 * e1 + 2 * e1 * e2 - e1 * e1 * s1 - e1 * e1 * e1;
}

void chern_oracle(Check& c) {
  Rng rng(2024);
  int mismatches = 0, t3 = 0, printed_off = 0;
  for (int k = 0; k < 200; ++k) {
    int t = 1 + static_cast<int>(rng.below(4));
    std::vector<int> a(t + 3), b(t);
    for (auto& x : a) x = 1 + static_cast<int>(rng.below(9));
    for (auto& y : b) y = 1 + static_cast<int>(rng.below(9));
    BigInt f = degree_formula_r3(a, b);
    BigInt s = chern_coefficients(TwistSpec{a, b, {0}, 3}).expected_degree;
    if (f != s) ++mismatches;
    if (t >= 3) {
      ++t3;
      if (printed_t3(a, b) != s) ++printed_off;
    }
  }
  c.equal(mismatches, 0, std::to_string(mismatches) + " of 200 specs disagree");
  c.note("t >= 3 row with the printed sign disagrees with c3 in " + std::to_string(printed_off) + " of " +
         std::to_string(t3) + " cases; the implemented row uses +e1^2 s1");
}

void pfaffian_point(Check& c) {
  GradedMatrix A = load_matrix(data("pfaffian_5x5.mat"));
  Ideal I = pfaffians(A);
  c.equal(I.degree(), 5, "degree");
  c.equal(I.codim(), 3, "codim");
  c.expect(is_arithmetically_gorenstein(I).gorenstein, "not Gorenstein");
  const Ring& R = A.ring();
  Ideal listed = ideal(R, {"z1^2", "z2^2", "z1*z2 - z3^2", "z1*z3", "z2*z3"});
  if (!same_ideal(saturation(I), saturation(listed))) {
    bool plus = same_ideal(saturation(I), ideal(R, {"z1^2", "z2^2", "z1*z2 + z3^2", "z1*z3", "z2*z3"}));
    c.expect(false, std::string("saturation differs from <z1^2, z2^2, z1z2-z3^2, z1z3, z2z3>") +
                        (plus ? "; the Pfaffians of the given matrix generate the ideal with z1z2+z3^2 instead" : ""));
  }
}

void liaison_example(Check& c) {
  GradedMatrix phi = load_matrix(data("liaison_phi.mat"));
  Ideal V = load_ideal(data("veronese_IF.id"));
  Rng rng(1);
  LinkRecord rec = gorenstein_link(phi, V, std::nullopt, rng);
  const auto& hz = rec.I_Zs.hilbert();
  c.equal(hz.dim - 1, 2, "Z(s) dimension");
  c.equal(hz.degree, 5, "Z(s) degree");
  c.equal(hz.second_series, Series{1, 3, 2, -1}, "Z(s) h-vector " + show(hz.second_series));
  c.expect(same_ideal(rec.I_X, load_ideal(data("liaison_IX.id"))), "I_X differs from the listed generators");
  c.expect(same_ideal(rec.I_W, ideal(phi.ring(), {"z0", "z3", "z4"})), "residual differs from <z0,z3,z4>");
  const Series& hx = rec.certificate.h_vector;
  if (hx != Series{1, 2, 1})
    c.expect(false, "h(I_X) = " + show(hx) + ", not (1,2,1); sum(h) must equal deg X = " +
                        std::to_string(rec.I_X.degree()) + ", which (1,2,1) cannot");
  c.equal(rec.certificate.betti.display(), std::string("0 -> R(-5) -> 5R(-3) -> 5R(-2)"),
          "Betti " + rec.certificate.betti.display());
}

void generalized_example(Check& c) {
  GradedMatrix psi = load_matrix(data("koszul_psi.mat"));
  Rng rg(1);
  Ideal G = br_run(psi, 3, 2, rg).top;
  auto gc = is_arithmetically_gorenstein(G);
  c.equal(gc.betti.display(), std::string("0 -> R(-5) -> 5R(-3) -> 5R(-2)"), "I_G Betti " + gc.betti.display());
  Rng rng(11);
  GenBRRun run = generalized_br_run(G, 3, 3, 3, -1, 6, rng);
  c.equal(run.v_betti.display(), std::string("0 -> 5R(-7) -> 8R(-6) -> 3R(-3) + R(-4)"), "I_V Betti " + run.v_betti.display());
  c.equal(run.I_Zs.degree(), 13, "Z(s) degree");
  c.equal(run.betti.display(), std::string("0 -> 4R(-6) -> 7R(-5) -> R(-2) + 3R(-3)"), "Z(s) Betti " + run.betti.display());
  // Raw shape minus the ghost pair R(-5) + R(-6) in the last two steps.
  BettiTable raw = run.shape.betti();
  for (int step : {1, 2})
    for (int deg : {5, 6}) raw.ranks[{step, deg}] -= 1;
  std::erase_if(raw.ranks, [](const auto& kv) { return kv.second == 0; });
  c.equal(raw, run.betti, "raw shape minus ghost pair is " + raw.display());
}

void property_suites(Check& c) {
  // GB S-pair vanishing.
  {
    Rng rng(101);
    int n = 0, bad = 0;
    for (; n < 100; ++n) {
      Ring R = P(2 + static_cast<int>(rng.below(2)), 101);
      std::vector<Polynomial> g;
      int k = 2 + static_cast<int>(rng.below(3));
      for (int i = 0; i < k; ++i) g.push_back(random_form(R, 1 + static_cast<int>(rng.below(3)), rng));
      if (!s_pairs_vanish(Ideal(R, g).groebner_basis())) ++bad;
    }
    c.equal(bad, 0, "S-pairs: " + std::to_string(bad) + " failures");
    c.note("S-pair vanishing: " + std::to_string(n) + " ideals");
  }
  // sum(h) = degree, saturated or not.
  {
    Rng rng(102);
    int n = 0, bad = 0;
    for (; n < 100; ++n) {
      Ring R = P(2 + static_cast<int>(rng.below(2)), 101);
      std::vector<Polynomial> g;
      int k = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < k; ++i) g.push_back(random_form(R, 1 + static_cast<int>(rng.below(3)), rng));
      g.push_back(random_form(R, 4, rng) * parse_polynomial(R, "z0"));
      Ideal I(R, g);
      const auto& h = I.hilbert();
      if (series_sum(h.second_series) != h.degree) ++bad;
    }
    c.equal(bad, 0, "sum(h): " + std::to_string(bad) + " failures");
    c.note("sum(h) = degree: " + std::to_string(n) + " ideals");
  }
  // Saturation and top-part idempotence on J cap (embedded point).
  {
    Rng rng(103);
    int n = 0, bad = 0;
    for (; n < 100; ++n) {
      Ring R = P(3, 101);
      Ideal J(R, {random_form(R, 1 + static_cast<int>(rng.below(2)), rng), random_form(R, 2, rng)});
      Ideal K(R, {random_form(R, 1, rng), random_form(R, 1, rng), random_form(R, 1, rng)});
      Ideal I = ideal_intersection(J, K);
      Ideal M(R, {parse_polynomial(R, "z0^2"), parse_polynomial(R, "z1^2"), parse_polynomial(R, "z2^2"),
                  parse_polynomial(R, "z3^2")});
      Ideal Ie = ideal_intersection(I, M);
      Ideal S = saturation(Ie);
      bool ok = same_ideal(saturation(S), S) && same_ideal(S, I);
      Ideal T = top_dimensional_part(I, 2, rng);
      ok = ok && same_ideal(top_dimensional_part(T, 2, rng), T) && same_ideal(T, J);
      if (!ok) ++bad;
    }
    c.equal(bad, 0, "idempotence: " + std::to_string(bad) + " failures");
    c.note("saturation/top idempotence: " + std::to_string(n) + " ideals");
  }
  // Minimization preserves the Hilbert series.
  {
    Rng rng(104);
    int n = 0, bad = 0;
    for (; n < 100; ++n) {
      Ring R = P(2 + static_cast<int>(rng.below(2)), 101);
      std::vector<Polynomial> g;
      int k = 2 + static_cast<int>(rng.below(3));
      for (int i = 0; i < k; ++i) g.push_back(random_form(R, 1 + static_cast<int>(rng.below(2)), rng));
      g.push_back(g[0] * random_form(R, 1, rng));
      Ideal I(R, g);
      auto raw = free_resolution(I, false);
      auto m = minimize(raw);
      Series q = I.hilbert().first_series;
      if (!is_complex(m) || hilbert_numerator(betti(raw)) != q || hilbert_numerator(betti(m)) != q) ++bad;
    }
    c.equal(bad, 0, "minimization: " + std::to_string(bad) + " failures");
    c.note("minimization preserves Hilbert series: " + std::to_string(n) + " resolutions");
  }
  // Embedding into the predicted shape on every successful q = 1 construction, and determinism.
  {
    int runs = 0, irregular = 0, bad = 0, nondet = 0;
    for (std::uint64_t seed = 1; runs < 100 && seed < 400; ++seed) {
      int e = 1 + static_cast<int>(seed % 2);
      int r = (seed % 3 == 0) ? 5 : 3;
      int n = (r == 5) ? 5 : 3;
      ConstructionSpec spec{1, r, e, e + 1, n, 32003, seed};
      if (r == 5) spec.entry_degree = 1, spec.section_degree = 2;
      std::optional<BrRun> run;
      try {
        run = br_run(spec);
      } catch (const MathError&) {
        ++irregular;
        continue;
      }
      auto rep = report_of(*run);
      if (!rep.degree_matches || !rep.certificate.gorenstein || !rep.shape || !rep.embeds) ++bad;
      BrRun again = br_run(spec);
      if (again.top.generators() != run->top.generators() || again.protocol != run->protocol) ++nondet;
      ++runs;
    }
    c.expect(runs >= 100, "only " + std::to_string(runs) + " successful constructions");
    c.equal(bad, 0, "shape embedding: " + std::to_string(bad) + " failures");
    c.equal(nondet, 0, "determinism: " + std::to_string(nondet) + " failures");
    c.note("shape embedding and determinism: " + std::to_string(runs) + " constructions (" +
           std::to_string(irregular) + " seeds without a regular section skipped)");
  }
}

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {1, "Example 1 saturation: J, degree 54, h-vector, Betti table, Gorenstein", 30, example_one},
      {2, "Example 1 unsaturated h-vector, sum 54", 30, example_one_raw},
      {3, "br(1,5,1,2) on P^6, seeds 1-3: degree 21, h, codim 5, regularity 5, predicted Betti table", 1800,
       curve_of_degree_21},
      {4, "br(1,3,2,3) on P^6, char 23: degree 13, h, Betti table", 600, curve_of_degree_13},
      {5, "Chern predictor values", 1, chern_values},
      {6, "Rank-3 degree formula equals c3 on 200 random specs", 10, chern_oracle},
      {7, "Pfaffian point: degree 5, codim 3, Gorenstein, listed ideal", 60, pfaffian_point},
      {8, "Gorenstein link of the Veronese surface", 120, liaison_example},
      {9, "Generalized kernel over five points", 120, generalized_example},
      {10, "Property suites", 1800, property_suites},
  };
  int failed = 0;
  for (auto& cr : all) {
    Check c;
    auto t0 = Clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= cr.limit_s) c.expect(false, "runtime over " + std::to_string(static_cast<int>(cr.limit_s)) + " s");
    bool ok = c.failures().empty();
    failed += !ok;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " [" << t << "]\n";
    for (auto& f : c.failures()) std::cout << "    - " << f << '\n';
    for (auto& n : c.notes()) std::cout << "    * " << n << '\n';
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
