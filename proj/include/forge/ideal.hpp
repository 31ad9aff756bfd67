#ifndef FORGE_IDEAL_HPP
#define FORGE_IDEAL_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "groebner_engine.hpp"
#include "hilbert.hpp"
#include "polynomial.hpp"
#include "rng.hpp"

namespace forge {

struct HilbertReport {
  Series first_series;   // Q(t) with H(t) = Q(t)/(1-t)^(n+1)
  Series second_series;  // h-vector, H(t) = h(t)/(1-t)^dim
  int dim = 0;           // affine (cone) dimension
  int codim = 0;         // n + 1 - dim
  std::int64_t degree = 0;
};

inline ModPoly to_module(const Polynomial& f, std::uint32_t comp = 0) { return embed(f, comp); }

inline Polynomial from_module(const ModPoly& p, const Ring& ring, std::uint32_t comp = 0) {
  return extract(p, comp, ring);
}

/// Homogeneous ideal with a lazily computed, shared Gröbner basis cache.
class Ideal {
public:
  Ideal(Ring ring, std::vector<Polynomial> gens) : data_(std::make_shared<Data>(ring)) {
    for (auto& g : gens) {
      if (!(g.ring() == ring)) throw UsageError("ideal generator from a different ring");
      if (!g.is_homogeneous()) throw UsageError("ideal generator is not homogeneous: " + g.to_string());
      if (!g.is_zero()) data_->gens.push_back(std::move(g));
    }
  }

  static Ideal unit(Ring ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
  static Ideal zero(Ring ring) { return Ideal(ring, {}); }
  static Ideal variables(Ring ring, const std::vector<int>& vars) {
    std::vector<Polynomial> g;
    for (int v : vars) g.push_back(Polynomial::variable(ring, v));
    return Ideal(ring, std::move(g));
  }

  const Ring& ring() const { return data_->ring; }
  const std::vector<Polynomial>& generators() const { return data_->gens; }
  int nvars() const { return data_->ring.nvars; }

  /// Reduced monic Gröbner basis in degrevlex.
  const std::vector<Polynomial>& groebner_basis() const {
    compute();
    return data_->gb;
  }

  /// Minimal homogeneous generators (a subset of the generators, reduced).
  const std::vector<Polynomial>& minimal_generators() const {
    compute();
    return data_->minimal;
  }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> lm;
    for (auto& g : groebner_basis()) lm.push_back(g.leading().mono);
    return lm;
  }

  bool is_unit() const {
    auto& gb = groebner_basis();
    return gb.size() == 1 && gb[0].is_constant();
  }

  bool is_zero() const { return data_->gens.empty(); }

  int max_generator_degree() const {
    int d = -1;
    for (auto& g : data_->gens) d = std::max(d, g.degree());
    return d;
  }

  Polynomial reduce(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }
  bool contains(const Ideal& J) const {
    for (auto& g : J.generators())
      if (!contains(g)) return false;
    return true;
  }

  const HilbertReport& hilbert() const {
    std::call_once(data_->hilbert_once, [this] { data_->report = make_report(); });
    return data_->report;
  }

  int affine_dimension() const { return independent_set_dimension(leading_monomials(), nvars()); }
  int codim() const { return nvars() - affine_dimension(); }
  std::int64_t degree() const { return hilbert().degree; }

private:
  struct Data {
    explicit Data(Ring r) : ring(r) {}
    Ring ring;
    std::vector<Polynomial> gens;
    std::once_flag gb_once;
    std::vector<Polynomial> gb;
    std::vector<Polynomial> minimal;
    std::once_flag hilbert_once;
    HilbertReport report;
  };

  void compute() const {
    std::call_once(data_->gb_once, [this] {
      std::vector<ModPoly> in;
      for (auto& g : data_->gens) in.push_back(to_module(g));
      GroebnerOptions opt;
      opt.product_criterion = true;
      opt.track_minimal = true;
      auto res = groebner(std::move(in), ModuleOrder::ring(), data_->ring.field, opt);
      for (auto& b : res.basis) data_->gb.push_back(from_module(b, data_->ring));
      std::sort(data_->gb.begin(), data_->gb.end(), [](const Polynomial& a, const Polynomial& b) {
        return degrevlex(a.leading().mono, b.leading().mono) < 0;
      });
      for (auto idx : res.minimal_inputs) data_->minimal.push_back(data_->gens[idx].monic());
    });
  }

  HilbertReport make_report() const {
    HilbertReport r;
    auto lm = leading_monomials();
    r.first_series = hilbert_numerator(lm, nvars());
    r.dim = independent_set_dimension(lm, nvars());
    r.codim = nvars() - r.dim;
    if (r.dim < 0) {
      r.first_series.clear();
      r.codim = nvars();
      return r;
    }
    r.second_series = r.first_series;
    for (int i = 0; i < r.codim; ++i)
      if (!divide_one_minus_t(r.second_series)) throw MathError("Hilbert numerator not divisible by (1-t)^codim");
    for (auto h : r.second_series) r.degree += h;
    return r;
  }

  std::shared_ptr<Data> data_;
};

inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G) {
  std::vector<ModPoly> g;
  g.reserve(G.size());
  for (auto& p : G) {
    Polynomial::check_same_ring(f, p);
    g.push_back(to_module(p));
  }
  return from_module(normal_form(to_module(f), g, ModuleOrder::ring(), f.ring().field), f.ring());
}

inline Polynomial Ideal::reduce(const Polynomial& f) const { return normal_form(f, groebner_basis()); }

inline const std::vector<Polynomial>& groebner_basis(const Ideal& I) { return I.groebner_basis(); }

inline bool same_ideal(const Ideal& I, const Ideal& J) { return I.contains(J) && J.contains(I); }

inline HilbertReport hilbert_report(const Ideal& I) { return I.hilbert(); }

inline int affine_dimension(const Ideal& I) { return I.affine_dimension(); }

/// Generators of I ∩ J: the e1-parts of the submodule generated by
/// f(e0 + e1), f in I, and g e0, g in J, after eliminating e0.
inline Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
  if (!(I.ring() == J.ring())) throw UsageError("intersection of ideals in different rings");
  const Ring& R = I.ring();
  if (I.is_zero() || J.is_zero()) return Ideal::zero(R);
  ModuleOrder order;
  order.add_component(0, 0, Monomial::one(), 0);
  order.add_component(1, 0, Monomial::one(), 1);
  std::vector<ModPoly> in;
  for (auto& f : I.generators()) {
    ModPoly m = to_module(f, 0);
    for (auto& t : f.terms()) m.push_back({t.mono, 1, t.coeff});
    in.push_back(std::move(m));
  }
  for (auto& g : J.generators()) in.push_back(to_module(g, 0));
  GroebnerOptions opt;
  opt.elimination_block = 1;
  auto res = groebner(std::move(in), order, R.field, opt);
  std::vector<Polynomial> gens;
  for (auto& e : res.eliminated) gens.push_back(from_module(e, R, 1));
  return Ideal(R, std::move(gens));
}

/// (J : g) from the submodule generated by g e0 + e1 and j e0, j in J.
inline Ideal ideal_quotient(const Ideal& J, const Polynomial& g) {
  const Ring& R = J.ring();
  if (g.is_zero() || J.contains(g)) return Ideal::unit(R);
  if (J.is_zero()) return Ideal::zero(R);
  ModuleOrder order;
  order.add_component(0, 0, Monomial::one(), 0);
  order.add_component(1, g.degree(), Monomial::one(), 1);
  std::vector<ModPoly> in;
  ModPoly first = to_module(g, 0);
  first.push_back({Monomial::one(), 1, 1});
  in.push_back(std::move(first));
  for (auto& j : J.groebner_basis()) in.push_back(to_module(j, 0));
  GroebnerOptions opt;
  opt.elimination_block = 1;
  auto res = groebner(std::move(in), order, R.field, opt);
  std::vector<Polynomial> gens;
  for (auto& e : res.eliminated) gens.push_back(from_module(e, R, 1));
  return Ideal(R, std::move(gens));
}

/// (J : I) = intersection of (J : g) over the generators g of I.
inline Ideal ideal_quotient(const Ideal& J, const Ideal& I) {
  if (!(I.ring() == J.ring())) throw UsageError("quotient of ideals in different rings");
  std::optional<Ideal> acc;
  for (auto& g : I.minimal_generators()) {
    Ideal q = ideal_quotient(J, g);
    if (q.is_unit()) continue;
    acc = acc ? ideal_intersection(*acc, q) : q;
  }
  return acc ? *acc : Ideal::unit(J.ring());
}

/// (I : z_v^infinity). With z_v moved to the last position, a degrevlex
/// Gröbner basis divided by the largest powers of that variable is a
/// Gröbner basis of the saturation.
inline Ideal saturation_by_variable(const Ideal& I, int v) {
  const Ring& R = I.ring();
  int last = R.nvars - 1;
  std::vector<int> perm(R.nvars);
  for (int i = 0; i < R.nvars; ++i) perm[i] = i;
  std::swap(perm[v], perm[last]);
  std::vector<Polynomial> moved;
  for (auto& g : I.generators()) moved.push_back(g.permuted(perm));
  Ideal Im(R, std::move(moved));
  std::vector<Polynomial> out;
  for (auto& g : Im.groebner_basis()) {
    int e = 255;
    for (auto& t : g.terms()) e = std::min<int>(e, t.mono.exp[last]);
    std::vector<Term> terms;
    for (auto& t : g.terms()) {
      Monomial m = t.mono;
      m.exp[last] = static_cast<std::uint8_t>(m.exp[last] - e);
      m.degree = static_cast<std::uint16_t>(m.degree - e);
      terms.push_back({m, t.coeff});
    }
    out.push_back(Polynomial::from_terms(R, std::move(terms)).permuted(perm));
  }
  return Ideal(R, std::move(out));
}

/// Saturation with respect to the irrelevant ideal (z0, ..., zn):
/// the intersection of the saturations by the single variables.
inline Ideal saturation(const Ideal& I) {
  if (I.is_zero() || I.is_unit()) return I;
  std::optional<Ideal> acc;
  for (int v = 0; v < I.nvars(); ++v) {
    Ideal s = saturation_by_variable(I, v);
    if (s.is_unit()) continue;
    if (acc && acc->contains(s)) continue;
    if (acc && s.contains(*acc)) continue;
    acc = acc ? ideal_intersection(*acc, s) : s;
  }
  return acc ? *acc : Ideal::unit(I.ring());
}

/// Random element of I of degree D: sum of generators times random forms.
inline Polynomial random_element(const Ideal& I, int D, Rng& rng) {
  Polynomial f(I.ring());
  for (auto& g : I.generators()) {
    int e = D - g.degree();
    if (e < 0) continue;
    f = f + random_form(I.ring(), e, rng) * g;
  }
  return f;
}

/// Unmixed part of codimension r: (J : (J : I)) for a complete intersection
/// J of r random elements of I.
inline Ideal top_dimensional_part(const Ideal& I, int r, Rng& rng, int max_degree_steps = 4) {
  const Ring& R = I.ring();
  if (I.is_unit()) return I;
  if (I.codim() != r) throw MathError("top_dimensional_part: ideal has codimension " + std::to_string(I.codim()) +
                                      ", expected " + std::to_string(r));
  int D = I.max_generator_degree();
  for (int step = 0; step <= max_degree_steps; ++step, ++D) {
    for (int attempt = 0; attempt < 5; ++attempt) {
      std::vector<Polynomial> ci;
      for (int i = 0; i < r; ++i) ci.push_back(random_element(I, D, rng));
      Ideal J(R, std::move(ci));
      if (J.codim() != r) continue;
      return ideal_quotient(J, ideal_quotient(J, I));
    }
  }
  throw MathError("top_dimensional_part: no regular sequence of length " + std::to_string(r) + " found in the ideal");
}

/// Value at m of the Hilbert polynomial sum_i h_i binom(m - i + D, D),
/// D = projective dimension = dim - 1.
inline std::int64_t hilbert_polynomial_value(const HilbertReport& r, std::int64_t m) {
  int D = r.dim - 1;
  if (D < 0) return 0;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < r.second_series.size(); ++i) {
    std::int64_t x = m - static_cast<std::int64_t>(i) + D;
    std::int64_t b = 1;
    for (int k = 0; k < D; ++k) b = b * (x - k) / (k + 1);
    total += r.second_series[i] * b;
  }
  return total;
}

/// Arithmetic genus (-1)^D (P(0) - 1).
inline std::int64_t arithmetic_genus(const HilbertReport& r) {
  int D = r.dim - 1;
  std::int64_t v = hilbert_polynomial_value(r, 0) - 1;
  return (D % 2 == 0) ? v : -v;
}

}  // namespace forge

#endif  // FORGE_IDEAL_HPP
