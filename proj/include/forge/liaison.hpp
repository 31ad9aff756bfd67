#ifndef FORGE_LIAISON_HPP
#define FORGE_LIAISON_HPP

#include <optional>
#include <string>
#include <vector>

#include "construct.hpp"

namespace forge {

/// Columns generating im(B) ∩ im(C), read off the kernel of the block matrix (B | C).
inline GradedMatrix module_intersection(const GradedMatrix& B, const GradedMatrix& C) {
  if (B.rows() != C.rows() || B.row_twists() != C.row_twists())
    throw UsageError("module_intersection: ambient free modules differ");
  const Ring& R = B.ring();
  std::vector<int> ct = B.col_twists();
  ct.insert(ct.end(), C.col_twists().begin(), C.col_twists().end());
  GradedMatrix BC(R, B.row_twists(), ct);
  for (std::size_t i = 0; i < B.rows(); ++i) {
    for (std::size_t j = 0; j < B.cols(); ++j) BC.set(i, j, B(i, j));
    for (std::size_t j = 0; j < C.cols(); ++j) BC.set(i, B.cols() + j, C(i, j));
  }
  GradedMatrix K = syzygy(BC, false);
  // Top block of each kernel vector gives an element B k of the intersection.
  GradedMatrix Ktop(R, B.col_twists(), K.col_twists());
  for (std::size_t i = 0; i < B.cols(); ++i)
    for (std::size_t j = 0; j < K.cols(); ++j) Ktop.set(i, j, K(i, j));
  GradedMatrix P = B * Ktop;
  ModuleOrder order = ModuleOrder::top(B.row_twists());
  std::vector<ModPoly> cols;
  for (auto& v : P.column_vectors(order))
    if (!v.empty()) cols.push_back(std::move(v));
  if (!cols.empty()) {
    GroebnerOptions opt;
    opt.track_minimal = true;
    cols = groebner(std::move(cols), order, R.field, opt).minimal;
  }
  std::stable_sort(cols.begin(), cols.end(),
                   [&](const ModPoly& a, const ModPoly& b) { return order.degree(a.front()) < order.degree(b.front()); });
  return GradedMatrix::from_columns(R, B.row_twists(), cols, order);
}

/// I ⊗ Id_k: column (g e_i) for every generator g of I and every basis vector e_i.
inline GradedMatrix ideal_times_identity(const Ideal& I, const std::vector<int>& twists) {
  const Ring& R = I.ring();
  std::vector<int> ct;
  std::vector<std::pair<std::size_t, Polynomial>> cols;
  for (std::size_t i = 0; i < twists.size(); ++i)
    for (auto& g : I.minimal_generators()) {
      ct.push_back(twists[i] + g.degree());
      cols.push_back({i, g});
    }
  GradedMatrix M(R, twists, ct);
  for (std::size_t j = 0; j < cols.size(); ++j) M.set(cols[j].first, j, cols[j].second);
  return M;
}

/// Regular section of ker(phi) whose entries lie in I_V, so that Z(s) contains V.
/// With no degree given, the module degree is raised from the lowest generator
/// degree of the intersection until a regular section appears (at most 4 steps).
inline SectionResult common_section(const GradedMatrix& phi, const Ideal& I_V, std::optional<int> degree, Rng& rng,
                                    int c = -1) {
  const Ring& R = phi.ring();
  if (c < 0) c = static_cast<int>(phi.cols()) - static_cast<int>(phi.rows());
  GradedMatrix B = syzygy(phi);
  GradedMatrix M = I_V.is_unit() ? B : module_intersection(B, ideal_times_identity(I_V, phi.col_twists()));
  if (M.cols() == 0) throw MathError("common_section: the kernel meets F ⊗ I_V trivially");
  int lo = degree ? *degree : *std::min_element(M.col_twists().begin(), M.col_twists().end());
  int steps = degree ? 1 : 4;
  std::optional<SectionResult> last;
  for (int D = lo; D < lo + steps; ++D) {
    FreeModuleElement s;
    bool found = false;
    for (int attempt = 0; attempt < 5 && !found; ++attempt) {
      s = detail::combine(M, D, rng);
      found = !s.is_zero();
    }
    if (!found) continue;
    std::vector<Polynomial> gens;
    for (auto& e : s.entries)
      if (!e.is_zero()) gens.push_back(e);
    SectionResult out{s, Ideal(R, gens), D, 0, false, std::nullopt};
    out.affine_dim = out.zero_locus.affine_dimension();
    out.regular = out.affine_dim == R.nvars - c;
    if (out.regular) return out;
    last = out;
  }
  if (last) return *last;
  throw MathError("common_section: no nonzero section in module degree " + std::to_string(lo) +
                  (steps > 1 ? " to " + std::to_string(lo + steps - 1) : ""));
}

/// Direct G-link V ~ W through an arithmetically Gorenstein X ⊇ V.
struct LinkRecord {
  Ideal I_V;
  GradedMatrix phi;
  int degree = 0;
  SectionResult section;
  Ideal I_Zs;
  Ideal I_X;
  Ideal I_W;
  GorensteinCertificate certificate;
  bool contains_V = false;
  std::vector<std::string> protocol;
};

inline LinkRecord gorenstein_link(const GradedMatrix& phi, const Ideal& I_V, std::optional<int> degree, Rng& rng) {
  const int c = static_cast<int>(phi.cols()) - static_cast<int>(phi.rows());
  std::vector<std::string> log;
  if (c % 2 == 0) throw UsageError("gorenstein_link: the kernel rank must be odd");
  if (I_V.codim() != c)
    throw UsageError("gorenstein_link: V has codimension " + std::to_string(I_V.codim()) + ", the kernel rank is " +
                     std::to_string(c));
  int cd = minors_ideal(phi, static_cast<int>(phi.rows())).codim();
  log.push_back("// Codimension of the maximal minors of phi: " + std::to_string(cd) +
                (cd == c + 1 ? " as expected" : ", expected " + std::to_string(c + 1)));
  SectionResult s = common_section(phi, I_V, degree, rng, c);
  log.push_back("// Common section in module degree " + std::to_string(s.module_degree) + ", dim(std) = " +
                std::to_string(s.affine_dim) + (s.regular ? " (regular)" : " (not regular)"));
  if (!s.regular) throw MathError("gorenstein_link: no regular common section found");
  Ideal I_X = top_dimensional_part(s.zero_locus, c, rng);
  log.push_back("// Top-dimensional part computed");
  auto cert = is_arithmetically_gorenstein(I_X);
  bool contains = I_V.contains(I_X);
  if (!contains) throw MathError("gorenstein_link: X does not contain V");
  Ideal I_W = saturation(ideal_quotient(I_X, I_V));
  log.push_back("// Residual computed as (I_X : I_V)");
  s.top = I_X;
  return LinkRecord{I_V, phi, s.module_degree, s, s.zero_locus, I_X, I_W, cert, contains, std::move(log)};
}

/// Run of the generalized kernel construction over an arithmetically Gorenstein G of codimension 3.
struct GenBRRun {
  GenBRSpec spec;
  Ideal I_G;
  GorensteinCertificate g_certificate;
  Ideal I_CI;
  Ideal I_V;
  BettiTable v_betti;
  GradedMatrix phi;
  SectionResult section;
  Ideal I_Zs;
  BettiTable betti;
  ExpectedShape shape;
  bool embeds = false;
  bool almost_complete_intersection = false;
  bool verified_setting = true;
  std::vector<std::string> protocol;
};

namespace detail {

inline std::vector<int> twists_of_step(const BettiTable& b, int step) {
  std::vector<int> out;
  for (auto [deg, r] : b.step(step))
    for (int i = 0; i < r; ++i) out.push_back(-deg);
  return out;
}

}  // namespace detail

/// G -> complete intersection X of type (d1,d2,d3) inside I_G -> V = (I_X : I_G) ->
/// phi = minimal generators of I_V -> section of ker(phi) in module degree d -> Z(s).
/// E_1, E_2 and l are read off the minimal resolution of I_G; a given l must agree.
inline GenBRRun generalized_br_run(const Ideal& I_G, int d1, int d2, int d3, std::optional<int> l, int d, Rng& rng) {
  const Ring& R = I_G.ring();
  const int n = R.projective_dim();
  std::vector<std::string> log;
  auto cert = is_arithmetically_gorenstein(I_G);
  if (!cert.gorenstein || cert.codim != 3) throw MathError("generalized_br_run: G is not arithmetically Gorenstein of codimension 3");
  log.push_back("// G is arithmetically Gorenstein of codimension 3");

  GenBRSpec spec;
  spec.e1 = detail::twists_of_step(cert.betti, 0);
  spec.e2 = detail::twists_of_step(cert.betti, 1);
  int last = cert.betti.step(2).begin()->first;
  int l_read = n + 1 - last;
  if (l && *l != l_read)
    throw MathError("generalized_br_run: l = " + std::to_string(*l) + " does not match the resolution of G (l = " +
                    std::to_string(l_read) + ")");
  spec.l = l_read;
  spec.d1 = d1;
  spec.d2 = d2;
  spec.d3 = d3;
  spec.d = d;
  spec.n = n;
  spec.validate();

  std::optional<Ideal> ci;
  for (int attempt = 0; attempt < 10 && !ci; ++attempt) {
    std::vector<Polynomial> g;
    for (int di : {d1, d2, d3}) g.push_back(random_element(I_G, di, rng));
    bool nonzero = std::all_of(g.begin(), g.end(), [](const Polynomial& p) { return !p.is_zero(); });
    if (!nonzero) continue;
    Ideal X(R, g);
    if (X.codim() == 3) ci = X;
  }
  if (!ci) throw MathError("generalized_br_run: no complete intersection of the given type inside I_G");
  log.push_back("// Complete intersection of type (" + std::to_string(d1) + "," + std::to_string(d2) + "," +
                std::to_string(d3) + ") containing G");

  Ideal I_V = ideal_quotient(*ci, I_G);
  BettiTable vb = betti(free_resolution(I_V));
  log.push_back("// Residual V: degree " + std::to_string(I_V.degree()) + ", resolution " + vb.display());

  GradedMatrix phi = GradedMatrix::row_vector(R, I_V.minimal_generators());
  SectionResult s = section(phi, d, rng, 3);
  log.push_back("// Section of the kernel in module degree " + std::to_string(d) + ", dim(std) = " +
                std::to_string(s.affine_dim) + (s.regular ? " (regular)" : " (not regular)"));
  if (!s.regular) throw MathError("generalized_br_run: the section is not regular");
  Ideal Z = s.zero_locus;
  BettiTable zb = betti(free_resolution(Z));
  ExpectedShape shape = expected_resolution_generalized_kernel(spec);
  bool aci = zb.total_rank(0) == 4;
  bool emb = embeds_with_ghost_pairs(shape.betti(), zb);
  log.push_back("// Z(s): degree " + std::to_string(Z.degree()) + ", resolution " + zb.display());
  return GenBRRun{spec, I_G, cert, *ci, I_V, vb, phi, s, Z, zb, shape, emb, aci, spec.verified_setting(), std::move(log)};
}

}  // namespace forge

#endif  // FORGE_LIAISON_HPP
