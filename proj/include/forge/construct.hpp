#ifndef FORGE_CONSTRUCT_HPP
#define FORGE_CONSTRUCT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "chern.hpp"
#include "resolution.hpp"

namespace forge {

/// Random t x (t+r) matrix of forms of degree entry_degree on P^n.
/// section_degree is the degree of the entries of the section s.
struct ConstructionSpec {
  int t = 1;
  int r = 1;
  int entry_degree = 1;
  int section_degree = 1;
  int n = 3;
  std::uint32_t p = 32003;
  std::uint64_t seed = 0;

  void validate() const {
    if (t < 1 || r < 1) throw UsageError("construction needs t >= 1 and r >= 1");
    if (n < r) throw UsageError("construction needs n >= r");
    if (entry_degree < 1) throw UsageError("construction needs entry degree >= 1");
    if (section_degree < 0) throw UsageError("construction needs section degree >= 0");
  }

  Ring ring() const { return Ring::projective(p, n); }
};

struct SectionResult {
  FreeModuleElement s;
  Ideal zero_locus;
  int module_degree = 0;
  int affine_dim = 0;
  bool regular = false;
  std::optional<Ideal> top;
};

inline GradedMatrix random_graded_matrix(const ConstructionSpec& spec, Rng& rng) {
  spec.validate();
  Ring R = spec.ring();
  GradedMatrix M(R, std::vector<int>(spec.t, 0), std::vector<int>(spec.t + spec.r, spec.entry_degree));
  for (int i = 0; i < spec.t; ++i)
    for (int j = 0; j < spec.t + spec.r; ++j) M.set(i, j, random_form(R, spec.entry_degree, rng));
  return M;
}

/// Projective codimension of the t x t minors equals r + 1.
inline bool check_expected_codim(const GradedMatrix& M, int t, int r) {
  if (t < 1 || static_cast<std::size_t>(t) > std::min(M.rows(), M.cols())) return false;
  Ideal I = minors_ideal(M, t);
  if (I.is_zero()) return false;
  return I.codim() == r + 1;
}

/// Good determinantal test: expected codimension, and the maximal minors of a
/// generic (t-1) x (t+r) row combination have codimension r + 2.
inline bool is_good_determinantal(const GradedMatrix& M, Rng& rng) {
  const int t = static_cast<int>(M.rows());
  const int r = static_cast<int>(M.cols()) - t;
  if (r < 1 || !check_expected_codim(M, t, r)) return false;
  const Ring& R = M.ring();
  if (t == 1) return r + 2 <= R.nvars;
  const auto& rt = M.row_twists();
  if (std::any_of(rt.begin(), rt.end(), [&](int x) { return x != rt[0]; }))
    throw UsageError("generalized row deletion needs equal row twists");
  GradedMatrix D(R, std::vector<int>(t - 1, rt[0]), M.col_twists());
  for (int i = 0; i < t - 1; ++i) {
    std::vector<Coeff> c;
    for (int k = 0; k < t; ++k) c.push_back(static_cast<Coeff>(rng.next() % R.field.characteristic()));
    for (std::size_t j = 0; j < M.cols(); ++j) {
      Polynomial e(R);
      for (int k = 0; k < t; ++k)
        if (!M(k, j).is_zero()) e = e + M(k, j).scaled(c[k]);
      D.set(i, j, std::move(e));
    }
  }
  Ideal I = minors_ideal(D, t - 1);
  return !I.is_zero() && I.codim() == r + 2;
}

namespace detail {

inline FreeModuleElement combine(const GradedMatrix& B, int D, Rng& rng) {
  const Ring& R = B.ring();
  FreeModuleElement s;
  s.twists = B.row_twists();
  s.entries.assign(B.rows(), Polynomial(R));
  for (std::size_t j = 0; j < B.cols(); ++j) {
    int e = D - B.col_twists()[j];
    if (e < 0) continue;
    Polynomial f = random_form(R, e, rng);
    for (std::size_t i = 0; i < B.rows(); ++i)
      if (!B(i, j).is_zero()) s.entries[i] = s.entries[i] + f * B(i, j);
  }
  return s;
}

}  // namespace detail

/// Random homogeneous kernel element of M of module degree D: s = sum f_i B_i
/// with B = syz(M) and deg f_i = D - deg B_i. The entries of s generate Z(s);
/// s is regular when the affine dimension of Z(s) is n - r + 1, r = rank of the kernel.
inline SectionResult section(const GradedMatrix& M, int D, Rng& rng, int r = -1) {
  const Ring& R = M.ring();
  if (r < 0) r = static_cast<int>(M.cols()) - static_cast<int>(M.rows());
  GradedMatrix B = syzygy(M);
  for (int attempt = 0; attempt < 5; ++attempt) {
    FreeModuleElement s = detail::combine(B, D, rng);
    if (s.is_zero()) continue;
    std::vector<Polynomial> gens;
    for (auto& e : s.entries)
      if (!e.is_zero()) gens.push_back(e);
    SectionResult out{s, Ideal(R, gens), D, 0, false, std::nullopt};
    out.affine_dim = out.zero_locus.affine_dimension();
    out.regular = out.affine_dim == R.nvars - r;
    return out;
  }
  throw MathError("section: every random section of module degree " + std::to_string(D) +
                  " vanishes; the degree is too small");
}

/// Module degree whose sections have entries of degree at most sec_deg.
inline int module_degree_for(const GradedMatrix& M, int section_degree) {
  if (M.cols() == 0) throw UsageError("matrix has no columns");
  return section_degree + *std::min_element(M.col_twists().begin(), M.col_twists().end());
}

/// Twists of F = sum O(a_j) -> G = sum O(b_i) seen by sections of module degree D.
inline TwistSpec twist_spec_of(const GradedMatrix& M, int D) {
  TwistSpec t;
  for (int c : M.col_twists()) t.a.push_back(D - c);
  for (int r : M.row_twists()) t.b.push_back(D - r);
  t.n = M.ring().projective_dim();
  return t;
}

struct BrRun {
  GradedMatrix matrix;
  SectionResult section;
  int section_degree = 0;
  Ideal top;
  std::vector<std::string> protocol;
};

/// Codim check, regular section (section degree raised up to twice), top part.
inline BrRun br_run(const GradedMatrix& M, int r, int section_degree, Rng& rng) {
  const int t = static_cast<int>(M.rows());
  std::vector<std::string> log;
  log.push_back("// Check the codimension of the " + std::to_string(t) + "x" + std::to_string(t) + " minors");
  Ideal minors = minors_ideal(M, t);
  int cd = minors.is_zero() ? 0 : minors.codim();
  log.push_back("// The codimension is " + std::to_string(cd) + (cd == r + 1 ? " as expected" : ", expected " + std::to_string(r + 1)));
  if (cd != r + 1) throw MathError("minors do not have the expected codimension " + std::to_string(r + 1));
  for (int bump = 0; bump <= 2; ++bump) {
    int sd = section_degree + bump;
    int D = module_degree_for(M, sd);
    log.push_back("// Compute a random section with entries of degree " + std::to_string(sd));
    SectionResult s = section(M, D, rng, r);
    log.push_back("// dim(std(section)) = " + std::to_string(s.affine_dim) + ", expected " +
                  std::to_string(M.ring().nvars - r));
    if (!s.regular) {
      log.push_back("// The section is not regular");
      continue;
    }
    log.push_back("// The section is regular; isolate the top-dimensional part");
    Ideal top = top_dimensional_part(s.zero_locus, r, rng);
    s.top = top;
    return BrRun{M, std::move(s), sd, top, std::move(log)};
  }
  throw MathError("no regular section found up to entry degree " + std::to_string(section_degree + 2));
}

inline BrRun br_run(const ConstructionSpec& spec) {
  Rng rng(spec.seed);
  GradedMatrix M = random_graded_matrix(spec, rng);
  BrRun run = br_run(M, spec.r, spec.section_degree, rng);
  run.protocol.insert(run.protocol.begin(), "// Random " + std::to_string(spec.t) + "x" +
                                                std::to_string(spec.t + spec.r) + " matrix of forms of degree " +
                                                std::to_string(spec.entry_degree) + ", seed " +
                                                std::to_string(spec.seed));
  return run;
}

inline Ideal br(const ConstructionSpec& spec) { return br_run(spec).top; }

namespace detail {

inline Polynomial pfaffian(const GradedMatrix& M, const std::vector<std::size_t>& idx) {
  const Ring& R = M.ring();
  if (idx.empty()) return Polynomial::constant(R, 1);
  Polynomial pf(R);
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const Polynomial& a = M(idx[0], idx[k]);
    if (a.is_zero()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t m = 1; m < idx.size(); ++m)
      if (m != k) rest.push_back(idx[m]);
    Polynomial term = a * pfaffian(M, rest);
    pf = (k % 2 == 1) ? pf + term : pf - term;
  }
  return pf;
}

}  // namespace detail

inline bool is_skew(const GradedMatrix& M) {
  if (M.rows() != M.cols()) return false;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (!M(i, i).is_zero()) return false;
    for (std::size_t j = i + 1; j < M.cols(); ++j)
      if (!(M(i, j) + M(j, i)).is_zero()) return false;
  }
  return true;
}

/// The 2N x 2N Pfaffians of a skew (2N+1) x (2N+1) matrix, by expansion along the first row.
inline std::vector<Polynomial> pfaffian_generators(const GradedMatrix& M) {
  if (!is_skew(M)) throw UsageError("pfaffians: matrix is not skew-symmetric");
  if (M.rows() % 2 == 0) throw UsageError("pfaffians: matrix size must be odd");
  std::vector<Polynomial> out;
  for (std::size_t del = 0; del < M.rows(); ++del) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < M.rows(); ++i)
      if (i != del) idx.push_back(i);
    Polynomial pf = detail::pfaffian(M, idx);
    if (!pf.is_zero()) out.push_back(del % 2 ? -pf : pf);
  }
  return out;
}

inline Ideal pfaffians(const GradedMatrix& M) { return Ideal(M.ring(), pfaffian_generators(M)); }

struct ConstructionReport {
  std::int64_t degree = 0;
  BigInt predicted_degree = 0;
  bool degree_matches = false;
  GorensteinCertificate certificate;
  BettiTable betti;
  std::optional<ExpectedShape> shape;
  bool embeds = false;
  bool exact_shape = false;
  int regularity = 0;
};

/// Compare I_X with the predictions for the twists `spec`.
inline ConstructionReport verify_construction(const Ideal& I_X, const TwistSpec& spec) {
  ConstructionReport rep;
  rep.degree = I_X.degree();
  rep.predicted_degree = chern_coefficients(spec).expected_degree;
  rep.degree_matches = BigInt(rep.degree) == rep.predicted_degree;
  rep.certificate = is_arithmetically_gorenstein(I_X);
  rep.betti = rep.certificate.betti;
  rep.regularity = regularity(rep.betti);
  if (spec.r() >= 2 && spec.q() < spec.r()) {
    rep.shape = expected_resolution_general(spec);
    BettiTable predicted = rep.shape->betti();
    rep.embeds = embeds_with_ghost_pairs(predicted, rep.betti);
    rep.exact_shape = predicted == rep.betti;
  }
  return rep;
}

}  // namespace forge

#endif  // FORGE_CONSTRUCT_HPP
