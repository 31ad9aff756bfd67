#ifndef FORGE_RESOLUTION_HPP
#define FORGE_RESOLUTION_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "graded_matrix.hpp"

namespace forge {

/// Columns generating the kernel of M. The kernel is read off a Gröbner basis
/// of the columns (M_j ; e_j) in an order that eliminates the top block; with
/// `minimal` the generators are then thinned to a minimal homogeneous set.
inline GradedMatrix syzygy(const GradedMatrix& M, bool minimal = true) {
  const std::size_t r = M.rows(), c = M.cols();
  ModuleOrder order;
  for (std::size_t i = 0; i < r; ++i) order.add_component(0, M.row_twists()[i], Monomial::one(), static_cast<int>(i));
  for (std::size_t j = 0; j < c; ++j)
    order.add_component(1, M.col_twists()[j], Monomial::one(), static_cast<int>(r + j));
  std::vector<ModPoly> in;
  for (std::size_t j = 0; j < c; ++j) {
    ModPoly v;
    for (std::size_t i = 0; i < r; ++i)
      for (auto& t : M(i, j).terms()) v.push_back({t.mono, static_cast<std::uint32_t>(i), t.coeff});
    v.push_back({Monomial::one(), static_cast<std::uint32_t>(r + j), 1});
    in.push_back(std::move(v));
  }
  GroebnerOptions opt;
  opt.elimination_block = 1;
  auto res = groebner(std::move(in), order, M.ring().field, opt);

  ModuleOrder bottom = ModuleOrder::top(M.col_twists());
  std::vector<ModPoly> syz;
  for (auto& e : res.eliminated) {
    ModPoly v;
    for (auto& t : e) v.push_back({t.mono, static_cast<std::uint32_t>(t.comp - r), t.coeff});
    syz.push_back(normalize(std::move(v), bottom, M.ring().field));
  }
  if (minimal && !syz.empty()) {
    GroebnerOptions mopt;
    mopt.track_minimal = true;
    syz = groebner(std::move(syz), bottom, M.ring().field, mopt).minimal;
  }
  std::stable_sort(syz.begin(), syz.end(),
                   [&](const ModPoly& a, const ModPoly& b) { return bottom.degree(a.front()) < bottom.degree(b.front()); });
  return GradedMatrix::from_columns(M.ring(), M.col_twists(), syz, bottom);
}

/// Graded Betti numbers: (step, degree) -> rank, where degree d stands for
/// the summand R(-d) and step 0 holds the generators of the ideal.
struct BettiTable {
  std::map<std::pair<int, int>, int> ranks;

  static BettiTable from_steps(const std::vector<std::map<int, int>>& steps) {
    BettiTable b;
    for (std::size_t i = 0; i < steps.size(); ++i)
      for (auto [deg, r] : steps[i])
        if (r) b.ranks[{static_cast<int>(i), deg}] += r;
    return b;
  }

  int rank(int step, int degree) const {
    auto it = ranks.find({step, degree});
    return it == ranks.end() ? 0 : it->second;
  }

  int length() const {
    int l = 0;
    for (auto& [k, v] : ranks) l = std::max(l, k.first + 1);
    return l;
  }

  std::map<int, int> step(int i) const {
    std::map<int, int> m;
    for (auto& [k, v] : ranks)
      if (k.first == i) m[k.second] = v;
    return m;
  }

  int total_rank(int i) const {
    int s = 0;
    for (auto& [k, v] : ranks)
      if (k.first == i) s += v;
    return s;
  }

  /// Rows `step twist rank`, twist = -degree.
  std::string to_text() const {
    std::ostringstream os;
    for (auto& [k, v] : ranks) os << k.first << ' ' << -k.second << ' ' << v << '\n';
    return os.str();
  }

  /// "0 -> R(-9) -> ... -> 6R(-2)+R(-3)" style display, last step first.
  std::string display() const {
    std::ostringstream os;
    os << "0";
    for (int i = length() - 1; i >= 0; --i) {
      os << " -> ";
      bool first = true;
      for (auto [d, r] : step(i)) {
        if (!first) os << " + ";
        first = false;
        if (r != 1) os << r;
        os << "R(" << -d << ")";
      }
    }
    return os.str();
  }

  friend bool operator==(const BettiTable& a, const BettiTable& b) { return a.ranks == b.ranks; }
};

/// Free resolution of an ideal: maps[0] is the 1 x m row of generators,
/// maps[k] : F_k -> F_{k-1}.
struct Resolution {
  Ring ring;
  std::vector<GradedMatrix> maps;
  bool minimal = false;

  std::size_t length() const { return maps.size(); }
};

namespace detail {

inline GradedMatrix drop(const GradedMatrix& M, std::optional<std::size_t> row, std::optional<std::size_t> col) {
  std::vector<int> rt, ct;
  for (std::size_t i = 0; i < M.rows(); ++i)
    if (!row || i != *row) rt.push_back(M.row_twists()[i]);
  for (std::size_t j = 0; j < M.cols(); ++j)
    if (!col || j != *col) ct.push_back(M.col_twists()[j]);
  GradedMatrix out(M.ring(), rt, ct);
  std::size_t oi = 0;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (row && i == *row) continue;
    std::size_t oj = 0;
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (col && j == *col) continue;
      out.set(oi, oj, M(i, j));
      ++oj;
    }
    ++oi;
  }
  return out;
}

inline bool find_unit(const GradedMatrix& M, std::size_t& ui, std::size_t& uj) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero() && M(i, j).is_constant()) {
        ui = i;
        uj = j;
        return true;
      }
  return false;
}

}  // namespace detail

/// Remove every unit entry by Gaussian elimination, working from the
/// generator end. A unit u = d_k(i, j) splits off the trivial complex
/// R(-a) -> R(-a): d_k loses row i and column j (with the Schur complement
/// update), d_{k-1} loses column i and d_{k+1} loses row j.
inline Resolution minimize(Resolution res) {
  const PrimeField& F = res.ring.field;
  for (std::size_t k = 1; k < res.maps.size(); ++k) {
    std::size_t i, j;
    while (detail::find_unit(res.maps[k], i, j)) {
      const GradedMatrix& D = res.maps[k];
      Coeff inv = F.inv(D(i, j).leading().coeff);
      GradedMatrix upd = D;
      for (std::size_t a = 0; a < D.rows(); ++a) {
        if (a == i || D(a, j).is_zero()) continue;
        Polynomial factor = D(a, j).scaled(inv);
        for (std::size_t b = 0; b < D.cols(); ++b) {
          if (b == j || D(i, b).is_zero()) continue;
          upd.set(a, b, D(a, b) - factor * D(i, b));
        }
      }
      res.maps[k] = detail::drop(upd, i, j);
      res.maps[k - 1] = detail::drop(res.maps[k - 1], std::nullopt, i);
      if (k + 1 < res.maps.size()) res.maps[k + 1] = detail::drop(res.maps[k + 1], j, std::nullopt);
    }
  }
  while (!res.maps.empty() && res.maps.back().cols() == 0) res.maps.pop_back();
  res.minimal = true;
  return res;
}

/// Iterated syzygies until the kernel vanishes. With `minimize`, each step
/// uses minimal generators, which yields the minimal resolution directly.
/// Without it, every step keeps the raw kernel generators, except that the
/// step where the kernel is known to be free (Hilbert's syzygy theorem)
/// uses a basis.
inline Resolution free_resolution(const Ideal& I, bool minimize_steps = true) {
  Resolution res{I.ring(), {}, minimize_steps};
  if (I.is_zero()) return res;
  const std::size_t bound = static_cast<std::size_t>(I.nvars());
  if (minimize_steps) {
    res.maps.push_back(GradedMatrix::row_vector(I.ring(), I.minimal_generators()));
  } else {
    res.maps.push_back(GradedMatrix::row_vector(I.ring(), I.generators()));
  }
  while (true) {
    bool force_minimal = minimize_steps || res.maps.size() + 1 >= bound;
    GradedMatrix K = syzygy(res.maps.back(), force_minimal);
    if (K.cols() == 0) break;
    res.maps.push_back(std::move(K));
    if (res.maps.size() > bound) throw MathError("resolution longer than the Hilbert syzygy bound");
  }
  return res;
}

inline BettiTable betti(const Resolution& res) {
  BettiTable b;
  for (std::size_t k = 0; k < res.maps.size(); ++k)
    for (int d : res.maps[k].col_twists()) b.ranks[{static_cast<int>(k), d}] += 1;
  return b;
}

/// max over steps i of (largest degree at step i) - i; minimal resolutions only.
inline int regularity(const Resolution& res) {
  if (!res.minimal) throw UsageError("regularity requires a minimal resolution");
  int reg = INT_MIN;
  for (std::size_t k = 0; k < res.maps.size(); ++k)
    for (int d : res.maps[k].col_twists()) reg = std::max(reg, d - static_cast<int>(k));
  return reg;
}

inline int regularity(const BettiTable& b) {
  int reg = INT_MIN;
  for (auto& [k, v] : b.ranks)
    if (v) reg = std::max(reg, k.second - k.first);
  return reg;
}

/// Consecutive maps compose to zero.
inline bool is_complex(const Resolution& res) {
  for (std::size_t k = 1; k < res.maps.size(); ++k)
    if (!(res.maps[k - 1] * res.maps[k]).is_zero()) return false;
  return true;
}

/// Numerator of the Hilbert series of R/I read off a resolution of I:
/// Q(t) = 1 - sum_i (-1)^i sum_d beta_{i,d} t^d.
inline Series hilbert_numerator(const BettiTable& b) {
  Series q{1};
  for (auto& [k, v] : b.ranks) {
    auto [step, deg] = k;
    if (deg < 0) throw UsageError("negative degree in a resolution of an ideal");
    if (q.size() <= static_cast<std::size_t>(deg)) q.resize(deg + 1, 0);
    q[deg] += (step % 2 == 0 ? -1 : 1) * static_cast<std::int64_t>(v);
  }
  trim(q);
  return q;
}

/// Twist-by-twist embedding of `actual` into `predicted` where the surplus
/// consists only of ghost pairs R(-d) in adjacent steps i, i+1.
inline bool embeds_with_ghost_pairs(const BettiTable& predicted, const BettiTable& actual) {
  std::map<int, std::map<int, int>> diff;  // degree -> step -> surplus
  for (auto& [k, v] : predicted.ranks) diff[k.second][k.first] += v;
  for (auto& [k, v] : actual.ranks) diff[k.second][k.first] -= v;
  for (auto& [deg, steps] : diff) {
    if (steps.empty()) continue;
    int lo = steps.begin()->first, hi = steps.rbegin()->first;
    int carry = 0;
    for (int i = lo; i <= hi + 1; ++i) {
      int x = (steps.count(i) ? steps.at(i) : 0) - carry;
      if (x < 0) return false;
      carry = x;
    }
    if (carry != 0) return false;
  }
  return true;
}

struct GorensteinCertificate {
  int codim = 0;
  int projective_dimension = 0;  // of R/I
  bool cohen_macaulay = false;
  int last_rank = 0;
  bool symmetric_h = false;
  bool gorenstein = false;
  Series h_vector;
  BettiTable betti;
};

inline bool is_symmetric(const Series& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != h[h.size() - 1 - i]) return false;
  return !h.empty();
}

/// Gorenstein test for R/I: Cohen-Macaulay (pd = codim), last Betti rank 1,
/// symmetric h-vector. Each sub-check is reported.
inline GorensteinCertificate is_arithmetically_gorenstein(const Ideal& I) {
  GorensteinCertificate c;
  const HilbertReport& h = I.hilbert();
  c.codim = h.codim;
  c.h_vector = h.second_series;
  Resolution res = free_resolution(I, true);
  c.betti = betti(res);
  c.projective_dimension = static_cast<int>(res.length());
  c.cohen_macaulay = c.projective_dimension == c.codim;
  c.last_rank = res.maps.empty() ? 0 : static_cast<int>(res.maps.back().cols());
  c.symmetric_h = is_symmetric(c.h_vector);
  c.gorenstein = c.cohen_macaulay && c.last_rank == 1 && c.symmetric_h;
  return c;
}

}  // namespace forge

#endif  // FORGE_RESOLUTION_HPP
