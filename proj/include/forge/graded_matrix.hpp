#ifndef FORGE_GRADED_MATRIX_HPP
#define FORGE_GRADED_MATRIX_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ideal.hpp"

namespace forge {

/// Element of the graded free module sum_i R(-twist_i).
/// Homogeneous of degree D iff deg(entry_i) + twist_i = D for all nonzero entries.
struct FreeModuleElement {
  std::vector<Polynomial> entries;
  std::vector<int> twists;

  std::optional<int> degree() const {
    std::optional<int> d;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].is_zero()) continue;
      auto h = entries[i].homogeneity();
      if (!h.first) return std::nullopt;
      int e = *h.second + twists[i];
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return d;
  }

  bool is_homogeneous() const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (!entries[i].is_zero()) return degree().has_value();
    return true;
  }

  bool is_zero() const {
    for (auto& e : entries)
      if (!e.is_zero()) return false;
    return true;
  }
};

/// Degree-zero map  sum_j R(-col_twist_j) -> sum_i R(-row_twist_i).
/// Entry (i, j) is zero or homogeneous of degree col_twist_j - row_twist_i.
class GradedMatrix {
public:
  GradedMatrix(Ring ring, std::vector<int> row_twists, std::vector<int> col_twists)
      : ring_(ring), row_twists_(std::move(row_twists)), col_twists_(std::move(col_twists)),
        entries_(row_twists_.size() * col_twists_.size(), Polynomial(ring)) {}

  /// Build from entries. Missing twists are derived by propagation along
  /// nonzero entries, anchoring the first row of each connected block at 0.
  static GradedMatrix from_rows(Ring ring, const std::vector<std::vector<Polynomial>>& rows,
                                std::optional<std::vector<int>> row_twists = std::nullopt,
                                std::optional<std::vector<int>> col_twists = std::nullopt) {
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows[0].size() : 0;
    for (auto& r : rows)
      if (r.size() != nc) throw UsageError("matrix rows have different lengths");
    std::vector<std::optional<int>> rt(nr), ct(nc);
    if (row_twists) {
      if (row_twists->size() != nr) throw UsageError("row twist count does not match the matrix");
      for (std::size_t i = 0; i < nr; ++i) rt[i] = (*row_twists)[i];
    }
    if (col_twists) {
      if (col_twists->size() != nc) throw UsageError("column twist count does not match the matrix");
      for (std::size_t j = 0; j < nc; ++j) ct[j] = (*col_twists)[j];
    }
    auto deg = [&](std::size_t i, std::size_t j) -> std::optional<int> {
      const Polynomial& p = rows[i][j];
      if (p.is_zero()) return std::nullopt;
      auto h = p.homogeneity();
      if (!h.first) throw UsageError("matrix entry is not homogeneous: " + p.to_string());
      return h.second;
    };
    // Propagate along nonzero entries; each untouched component is anchored at 0.
    while (true) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < nr; ++i)
          for (std::size_t j = 0; j < nc; ++j) {
            auto d = deg(i, j);
            if (!d) continue;
            if (rt[i] && !ct[j]) {
              ct[j] = *rt[i] + *d;
              changed = true;
            } else if (ct[j] && !rt[i]) {
              rt[i] = *ct[j] - *d;
              changed = true;
            }
          }
      }
      auto unset = std::find_if(rt.begin(), rt.end(), [](auto& r) { return !r.has_value(); });
      if (unset == rt.end()) break;
      *unset = 0;
    }
    std::vector<int> R(nr), C(nc);
    for (std::size_t i = 0; i < nr; ++i) R[i] = rt[i].value_or(0);
    for (std::size_t j = 0; j < nc; ++j) C[j] = ct[j].value_or(0);
    GradedMatrix M(ring, R, C);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) M.set(i, j, rows[i][j]);
    return M;
  }

  /// 1 x m matrix of the given forms, row twist 0.
  static GradedMatrix row_vector(Ring ring, const std::vector<Polynomial>& forms) {
    std::vector<int> ct;
    for (auto& f : forms) {
      if (f.is_zero()) throw UsageError("zero entry in a generator row");
      ct.push_back(f.degree());
    }
    GradedMatrix M(ring, {0}, ct);
    for (std::size_t j = 0; j < forms.size(); ++j) M.set(0, j, forms[j]);
    return M;
  }

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return row_twists_.size(); }
  std::size_t cols() const { return col_twists_.size(); }
  const std::vector<int>& row_twists() const { return row_twists_; }
  const std::vector<int>& col_twists() const { return col_twists_; }

  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }

  void set(std::size_t i, std::size_t j, Polynomial p) {
    if (!(p.ring() == ring_)) throw UsageError("matrix entry from a different ring");
    if (!p.is_zero()) {
      auto h = p.homogeneity();
      int want = col_twists_[j] - row_twists_[i];
      if (!h.first || *h.second != want)
        throw UsageError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + p.to_string() +
                         " is not homogeneous of degree " + std::to_string(want));
    }
    entries_[i * cols() + j] = std::move(p);
  }

  FreeModuleElement column(std::size_t j) const {
    FreeModuleElement e;
    e.twists = row_twists_;
    for (std::size_t i = 0; i < rows(); ++i) e.entries.push_back((*this)(i, j));
    return e;
  }

  std::vector<Polynomial> entries() const { return entries_; }

  bool is_zero() const {
    for (auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  GradedMatrix transpose() const {
    std::vector<int> rt, ct;
    for (int c : col_twists_) rt.push_back(-c);
    for (int r : row_twists_) ct.push_back(-r);
    GradedMatrix T(ring_, rt, ct);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) T.set(j, i, (*this)(i, j));
    return T;
  }

  /// Columns as module elements (component = row index).
  std::vector<ModPoly> column_vectors(const ModuleOrder& order) const {
    std::vector<ModPoly> out;
    for (std::size_t j = 0; j < cols(); ++j) {
      ModPoly v;
      for (std::size_t i = 0; i < rows(); ++i)
        for (auto& t : (*this)(i, j).terms()) v.push_back({t.mono, static_cast<std::uint32_t>(i), t.coeff});
      out.push_back(normalize(std::move(v), order, ring_.field));
    }
    return out;
  }

  /// Matrix whose columns are the given vectors in the free module with the given row twists.
  static GradedMatrix from_columns(Ring ring, std::vector<int> row_twists, const std::vector<ModPoly>& cols_in,
                                   const ModuleOrder& order) {
    std::vector<int> ct;
    for (auto& v : cols_in) {
      if (v.empty()) throw MathError("zero column");
      ct.push_back(order.degree(v.front()));
    }
    GradedMatrix M(ring, row_twists, ct);
    for (std::size_t j = 0; j < cols_in.size(); ++j) {
      std::vector<std::vector<Term>> per_row(row_twists.size());
      for (auto& t : cols_in[j]) per_row[t.comp].push_back({t.mono, t.coeff});
      for (std::size_t i = 0; i < row_twists.size(); ++i)
        M.set(i, j, Polynomial::from_terms(ring, std::move(per_row[i])));
    }
    return M;
  }

  friend GradedMatrix operator*(const GradedMatrix& A, const GradedMatrix& B) {
    if (A.cols() != B.rows()) throw UsageError("matrix product: dimension mismatch");
    if (A.col_twists_ != B.row_twists_) throw UsageError("matrix product: twist mismatch");
    GradedMatrix C(A.ring_, A.row_twists_, B.col_twists_);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j) {
        Polynomial s(A.ring_);
        for (std::size_t k = 0; k < A.cols(); ++k) {
          if (A(i, k).is_zero() || B(k, j).is_zero()) continue;
          s = s + A(i, k) * B(k, j);
        }
        C.set(i, j, std::move(s));
      }
    return C;
  }

  /// Ideal generated by all k x k minors (cofactor expansion along the first row of each submatrix).
  std::vector<Polynomial> minors(std::size_t k) const {
    if (k == 0 || k > rows() || k > cols()) throw UsageError("minor size out of range");
    std::vector<Polynomial> out;
    std::vector<std::size_t> rsel(k), csel(k);
    auto next_comb = [](std::vector<std::size_t>& s, std::size_t n) {
      std::size_t k2 = s.size();
      for (std::size_t i = k2; i-- > 0;) {
        if (s[i] < n - k2 + i) {
          ++s[i];
          for (std::size_t j = i + 1; j < k2; ++j) s[j] = s[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < k; ++i) rsel[i] = i;
    do {
      for (std::size_t i = 0; i < k; ++i) csel[i] = i;
      do {
        Polynomial d = determinant(rsel, csel);
        if (!d.is_zero()) out.push_back(std::move(d));
      } while (next_comb(csel, cols()));
    } while (next_comb(rsel, rows()));
    return out;
  }

  Polynomial determinant(const std::vector<std::size_t>& rsel, const std::vector<std::size_t>& csel) const {
    if (rsel.size() == 1) return (*this)(rsel[0], csel[0]);
    Polynomial d(ring_);
    std::vector<std::size_t> rest(rsel.begin() + 1, rsel.end());
    for (std::size_t c = 0; c < csel.size(); ++c) {
      const Polynomial& a = (*this)(rsel[0], csel[c]);
      if (a.is_zero()) continue;
      std::vector<std::size_t> sub;
      for (std::size_t k = 0; k < csel.size(); ++k)
        if (k != c) sub.push_back(csel[k]);
      Polynomial m = a * determinant(rest, sub);
      d = (c % 2 == 0) ? d + m : d - m;
    }
    return d;
  }

  friend bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
    return a.ring_ == b.ring_ && a.row_twists_ == b.row_twists_ && a.col_twists_ == b.col_twists_ &&
           a.entries_ == b.entries_;
  }

private:
  Ring ring_;
  std::vector<int> row_twists_;
  std::vector<int> col_twists_;
  std::vector<Polynomial> entries_;
};

inline Ideal minors_ideal(const GradedMatrix& M, std::size_t t) { return Ideal(M.ring(), M.minors(t)); }

/// Ideal of the entries of a module element.
inline Ideal entry_ideal(const FreeModuleElement& s, const Ring& ring) { return Ideal(ring, s.entries); }

}  // namespace forge

#endif  // FORGE_GRADED_MATRIX_HPP
