#ifndef FORGE_GROEBNER_ENGINE_HPP
#define FORGE_GROEBNER_ENGINE_HPP

#include <algorithm>
#include <climits>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "module_order.hpp"

namespace forge {

struct GroebnerOptions {
  /// Buchberger's first criterion. Only valid for ideals (rank 1, no elimination).
  bool product_criterion = false;
  /// Elements whose leading term lies in a block >= this value are set aside
  /// in `eliminated` and never paired. -1 disables elimination.
  int elimination_block = -1;
  /// Record which inputs are minimal generators of the submodule.
  bool track_minimal = false;
};

struct GroebnerResult {
  /// Reduced, monic Gröbner basis (leading terms outside eliminated blocks).
  std::vector<ModPoly> basis;
  /// Reduced forms of the inputs that are minimal generators, by degree.
  std::vector<ModPoly> minimal;
  std::vector<std::size_t> minimal_inputs;
  /// Elements with leading term in an eliminated block; together they generate
  /// the intersection of the submodule with the eliminated components.
  std::vector<ModPoly> eliminated;
};

namespace detail {

struct TermKey {
  Monomial mono;
  std::uint32_t comp;
  friend bool operator==(const TermKey& a, const TermKey& b) { return a.comp == b.comp && a.mono == b.mono; }
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const noexcept {
    return MonomialHash{}(k.mono) ^ (static_cast<std::size_t>(k.comp) * 0x9E3779B97F4A7C15ULL);
  }
};

struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<Coeff> vals;
};

/// Homogeneous Buchberger algorithm. Critical pairs are selected by degree
/// (the sugar degree on homogeneous input) and every pair of the current
/// degree is reduced at once by sparse linear algebra over GF(p) against
/// monomial multiples of the current basis. Pairs are pruned with the
/// Gebauer-Möller installation of Buchberger's chain criterion (and the
/// product criterion when enabled).
class BuchbergerEngine {
public:
  BuchbergerEngine(const ModuleOrder& order, const PrimeField& F, GroebnerOptions opt)
      : order_(order), F_(F), opt_(opt) {}

  GroebnerResult run(std::vector<ModPoly> inputs) {
    std::vector<std::pair<int, std::size_t>> by_degree;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      inputs[i] = normalize(std::move(inputs[i]), order_, F_);
      if (inputs[i].empty()) continue;
      int d = order_.degree(inputs[i].front());
      for (auto& t : inputs[i])
        if (order_.degree(t) != d) throw UsageError("Gröbner basis input is not homogeneous");
      if (eliminated_block(inputs[i].front())) {
        result_.eliminated.push_back(make_monic(inputs[i], F_));
        continue;
      }
      by_degree.emplace_back(d, i);
    }
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [](auto& a, auto& b) { return a.first < b.first; });

    std::size_t next = 0;
    while (next < by_degree.size() || !pairs_.empty()) {
      int D = INT_MAX;
      if (next < by_degree.size()) D = by_degree[next].first;
      for (auto& p : pairs_) D = std::min(D, p.deg);

      std::vector<ModPoly> rows;
      std::vector<long> source;  // -1 for S-polynomials, input index otherwise
      std::vector<Pair> rest;
      for (auto& p : pairs_) {
        if (p.deg != D) {
          rest.push_back(p);
          continue;
        }
        const Elem& a = basis_[p.i];
        const Elem& b = basis_[p.j];
        ModPoly s = axpy(times(a.poly, quotient(p.lcm, a.lm), 1, F_), F_.neg(1),
                         times(b.poly, quotient(p.lcm, b.lm), 1, F_), order_, F_);
        if (!s.empty()) {
          rows.push_back(std::move(s));
          source.push_back(-1);
        }
      }
      pairs_.swap(rest);
      while (next < by_degree.size() && by_degree[next].first == D) {
        rows.push_back(inputs[by_degree[next].second]);
        source.push_back(static_cast<long>(by_degree[next].second));
        ++next;
      }
      if (!rows.empty()) process_degree(rows, source);
    }

    for (auto& e : basis_)
      if (!e.redundant) result_.basis.push_back(std::move(e.poly));
    return std::move(result_);
  }

private:
  struct Elem {
    ModPoly poly;
    Monomial lm;
    std::uint32_t comp;
    bool redundant = false;
  };
  struct Pair {
    int i, j;
    Monomial lcm;
    std::uint32_t comp;
    int deg;
  };

  bool eliminated_block(const MTerm& t) const {
    return opt_.elimination_block >= 0 && order_.block(t.comp) >= opt_.elimination_block;
  }

  int find_reducer(const Monomial& m, std::uint32_t comp) const {
    int best = -1;
    std::size_t best_size = SIZE_MAX;
    if (comp >= by_comp_.size()) return -1;
    for (int idx : by_comp_[comp]) {
      const Elem& e = basis_[idx];
      if (divides(e.lm, m) && e.poly.size() < best_size) {
        best = idx;
        best_size = e.poly.size();
      }
    }
    return best;
  }

  void process_degree(const std::vector<ModPoly>& rows, const std::vector<long>& source) {
    // Symbolic preprocessing: collect every term and a reducer for each
    // term divisible by a leading term of the basis.
    std::unordered_map<TermKey, std::uint32_t, TermKeyHash> id_of;
    std::vector<TermKey> keys;
    std::vector<ModPoly> reducers;
    std::vector<long> reducer_of_key;
    auto intern = [&](const MTerm& t) {
      TermKey k{t.mono, t.comp};
      auto it = id_of.find(k);
      if (it != id_of.end()) return it->second;
      auto id = static_cast<std::uint32_t>(keys.size());
      id_of.emplace(k, id);
      keys.push_back(k);
      return id;
    };
    for (auto& r : rows)
      for (auto& t : r) intern(t);
    for (std::size_t k = 0; k < keys.size(); ++k) {
      TermKey key = keys[k];
      int g = find_reducer(key.mono, key.comp);
      if (g < 0) {
        reducer_of_key.push_back(-1);
        continue;
      }
      reducer_of_key.push_back(static_cast<long>(reducers.size()));
      reducers.push_back(times(basis_[g].poly, quotient(key.mono, basis_[g].lm), 1, F_));
      for (auto& t : reducers.back()) intern(t);
    }

    const std::size_t ncols = keys.size();
    std::vector<std::uint32_t> order_ids(ncols);
    std::iota(order_ids.begin(), order_ids.end(), 0u);
    std::sort(order_ids.begin(), order_ids.end(), [&](std::uint32_t a, std::uint32_t b) {
      return order_.compare(keys[a].mono, keys[a].comp, keys[b].mono, keys[b].comp) > 0;
    });
    std::vector<std::uint32_t> col_of(ncols);
    for (std::size_t c = 0; c < ncols; ++c) col_of[order_ids[c]] = static_cast<std::uint32_t>(c);

    auto to_sparse = [&](const ModPoly& p) {
      SparseRow r;
      r.cols.reserve(p.size());
      r.vals.reserve(p.size());
      for (auto& t : p) {
        r.cols.push_back(col_of[id_of.at(TermKey{t.mono, t.comp})]);
        r.vals.push_back(t.coeff);
      }
      return r;
    };

    std::vector<SparseRow> red_rows;
    red_rows.reserve(reducers.size());
    std::vector<const SparseRow*> pivot(ncols, nullptr);
    for (auto& r : reducers) red_rows.push_back(to_sparse(r));
    for (auto& r : red_rows) pivot[r.cols.front()] = &r;

    const std::uint64_t p = F_.characteristic();
    std::vector<std::uint64_t> dense(ncols, 0);

    std::vector<SparseRow> accepted;
    accepted.reserve(rows.size());
    std::vector<long> accepted_source;
    std::vector<std::size_t> accepted_index_of_pivot(ncols, SIZE_MAX);

    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
      SparseRow r = to_sparse(rows[ri]);
      if (r.cols.empty()) continue;
      std::uint32_t start = r.cols.front();
      for (std::size_t k = 0; k < r.cols.size(); ++k) dense[r.cols[k]] = r.vals[k];
      long lead = -1;
      for (std::size_t c = start; c < ncols; ++c) {
        std::uint64_t v = dense[c] % p;
        dense[c] = v;
        if (!v) continue;
        const SparseRow* piv = pivot[c];
        if (!piv) {
          if (lead < 0) lead = static_cast<long>(c);
          continue;
        }
        std::uint64_t m = p - v;
        for (std::size_t k = 0; k < piv->cols.size(); ++k) {
          std::uint32_t cc = piv->cols[k];
          dense[cc] = (dense[cc] + m * piv->vals[k]) % p;
        }
      }
      if (lead < 0) {
        std::fill(dense.begin() + start, dense.end(), 0);
        continue;
      }
      SparseRow out;
      Coeff inv = F_.inv(static_cast<Coeff>(dense[lead]));
      for (std::size_t c = static_cast<std::size_t>(lead); c < ncols; ++c) {
        if (dense[c]) {
          out.cols.push_back(static_cast<std::uint32_t>(c));
          out.vals.push_back(F_.mul(static_cast<Coeff>(dense[c]), inv));
        }
      }
      std::fill(dense.begin() + start, dense.end(), 0);
      accepted_index_of_pivot[lead] = accepted.size();
      accepted.push_back(std::move(out));
      accepted_source.push_back(source[ri]);
      pivot[lead] = &accepted.back();  // capacity reserved, pointer stays valid
    }

    // Back substitution so the new rows are in reduced echelon form.
    for (std::size_t ai = accepted.size(); ai-- > 0;) {
      SparseRow& a = accepted[ai];
      bool touched = false;
      for (std::size_t k = 1; k < a.cols.size(); ++k)
        if (accepted_index_of_pivot[a.cols[k]] != SIZE_MAX) {
          touched = true;
          break;
        }
      if (!touched) continue;
      std::uint32_t start = a.cols.front();
      for (std::size_t k = 0; k < a.cols.size(); ++k) dense[a.cols[k]] = a.vals[k];
      for (std::size_t c = start + 1; c < ncols; ++c) {
        std::uint64_t v = dense[c] % p;
        dense[c] = v;
        if (!v) continue;
        std::size_t j = accepted_index_of_pivot[c];
        if (j == SIZE_MAX) continue;
        const SparseRow& piv = accepted[j];
        std::uint64_t m = p - v;
        for (std::size_t k = 0; k < piv.cols.size(); ++k) {
          std::uint32_t cc = piv.cols[k];
          dense[cc] = (dense[cc] + m * piv.vals[k]) % p;
        }
      }
      SparseRow out;
      for (std::size_t c = start; c < ncols; ++c)
        if (dense[c]) {
          out.cols.push_back(static_cast<std::uint32_t>(c));
          out.vals.push_back(static_cast<Coeff>(dense[c]));
        }
      std::fill(dense.begin() + start, dense.end(), 0);
      a = std::move(out);
    }

    for (std::size_t ai = 0; ai < accepted.size(); ++ai) {
      ModPoly poly;
      poly.reserve(accepted[ai].cols.size());
      for (std::size_t k = 0; k < accepted[ai].cols.size(); ++k) {
        const TermKey& key = keys[order_ids[accepted[ai].cols[k]]];
        poly.push_back({key.mono, key.comp, accepted[ai].vals[k]});
      }
      if (accepted_source[ai] >= 0 && opt_.track_minimal) {
        result_.minimal.push_back(poly);
        result_.minimal_inputs.push_back(static_cast<std::size_t>(accepted_source[ai]));
      }
      if (eliminated_block(poly.front())) {
        result_.eliminated.push_back(std::move(poly));
      } else {
        add_to_basis(std::move(poly));
      }
    }
  }

  void add_to_basis(ModPoly poly) {
    Elem h{std::move(poly), {}, 0};
    h.lm = h.poly.front().mono;
    h.comp = h.poly.front().comp;
    int hi = static_cast<int>(basis_.size());

    struct Cand {
      int g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (int g = 0; g < hi; ++g) {
      const Elem& e = basis_[g];
      if (e.redundant || e.comp != h.comp) continue;
      cands.push_back({g, lcm(e.lm, h.lm), opt_.product_criterion && coprime(e.lm, h.lm)});
    }
    // Chain criterion among the new pairs.
    std::vector<Cand> kept;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const Cand& c = cands[k];
      bool drop = false;
      if (!c.coprime) {
        for (std::size_t l = k + 1; l < cands.size() && !drop; ++l)
          if (divides(cands[l].lcm, c.lcm)) drop = true;
        for (std::size_t l = 0; l < kept.size() && !drop; ++l)
          if (divides(kept[l].lcm, c.lcm)) drop = true;
      }
      if (!drop) kept.push_back(c);
    }
    // Old pairs made superfluous by h.
    std::vector<Pair> remaining;
    remaining.reserve(pairs_.size());
    for (auto& pr : pairs_) {
      if (pr.comp == h.comp && divides(h.lm, pr.lcm)) {
        Monomial l1 = lcm(basis_[pr.i].lm, h.lm);
        Monomial l2 = lcm(basis_[pr.j].lm, h.lm);
        if (!(l1 == pr.lcm) && !(l2 == pr.lcm)) continue;
      }
      remaining.push_back(pr);
    }
    pairs_.swap(remaining);
    for (auto& c : kept) {
      if (c.coprime) continue;
      pairs_.push_back({c.g, hi, c.lcm, h.comp, order_.degree(c.lcm, h.comp)});
    }
    for (int g = 0; g < hi; ++g) {
      Elem& e = basis_[g];
      if (!e.redundant && e.comp == h.comp && divides(h.lm, e.lm)) e.redundant = true;
    }
    if (by_comp_.size() <= h.comp) by_comp_.resize(h.comp + 1);
    by_comp_[h.comp].push_back(hi);
    basis_.push_back(std::move(h));
  }

  const ModuleOrder& order_;
  PrimeField F_;
  GroebnerOptions opt_;
  std::vector<Elem> basis_;
  std::vector<std::vector<int>> by_comp_;
  std::vector<Pair> pairs_;
  GroebnerResult result_;
};

}  // namespace detail

inline GroebnerResult groebner(std::vector<ModPoly> inputs, const ModuleOrder& order, const PrimeField& F,
                               GroebnerOptions opt = {}) {
  return detail::BuchbergerEngine(order, F, opt).run(std::move(inputs));
}

/// Full division of f by the list G (not necessarily a Gröbner basis).
/// The result has no term divisible by a leading term of G and differs
/// from f by an element of the submodule generated by G.
inline ModPoly normal_form(ModPoly f, const std::vector<ModPoly>& G, const ModuleOrder& order, const PrimeField& F) {
  ModPoly rem;
  std::size_t pos = 0;
  while (pos < f.size()) {
    const MTerm lt = f[pos];
    const ModPoly* red = nullptr;
    for (auto& g : G)
      if (!g.empty() && g.front().comp == lt.comp && divides(g.front().mono, lt.mono)) {
        red = &g;
        break;
      }
    if (!red) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    Coeff c = F.neg(F.mul(lt.coeff, F.inv(red->front().coeff)));
    ModPoly tail(f.begin() + static_cast<long>(pos), f.end());
    f = axpy(tail, c, times(*red, quotient(lt.mono, red->front().mono), 1, F), order, F);
    pos = 0;
  }
  return rem;
}

}  // namespace forge

#endif  // FORGE_GROEBNER_ENGINE_HPP
