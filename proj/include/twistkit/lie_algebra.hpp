#pragma once

// Finite-dimensional Lie algebras given by structure constants, and PBW
// straightening of words in their generators.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/scalar.hpp"

namespace twistkit {

/// Non-decreasing list of generator indices; the empty monomial is 1.
using Monomial = std::vector<int>;
/// Linear combination of PBW monomials with no zero coefficients stored.
using PbwTerms = std::map<Monomial, Scalar>;

inline void accumulate(PbwTerms& into, const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }
}

struct LieViolation {
  enum class Kind { antisymmetry, jacobi };
  Kind kind;
  int i, j, k;  // index triple; for jacobi (i,j,k) is the generator triple and the failing component is `component`
  int component = -1;
  std::string message;
};

class LieAlgebra {
public:
  using Combination = std::vector<std::pair<int, Scalar>>;

  /// `structure[i][j]` is the expansion of [X_i, X_j]. Missing rows are zero.
  LieAlgebra(std::vector<std::string> names, std::vector<std::vector<Combination>> structure)
      : names_(std::move(names)), structure_(std::move(structure)) {
    const int n = dim();
    if (n <= 0) throw DomainError("a Lie algebra needs at least one generator");
    structure_.resize(n);
    for (auto& row : structure_) row.resize(n);
    for (const auto& row : structure_)
      for (const auto& comb : row)
        for (const auto& [k, c] : comb)
          if (k < 0 || k >= n) throw StructuralError("structure constant refers to generator index " + std::to_string(k));
  }

  /// Abelian algebra on the given generators.
  static std::shared_ptr<const LieAlgebra> abelian(std::vector<std::string> names) {
    return std::make_shared<const LieAlgebra>(std::move(names), std::vector<std::vector<Combination>>{});
  }

  /// Convenience builder: each rule sets [X_i, X_j] and, unless set explicitly
  /// elsewhere, [X_j, X_i] as its negative.
  static std::shared_ptr<const LieAlgebra> from_rules(
      std::vector<std::string> names, const std::vector<std::tuple<int, int, Combination>>& rules) {
    const int n = static_cast<int>(names.size());
    std::vector<std::vector<Combination>> s(n, std::vector<Combination>(n));
    std::vector<std::vector<bool>> explicit_set(n, std::vector<bool>(n, false));
    for (const auto& [i, j, comb] : rules) {
      if (i < 0 || j < 0 || i >= n || j >= n) throw StructuralError("bracket rule index out of range");
      s[i][j] = comb;
      explicit_set[i][j] = true;
    }
    for (const auto& [i, j, comb] : rules) {
      if (explicit_set[j][i]) continue;
      Combination neg;
      for (const auto& [k, c] : comb) neg.emplace_back(k, -c);
      s[j][i] = neg;
    }
    return std::make_shared<const LieAlgebra>(std::move(names), std::move(s));
  }

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  int index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
  }

  /// Coefficient of X_k in [X_i, X_j].
  Scalar constant(int i, int j, int k) const {
    Scalar out;
    for (const auto& [kk, c] : structure_[i][j])
      if (kk == k) out += c;
    return out;
  }
  const Combination& bracket(int i, int j) const { return structure_[i][j]; }

  bool is_abelian() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        for (int k = 0; k < dim(); ++k)
          if (!constant(i, j, k).is_zero()) return false;
    return true;
  }

  /// Every violated antisymmetry or Jacobi instance; empty iff the table
  /// defines a Lie algebra.
  std::vector<LieViolation> validate() const {
    std::vector<LieViolation> out;
    const int n = dim();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Scalar a = constant(i, j, k), b = constant(j, i, k);
          if (!(a + b).is_zero()) {
            std::ostringstream msg;
            msg << "antisymmetry violated at (" << name(i) << "," << name(j) << "," << name(k) << "): c = " << a
                << " but c(swapped) = " << b;
            out.push_back({LieViolation::Kind::antisymmetry, i, j, k, -1, msg.str()});
          }
        }
    // [X_i,[X_j,X_l]] + [X_j,[X_l,X_i]] + [X_l,[X_i,X_j]] = 0
    auto nested = [&](int a, int b, int c, int comp) {
      Scalar s;
      for (int m = 0; m < n; ++m) s += constant(b, c, m) * constant(a, m, comp);
      return s;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int l = j; l < n; ++l)
          for (int comp = 0; comp < n; ++comp) {
            Scalar s = nested(i, j, l, comp) + nested(j, l, i, comp) + nested(l, i, j, comp);
            if (!s.is_zero()) {
              std::ostringstream msg;
              msg << "Jacobi identity violated for (" << name(i) << "," << name(j) << "," << name(l)
                  << ") in component " << name(comp) << ": " << s;
              out.push_back({LieViolation::Kind::jacobi, i, j, l, comp, msg.str()});
            }
          }
    return out;
  }

  /// Normal form of a word X_{w0} X_{w1} ... in the PBW basis ordered by
  /// declaration order. Results are memoized.
  PbwTerms normal_form(const std::vector<int>& word) const {
    if (std::is_sorted(word.begin(), word.end())) return PbwTerms{{word, Scalar(1)}};
    {
      std::lock_guard lock(cache_mutex_);
      auto it = cache_.find(word);
      if (it != cache_.end()) return it->second;
    }
    std::size_t pos = 0;
    while (word[pos] <= word[pos + 1]) ++pos;
    const int a = word[pos], b = word[pos + 1];
    // X_a X_b = X_b X_a + [X_a, X_b]
    std::vector<int> swapped = word;
    std::swap(swapped[pos], swapped[pos + 1]);
    PbwTerms result = normal_form(swapped);
    for (const auto& [k, c] : structure_[a][b]) {
      if (c.is_zero()) continue;
      std::vector<int> shorter;
      shorter.reserve(word.size() - 1);
      shorter.insert(shorter.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
      shorter.push_back(k);
      shorter.insert(shorter.end(), word.begin() + static_cast<std::ptrdiff_t>(pos) + 2, word.end());
      for (const auto& [m, mc] : normal_form(shorter)) accumulate(result, m, mc * c);
    }
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(word, result);
    return result;
  }

  std::string render(const Monomial& m) const {
    if (m.empty()) return "1";
    std::string out;
    for (std::size_t p = 0; p < m.size();) {
      std::size_t q = p;
      while (q < m.size() && m[q] == m[p]) ++q;
      if (!out.empty()) out += "*";
      out += name(m[p]);
      if (q - p > 1) out += "^" + std::to_string(q - p);
      p = q;
    }
    return out;
  }

private:
  std::vector<std::string> names_;
  std::vector<std::vector<Combination>> structure_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::vector<int>, PbwTerms> cache_;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

}  // namespace twistkit
