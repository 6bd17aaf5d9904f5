#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"
#include "number.hpp"

namespace nearvec {

/// The field size data p, n and the modulus M = p^n - 1.
class GroupParams {
 public:
  static constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 32;

  GroupParams(std::uint64_t p, unsigned n) : p_(p), n_(n) {
    if (!is_prime(p)) {
      throw Error(ErrorKind::InvalidArgument,
                  "p = " + std::to_string(p) + " is not prime");
    }
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    const auto order = checked_pow(p, n);
    if (!order || *order - 1 >= kModulusLimit) {
      throw Error(ErrorKind::InvalidArgument,
                  "p^n - 1 must be below 2^32 (p = " + std::to_string(p) +
                      ", n = " + std::to_string(n) + ")");
    }
    modulus_ = *order - 1;
  }

  std::uint64_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t field_order() const noexcept { return modulus_ + 1; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  /// GF(2): the modulus is 1 and G collapses to the trivial group.
  bool degenerate() const noexcept { return modulus_ == 1; }

  friend bool operator==(const GroupParams&, const GroupParams&) = default;

 private:
  std::uint64_t p_;
  unsigned n_;
  std::uint64_t modulus_ = 0;
};

/// A canonical coset representative of U(M)/<p>.
struct GroupElement {
  std::uint64_t value = 1;

  constexpr GroupElement() = default;
  constexpr explicit GroupElement(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(GroupElement, GroupElement) = default;
  friend std::ostream& operator<<(std::ostream& os, GroupElement e) {
    return os << e.value;
  }
};

inline constexpr GroupElement kIdentity{1};

/// The powers 1, p, ..., p^{n-1} reduced mod M, ascending.
inline std::vector<std::uint64_t> p_coset(const GroupParams& params) {
  if (params.degenerate()) {
    throw Error(ErrorKind::DegenerateModulus,
                "<p> is undefined when p^n - 1 = 1");
  }
  std::vector<std::uint64_t> powers;
  powers.reserve(params.n());
  std::uint64_t x = 1;
  for (unsigned i = 0; i < params.n(); ++i) {
    powers.push_back(x);
    x = mulmod(x, params.p(), params.modulus());
  }
  std::sort(powers.begin(), powers.end());
  return powers;
}

/// G = U(p^n - 1)/<p>, with each coset named by its least member.
class QuotientGroup {
 public:
  explicit QuotientGroup(const GroupParams& params) : params_(params) {
    if (params_.degenerate()) {
      p_coset_ = {1};
      elements_ = {kIdentity};
      return;
    }
    p_coset_ = p_coset(params_);
    const std::uint64_t m = params_.modulus();
    for (std::uint64_t u = 1; u < m; ++u) {
      if (std::gcd(u, m) != 1) continue;
      if (coset_min(u) == u) elements_.emplace_back(u);
    }
  }

  QuotientGroup(std::uint64_t p, unsigned n) : QuotientGroup(GroupParams(p, n)) {}

  const GroupParams& params() const noexcept { return params_; }
  std::uint64_t modulus() const noexcept { return params_.modulus(); }
  const std::vector<std::uint64_t>& p_coset_elements() const noexcept {
    return p_coset_;
  }
  const std::vector<GroupElement>& elements() const noexcept {
    return elements_;
  }
  std::size_t order() const noexcept { return elements_.size(); }

  bool contains(GroupElement e) const {
    return std::binary_search(elements_.begin(), elements_.end(), e);
  }

  /// Position of `e` in elements(); throws when `e` is not canonical.
  std::size_t index_of(GroupElement e) const {
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
    if (it == elements_.end() || *it != e) {
      throw Error(ErrorKind::InvalidElement,
                  std::to_string(e.value) +
                      " is not a canonical representative of G");
    }
    return static_cast<std::size_t>(it - elements_.begin());
  }

  /// Least member of u<p> in U(M).
  GroupElement canonical_rep(std::uint64_t u) const {
    if (params_.degenerate()) return kIdentity;
    const std::uint64_t m = params_.modulus();
    if (std::gcd(u % m, m) != 1) {
      throw Error(ErrorKind::NonUnit, std::to_string(u) +
                                          " is not a unit modulo " +
                                          std::to_string(m));
    }
    return GroupElement{coset_min(u % m)};
  }

  /// Members of the coset named by `e`, ascending (a subset of U(M)).
  std::vector<std::uint64_t> coset_of(GroupElement e) const {
    require(e);
    if (params_.degenerate()) return {1};
    std::vector<std::uint64_t> out;
    for (std::uint64_t h : p_coset_) {
      out.push_back(mulmod(e.value, h, params_.modulus()));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  GroupElement mul(GroupElement a, GroupElement b) const {
    require(a);
    require(b);
    if (params_.degenerate()) return kIdentity;
    return GroupElement{
        coset_min(mulmod(a.value, b.value, params_.modulus()))};
  }

  GroupElement inv(GroupElement a) const {
    require(a);
    if (params_.degenerate()) return kIdentity;
    // a is a unit by construction, so the inverse exists
    return GroupElement{coset_min(*modinv(a.value, params_.modulus()))};
  }

  /// a^k in G.
  GroupElement pow(GroupElement a, std::uint64_t k) const {
    require(a);
    if (params_.degenerate()) return kIdentity;
    return GroupElement{coset_min(powmod(a.value, k, params_.modulus()))};
  }

  /// Multiplicative order of `a` in G.
  std::uint64_t element_order(GroupElement a) const {
    std::uint64_t k = 1;
    GroupElement x = a;
    while (x != kIdentity) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  /// Row-major product table on element indices: table[i * |G| + j].
  std::vector<std::uint32_t> cayley_table() const {
    const std::size_t g = order();
    std::vector<std::uint32_t> table(g * g);
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = i; j < g; ++j) {
        const auto k = static_cast<std::uint32_t>(
            index_of(mul(elements_[i], elements_[j])));
        table[i * g + j] = k;
        table[j * g + i] = k;
      }
    }
    return table;
  }

  void require(GroupElement e) const {
    if (!contains(e)) {
      throw Error(ErrorKind::InvalidElement,
                  std::to_string(e.value) +
                      " is not a canonical representative of G");
    }
  }

 private:
  std::uint64_t coset_min(std::uint64_t u) const {
    std::uint64_t best = u;
    for (std::uint64_t h : p_coset_) {
      best = std::min(best, mulmod(u, h, params_.modulus()));
    }
    return best;
  }

  GroupParams params_;
  std::vector<std::uint64_t> p_coset_;
  std::vector<GroupElement> elements_;
};

/// The unique l in [0, n) with s = p^l (mod M).
inline unsigned frobenius_exponent(const GroupParams& params, std::uint64_t s) {
  if (params.degenerate()) return 0;
  const std::uint64_t m = params.modulus();
  s %= m;
  if (std::gcd(s, m) != 1) {
    throw Error(ErrorKind::NonUnit,
                std::to_string(s) + " is not a unit modulo " + std::to_string(m));
  }
  std::uint64_t x = 1;
  for (unsigned l = 0; l < params.n(); ++l) {
    if (x == s) return l;
    x = mulmod(x, params.p(), m);
  }
  throw Error(ErrorKind::NotInPCoset,
              std::to_string(s) + " is not a power of " +
                  std::to_string(params.p()) + " modulo " + std::to_string(m));
}

}  // namespace nearvec
