#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "number.hpp"

namespace nearvec {

namespace poly {

// Dense polynomials over GF(p), lowest coefficient first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  trim(out);
  return out;
}

/// a mod b, with b nonzero.
inline Poly rem(Poly a, const Poly& b, std::uint64_t p) {
  const std::uint64_t lead_inv = *modinv(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(factor, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = rem(std::move(base), f, p);
  while (e > 0) {
    if (e & 1U) result = rem(mul(result, base, p), f, p);
    base = rem(mul(base, base, p), f, p);
    e >>= 1U;
  }
  return result;
}

/// Ben-Or: f of degree n is irreducible iff gcd(x^{p^i} - x, f) = 1 for
/// every 1 <= i <= n/2.
inline bool irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  const Poly x{0, 1};
  Poly power = x;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    power = powmod(power, p, f, p);
    const Poly g = gcd(f, sub(power, x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace poly

/// An element of GF(p^n): n coefficients over GF(p), lowest degree first.
struct FieldElement {
  std::vector<std::uint64_t> coeffs;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// GF(p^n) as GF(p)[x] modulo the least monic irreducible polynomial of
/// degree n, ordering candidates by their lower coefficients read as a
/// base-p integer (constant term least significant).
class FiniteField {
 public:
  using Elem = FieldElement;

  FiniteField(std::uint64_t p, unsigned n) : p_(p), n_(n) {
    if (!is_prime(p)) {
      throw Error(ErrorKind::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
    }
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    const auto order = checked_pow(p, n);
    if (!order || p >= (std::uint64_t{1} << 32)) {
      throw BudgetError("GF(" + std::to_string(p) + "^" + std::to_string(n) +
                            ") does not fit the 64-bit element budget",
                        UINT64_MAX, UINT64_MAX);
    }
    order_ = *order;
    modulus_ = find_modulus();
    generator_ = find_generator();
  }

  std::uint64_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t order() const noexcept { return order_; }
  /// Monic modulus, n + 1 coefficients, lowest first.
  const std::vector<std::uint64_t>& modulus_poly() const noexcept { return modulus_; }
  const FieldElement& generator() const noexcept { return generator_; }

  FieldElement zero() const { return FieldElement{std::vector<std::uint64_t>(n_, 0)}; }
  FieldElement one() const {
    FieldElement e = zero();
    e.coeffs[0] = 1;
    return e;
  }

  /// Elements are numbered by reading coefficients as base-p digits.
  FieldElement from_index(std::uint64_t index) const {
    FieldElement e = zero();
    for (unsigned i = 0; i < n_; ++i) {
      e.coeffs[i] = index % p_;
      index /= p_;
    }
    return e;
  }

  std::uint64_t to_index(const FieldElement& e) const {
    std::uint64_t index = 0;
    for (unsigned i = n_; i-- > 0;) index = index * p_ + e.coeffs[i];
    return index;
  }

  bool is_zero(const FieldElement& e) const {
    return std::all_of(e.coeffs.begin(), e.coeffs.end(), [](auto c) { return c == 0; });
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    FieldElement out = zero();
    for (unsigned i = 0; i < n_; ++i) out.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
    return out;
  }

  FieldElement neg(const FieldElement& a) const {
    FieldElement out = zero();
    for (unsigned i = 0; i < n_; ++i) out.coeffs[i] = (p_ - a.coeffs[i]) % p_;
    return out;
  }

  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    return add(a, neg(b));
  }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    poly::Poly pa(a.coeffs), pb(b.coeffs);
    poly::trim(pa);
    poly::trim(pb);
    poly::Poly r = poly::rem(poly::mul(pa, pb, p_), modulus_, p_);
    r.resize(n_, 0);
    return FieldElement{std::move(r)};
  }

  /// x^e for e >= 0.
  FieldElement pow(FieldElement base, std::uint64_t e) const {
    FieldElement result = one();
    while (e > 0) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  }

  /// x^e for any integer e; negative exponents need x != 0.
  FieldElement pow_signed(const FieldElement& base, std::int64_t e) const {
    if (e >= 0) return pow(base, static_cast<std::uint64_t>(e));
    return pow(inv(base), static_cast<std::uint64_t>(-(e + 1)) + 1);
  }

  FieldElement inv(const FieldElement& a) const {
    if (is_zero(a)) throw Error(ErrorKind::InvalidArgument, "zero has no inverse");
    return pow(a, order_ - 2);
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(const FieldElement& a) const {
    if (is_zero(a)) throw Error(ErrorKind::InvalidArgument, "zero has no order");
    std::uint64_t ord = order_ - 1;
    for (std::uint64_t r : prime_factors(order_ - 1)) {
      while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
    }
    return ord;
  }

  FieldElement random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, order_ - 1);
    return from_index(dist(rng));
  }

 private:
  std::vector<std::uint64_t> find_modulus() const {
    // candidates x^n + (lower part encoded by t), t ascending
    for (std::uint64_t t = 0; t < order_; ++t) {
      poly::Poly f(n_ + 1, 0);
      std::uint64_t v = t;
      for (unsigned i = 0; i < n_; ++i) {
        f[i] = v % p_;
        v /= p_;
      }
      f[n_] = 1;
      if (poly::irreducible(f, p_)) return f;
    }
    throw Error(ErrorKind::Internal, "no irreducible polynomial found");
  }

  FieldElement find_generator() const {
    if (order_ == 2) return one();
    const auto factors = prime_factors(order_ - 1);
    for (std::uint64_t idx = 1; idx < order_; ++idx) {
      const FieldElement cand = from_index(idx);
      const bool primitive = std::all_of(factors.begin(), factors.end(), [&](auto r) {
        return pow(cand, (order_ - 1) / r) != one();
      });
      if (primitive) return cand;
    }
    throw Error(ErrorKind::Internal, "no generator found");
  }

  std::uint64_t p_;
  unsigned n_;
  std::uint64_t order_ = 0;
  std::vector<std::uint64_t> modulus_;
  FieldElement generator_;
};

/// Log/antilog tables over the index numbering of a FiniteField, for
/// exhaustive loops on small fields.
class IndexedField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kAddTableLimit = 1024;

  explicit IndexedField(const FiniteField& f)
      : p_(f.p()), n_(f.n()), order_(f.order()) {
    if (order_ > kMaxOrder) {
      throw BudgetError("field of order " + std::to_string(order_) +
                            " is too large for tabulated arithmetic",
                        order_, kMaxOrder);
    }
    const std::uint64_t units = order_ - 1;
    exp_.resize(units);
    log_.assign(order_, 0);
    FieldElement x = f.one();
    for (std::uint64_t k = 0; k < units; ++k) {
      const auto idx = static_cast<Elem>(f.to_index(x));
      exp_[k] = idx;
      log_[idx] = static_cast<std::uint32_t>(k);
      x = f.mul(x, f.generator());
    }
    neg_.resize(order_);
    for (std::uint64_t i = 0; i < order_; ++i) neg_[i] = digit_add(0, i, true);
    if (order_ <= kAddTableLimit) {
      add_.resize(order_ * order_);
      for (std::uint64_t a = 0; a < order_; ++a) {
        for (std::uint64_t b = 0; b < order_; ++b) {
          add_[a * order_ + b] = digit_add(a, b, false);
        }
      }
    }
  }

  std::uint64_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t order() const noexcept { return order_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_index(std::uint64_t i) const noexcept { return static_cast<Elem>(i); }
  std::uint64_t to_index(Elem e) const noexcept { return e; }
  bool is_zero(Elem e) const noexcept { return e == 0; }

  Elem add(Elem a, Elem b) const {
    if (!add_.empty()) return add_[a * order_ + b];
    return digit_add(a, b, false);
  }
  Elem neg(Elem a) const { return neg_[a]; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint64_t units = order_ - 1;
    return exp_[(std::uint64_t{log_[a]} + log_[b]) % units];
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t units = order_ - 1;
    // log < 2^20 and e % units < 2^20, so the product fits in 64 bits
    return exp_[(std::uint64_t{log_[a]} * (e % units)) % units];
  }

  Elem random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, order_ - 1);
    return static_cast<Elem>(dist(rng));
  }

 private:
  Elem digit_add(std::uint64_t a, std::uint64_t b, bool negate_b) const {
    std::uint64_t out = 0, scale = 1;
    for (unsigned i = 0; i < n_; ++i) {
      const std::uint64_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      const std::uint64_t d = negate_b ? (da + p_ - db) % p_ : (da + db) % p_;
      out += d * scale;
      scale *= p_;
    }
    return static_cast<Elem>(out);
  }

  std::uint64_t p_;
  unsigned n_;
  std::uint64_t order_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_;
};

// ---- scalar actions -----------------------------------------------------------

/// Exponents of a scalar action (x_1,...,x_m) s_a = (x_i a^{q_i p^{l_i}}).
/// An empty frobenius_powers means all l_i = 0.
struct ActionSpec {
  std::vector<std::uint64_t> exponents;
  std::vector<unsigned> frobenius_powers;

  std::size_t dimension() const noexcept { return exponents.size(); }

  void validate(std::uint64_t p, unsigned n) const {
    const std::uint64_t units = *checked_pow(p, n) - 1;
    for (std::uint64_t q : exponents) {
      if (q == 0 || std::gcd(q % units, units) != 1) {
        throw Error(ErrorKind::NonUnit, "exponent " + std::to_string(q) +
                                            " is not a unit modulo " +
                                            std::to_string(units));
      }
    }
    if (!frobenius_powers.empty() && frobenius_powers.size() != exponents.size()) {
      throw Error(ErrorKind::LengthMismatch,
                  "frobenius_powers must match the number of exponents");
    }
    for (unsigned l : frobenius_powers) {
      if (l >= n) throw Error(ErrorKind::InvalidArgument, "Frobenius power out of range");
    }
  }

  /// q_i p^{l_i} reduced modulo p^n - 1 (non-zero elements only care about that).
  std::uint64_t effective_exponent(std::size_t i, std::uint64_t p, unsigned n) const {
    const std::uint64_t units = *checked_pow(p, n) - 1;
    const unsigned l = frobenius_powers.empty() ? 0 : frobenius_powers[i];
    if (units == 1) return 1;
    return mulmod(exponents[i] % units, powmod(p, l, units), units);
  }
};

namespace detail {

/// a^e for an action exponent e >= 1 given reduced mod p^n - 1; 0 maps to 0.
template <class Field>
typename Field::Elem action_power(const Field& f, const typename Field::Elem& a,
                                  std::uint64_t reduced_exponent) {
  if (f.is_zero(a)) return f.zero();
  return f.pow(a, reduced_exponent);
}

}  // namespace detail

/// x s_alpha, componentwise x_i alpha^{q_i p^{l_i}}.
template <class Field>
std::vector<typename Field::Elem> apply_action(const Field& f, const ActionSpec& spec,
                                               std::span<const typename Field::Elem> x,
                                               const typename Field::Elem& alpha) {
  if (x.size() != spec.dimension()) {
    throw Error(ErrorKind::LengthMismatch,
                "vector has " + std::to_string(x.size()) + " components, action has " +
                    std::to_string(spec.dimension()));
  }
  spec.validate(f.p(), f.n());
  std::vector<typename Field::Elem> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto e = spec.effective_exponent(i, f.p(), f.n());
    out.push_back(f.mul(x[i], detail::action_power(f, alpha, e)));
  }
  return out;
}

inline std::vector<FieldElement> apply_action(const FiniteField& f, const ActionSpec& spec,
                                              const std::vector<FieldElement>& x,
                                              const FieldElement& alpha) {
  return apply_action<FiniteField>(f, spec, std::span<const FieldElement>(x), alpha);
}

/// Whether (a^{qi} + b^{qi})^{qj} = (a^{qj} + b^{qj})^{qi} for every a, b.
inline bool check_field_identity(const FiniteField& f, std::uint64_t qi, std::uint64_t qj,
                                 std::uint64_t budget = verification_budget()) {
  const std::uint64_t units = f.order() - 1;
  for (std::uint64_t q : {qi, qj}) {
    if (q == 0 || (units > 1 && std::gcd(q % units, units) != 1)) {
      throw Error(ErrorKind::NonUnit,
                  std::to_string(q) + " is not a unit modulo " + std::to_string(units));
    }
  }
  if (f.order() > budget / f.order()) {
    throw BudgetError("field identity check needs order^2 evaluations", UINT64_MAX, budget);
  }
  const IndexedField t(f);
  for (std::uint64_t a = 0; a < t.order(); ++a) {
    for (std::uint64_t b = 0; b < t.order(); ++b) {
      const auto ea = t.from_index(a), eb = t.from_index(b);
      const auto lhs = t.pow(t.add(t.pow(ea, qi), t.pow(eb, qi)), qj);
      const auto rhs = t.pow(t.add(t.pow(ea, qj), t.pow(eb, qj)), qi);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace nearvec
