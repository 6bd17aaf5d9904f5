#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "classify.hpp"
#include "error.hpp"
#include "field.hpp"
#include "sequences.hpp"

namespace nearvec {

// Field-level checks of near-vector spaces over GF(p^n): explicit
// isomorphism witnesses, and the near-vector space axioms on tiny instances.

enum class VerifyMode { Exhaustive, Sampled };

struct VerifyOptions {
  std::uint64_t budget = verification_budget();
  std::size_t samples = 1000;
  std::uint64_t seed = 0x5eed'2019;
};

struct VerificationReport {
  bool sigma_is_permutation = false;
  bool theta_additive = false;
  bool theta_bijective = false;
  bool eta_bijective = false;
  bool compatible = false;
  std::uint64_t compatibility_checks = 0;
  std::string failure;  // first failing check, empty on success

  bool verified() const noexcept {
    return sigma_is_permutation && theta_additive && theta_bijective &&
           eta_bijective && compatible;
  }
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

/// Rank over GF(p) of the rows (each a coefficient vector).
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows,
                              std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = *modinv(rows[rank][c], p);
    for (auto& v : rows[rank]) v = mulmod(v, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint64_t factor = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = (rows[r][k] + p - mulmod(factor, rows[rank][k], p)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

/// x -> x^{p^l} is GF(p)-linear; it is bijective iff the images of the
/// polynomial basis 1, t, ..., t^{n-1} are linearly independent.
inline bool frobenius_spans(const FiniteField& f, std::uint64_t exponent) {
  std::vector<std::vector<std::uint64_t>> rows;
  for (unsigned k = 0; k < f.n(); ++k) {
    FieldElement basis = f.zero();
    basis.coeffs[k] = 1;
    rows.push_back(f.pow(basis, exponent).coeffs);
  }
  return rank_mod_p(std::move(rows), f.p()) == f.n();
}

struct WitnessData {
  std::vector<std::uint64_t> s1;     // exponents of the source action
  std::vector<std::uint64_t> s2;     // exponents of the target action
  std::vector<std::size_t> sigma;
  std::vector<std::uint64_t> frob;   // p^{l_j}
  std::uint64_t q = 1;
};

template <class Field>
bool frobenius_additive(const Field& f, std::uint64_t e, bool exhaustive,
                        std::size_t samples, std::mt19937_64& rng) {
  auto check = [&](const typename Field::Elem& a, const typename Field::Elem& b) {
    return f.pow(f.add(a, b), e) == f.add(f.pow(a, e), f.pow(b, e));
  };
  if (exhaustive) {
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      for (std::uint64_t b = 0; b < f.order(); ++b) {
        if (!check(f.from_index(a), f.from_index(b))) return false;
      }
    }
    return true;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    if (!check(f.random(rng), f.random(rng))) return false;
  }
  return true;
}

/// theta(x s_alpha) == theta(x) t_{alpha^q}, componentwise:
/// (x_{sigma(j)} alpha^{s1[sigma(j)]})^{p^{l_j}} == x_{sigma(j)}^{p^{l_j}} (alpha^q)^{s2[j]}.
template <class Field>
class Compatibility {
 public:
  using Elem = typename Field::Elem;

  Compatibility(const Field& f, const WitnessData& w) : f_(f), w_(w) {
    const std::uint64_t units = f.order() - 1;
    auto reduce = [&](std::uint64_t e) { return units == 1 ? 1 : e % units; };
    for (auto e : w.s1) e1_.push_back(reduce(e));
    for (auto e : w.s2) e2_.push_back(reduce(e));
    q_ = reduce(w.q);
  }

  /// Precomputes the alpha-dependent factors.
  void set_alpha(const Elem& alpha) {
    const std::size_t m = e1_.size();
    lhs_factor_.clear();
    rhs_factor_.clear();
    const Elem alpha_q = action_power(f_, alpha, q_);
    for (std::size_t i = 0; i < m; ++i) {
      lhs_factor_.push_back(action_power(f_, alpha, e1_[i]));
      rhs_factor_.push_back(action_power(f_, alpha_q, e2_[i]));
    }
  }

  bool holds(const std::vector<Elem>& x) const {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const Elem& src = x[w_.sigma[j]];
      const Elem lhs = f_.pow(f_.mul(src, lhs_factor_[w_.sigma[j]]), w_.frob[j]);
      const Elem rhs = f_.mul(f_.pow(src, w_.frob[j]), rhs_factor_[j]);
      if (!(lhs == rhs)) return false;
    }
    return true;
  }

 private:
  const Field& f_;
  const WitnessData& w_;
  std::vector<std::uint64_t> e1_, e2_;
  std::uint64_t q_ = 1;
  std::vector<Elem> lhs_factor_, rhs_factor_;
};

template <class Field>
void check_compatibility(const Field& f, const WitnessData& w, VerifyMode mode,
                         const VerifyOptions& opts, std::mt19937_64& rng,
                         VerificationReport& report) {
  using Elem = typename Field::Elem;
  const std::size_t m = w.s1.size();
  Compatibility<Field> compat(f, w);

  std::vector<Elem> alphas;
  if (mode == VerifyMode::Exhaustive || f.order() <= 4096) {
    for (std::uint64_t a = 0; a < f.order(); ++a) alphas.push_back(f.from_index(a));
  } else {
    alphas.push_back(f.zero());
    alphas.push_back(f.one());
    for (std::size_t i = 0; i < opts.samples; ++i) alphas.push_back(f.random(rng));
  }

  // standard basis vectors are always included
  std::vector<std::vector<Elem>> probes;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Elem> e(m, f.zero());
    e[i] = f.one();
    probes.push_back(std::move(e));
  }
  if (mode == VerifyMode::Sampled) {
    for (std::size_t s = 0; s < opts.samples; ++s) {
      std::vector<Elem> x;
      for (std::size_t i = 0; i < m; ++i) x.push_back(f.random(rng));
      probes.push_back(std::move(x));
    }
  }

  report.compatible = true;
  for (const Elem& alpha : alphas) {
    compat.set_alpha(alpha);
    for (const auto& x : probes) {
      ++report.compatibility_checks;
      if (!compat.holds(x)) {
        report.compatible = false;
        report.failure = "compatibility fails on a basis or sampled vector";
        return;
      }
    }
    if (mode != VerifyMode::Exhaustive) continue;
    // all of F^m, odometer over component indices
    std::vector<std::uint64_t> idx(m, 0);
    std::vector<Elem> x(m, f.zero());
    while (true) {
      ++report.compatibility_checks;
      if (!compat.holds(x)) {
        report.compatible = false;
        report.failure = "compatibility fails for some x in F^m";
        return;
      }
      std::size_t pos = 0;
      while (pos < m && idx[pos] + 1 == f.order()) {
        idx[pos] = 0;
        x[pos] = f.zero();
        ++pos;
      }
      if (pos == m) break;
      ++idx[pos];
      x[pos] = f.from_index(idx[pos]);
    }
  }
}

}  // namespace detail

/// Checks, at the level of field arithmetic, that w gives an isomorphism
/// between the near-vector spaces of S1 and S2: theta is an additive
/// bijection of F^m and theta(x s_alpha) = theta(x) t_{alpha^q}.
/// Exhaustive mode covers every x in F^m and every alpha; sampled mode uses
/// the standard basis plus opts.samples random vectors.
inline VerificationReport verify_witness(const FiniteField& f, const SuitableSequence& s1,
                                         const SuitableSequence& s2,
                                         const IsomorphismWitness& w, VerifyMode mode,
                                         const VerifyOptions& opts = {}) {
  const std::size_t m = s1.length();
  if (s2.length() != m || w.sigma.size() != m || w.frobenius_powers.size() != m) {
    throw Error(ErrorKind::LengthMismatch, "witness and sequences disagree on m");
  }
  VerificationReport report;
  const std::uint64_t units = f.order() - 1;

  if (mode == VerifyMode::Exhaustive) {
    const std::uint64_t work =
        detail::saturating_pow(f.order(), static_cast<std::uint64_t>(m) + 1);
    if (work > opts.budget) {
      throw BudgetError("exhaustive verification needs " + std::to_string(work) +
                            " evaluations (budget " + std::to_string(opts.budget) + ")",
                        work, opts.budget);
    }
  }

  std::vector<bool> hit(m, false);
  report.sigma_is_permutation = true;
  for (std::size_t s : w.sigma) {
    if (s >= m || hit[s]) report.sigma_is_permutation = false;
    else hit[s] = true;
  }
  if (!report.sigma_is_permutation) {
    report.failure = "sigma is not a permutation";
    return report;
  }

  detail::WitnessData data;
  for (GroupElement e : s1.entries()) data.s1.push_back(e.value);
  for (GroupElement e : s2.entries()) data.s2.push_back(e.value);
  data.sigma = w.sigma;
  data.q = w.q.value;
  for (unsigned l : w.frobenius_powers) {
    if (l >= f.n()) {
      report.failure = "Frobenius power out of range";
      return report;
    }
    data.frob.push_back(*checked_pow(f.p(), l));
  }

  report.eta_bijective = units == 1 || std::gcd(w.q.value % units, units) == 1;
  if (!report.eta_bijective) {
    report.failure = "alpha -> alpha^q is not a bijection";
    return report;
  }

  std::vector<std::uint64_t> distinct_frob = data.frob;
  std::sort(distinct_frob.begin(), distinct_frob.end());
  distinct_frob.erase(std::unique(distinct_frob.begin(), distinct_frob.end()),
                      distinct_frob.end());

  std::mt19937_64 rng(opts.seed);
  const bool pairs_exhaustive = f.order() <= opts.budget / f.order();
  const bool tabulated = f.order() <= IndexedField::kMaxOrder;
  std::optional<IndexedField> table;
  if (tabulated) table.emplace(f);

  report.theta_additive = true;
  report.theta_bijective = true;
  for (std::uint64_t e : distinct_frob) {
    const bool additive =
        tabulated ? detail::frobenius_additive(*table, e, pairs_exhaustive, opts.samples, rng)
                  : detail::frobenius_additive(f, e, false, opts.samples, rng);
    if (!additive) report.theta_additive = false;
    if (!detail::frobenius_spans(f, e)) report.theta_bijective = false;
  }
  if (!report.theta_additive || !report.theta_bijective) {
    report.failure = "theta is not an additive bijection";
    return report;
  }

  if (tabulated) {
    detail::check_compatibility(*table, data, mode, opts, rng, report);
  } else {
    detail::check_compatibility(f, data, mode, opts, rng, report);
  }
  return report;
}

// ---- near-vector space axioms ---------------------------------------------------

struct AxiomReport {
  bool endomorphisms = false;          // every s_alpha is additive
  bool has_zero = false;
  bool has_identity = false;
  bool has_negation = false;
  bool units_form_group = false;       // A \ {0} is a subgroup of Aut(V)
  bool fixed_point_free = false;
  std::uint64_t quasi_kernel_size = 0;
  bool quasi_kernel_generates = false;
  std::uint64_t distinct_scalars = 0;

  bool all_satisfied() const noexcept {
    return endomorphisms && has_zero && has_identity && has_negation &&
           units_form_group && fixed_point_free && quasi_kernel_generates;
  }
};

/// Exhaustively checks the near-vector space conditions for V = F^m with
/// A = { s_alpha : alpha in F } given by `spec`. Intended for tiny fields.
inline AxiomReport check_axioms(const FiniteField& f, const ActionSpec& spec,
                                std::uint64_t budget = verification_budget()) {
  spec.validate(f.p(), f.n());
  const std::size_t m = spec.dimension();
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  const std::uint64_t q = f.order();
  const std::uint64_t vsize = detail::saturating_pow(q, m);
  // additivity needs |V|^2 q evaluations, the quasi-kernel |V| q^2 (plus lookups)
  const std::uint64_t work =
      std::max(detail::saturating_mul(detail::saturating_mul(vsize, vsize), q),
               detail::saturating_mul(vsize, detail::saturating_pow(q, 3)));
  if (work > budget) {
    throw BudgetError("axiom check needs " + std::to_string(work) +
                          " evaluations (budget " + std::to_string(budget) + ")",
                      work, budget);
  }

  const IndexedField t(f);
  using Elem = IndexedField::Elem;

  // V enumerated by base-q index; comps[v*m + i] is the i-th component
  std::vector<Elem> comps(vsize * m);
  for (std::uint64_t v = 0; v < vsize; ++v) {
    std::uint64_t r = v;
    for (std::size_t i = 0; i < m; ++i) {
      comps[v * m + i] = static_cast<Elem>(r % q);
      r /= q;
    }
  }
  auto encode = [&](const std::vector<Elem>& x) {
    std::uint64_t v = 0;
    for (std::size_t i = m; i-- > 0;) v = v * q + x[i];
    return v;
  };
  auto vadd = [&](std::uint64_t a, std::uint64_t b) {
    std::vector<Elem> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = t.add(comps[a * m + i], comps[b * m + i]);
    return encode(s);
  };

  // every scalar acts by a diagonal tuple of multipliers alpha^{e_i}
  std::vector<std::uint64_t> exps;
  for (std::size_t i = 0; i < m; ++i) exps.push_back(spec.effective_exponent(i, f.p(), f.n()));
  std::vector<std::vector<Elem>> tuples;
  for (std::uint64_t a = 0; a < q; ++a) {
    std::vector<Elem> tup;
    for (std::size_t i = 0; i < m; ++i) tup.push_back(detail::action_power(t, t.from_index(a), exps[i]));
    tuples.push_back(std::move(tup));
  }
  auto act = [&](std::uint64_t v, const std::vector<Elem>& tup) {
    std::vector<Elem> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = t.mul(comps[v * m + i], tup[i]);
    return encode(out);
  };

  AxiomReport report;

  report.endomorphisms = true;
  for (const auto& tup : tuples) {
    for (std::uint64_t x = 0; x < vsize && report.endomorphisms; ++x) {
      const std::uint64_t xa = act(x, tup);
      for (std::uint64_t y = 0; y < vsize; ++y) {
        if (act(vadd(x, y), tup) != vadd(xa, act(y, tup))) {
          report.endomorphisms = false;
          break;
        }
      }
    }
  }

  std::vector<std::vector<Elem>> maps = tuples;
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  report.distinct_scalars = maps.size();
  auto in_a = [&](const std::vector<Elem>& tup) {
    return std::binary_search(maps.begin(), maps.end(), tup);
  };
  const std::vector<Elem> zero_map(m, t.zero()), id_map(m, t.one()),
      neg_map(m, t.neg(t.one()));
  report.has_zero = in_a(zero_map);
  report.has_identity = in_a(id_map);
  report.has_negation = in_a(neg_map);

  // A* = A \ {0}: each map bijective (no zero multiplier), closed under
  // composition and inverses
  report.units_form_group = report.has_identity;
  for (const auto& a : maps) {
    if (a == zero_map) continue;
    if (std::any_of(a.begin(), a.end(), [](Elem e) { return e == 0; })) {
      report.units_form_group = false;
      break;
    }
    std::vector<Elem> inverse(m);
    for (std::size_t i = 0; i < m; ++i) inverse[i] = t.pow(a[i], q - 2);
    if (!in_a(inverse)) report.units_form_group = false;
    for (const auto& b : maps) {
      if (b == zero_map) continue;
      std::vector<Elem> comp(m);
      for (std::size_t i = 0; i < m; ++i) comp[i] = t.mul(a[i], b[i]);
      if (!in_a(comp)) report.units_form_group = false;
    }
  }

  // fixed-point free: x a = x b with a != b forces x = 0
  report.fixed_point_free = true;
  for (std::uint64_t x = 1; x < vsize && report.fixed_point_free; ++x) {
    std::vector<std::uint64_t> images;
    for (const auto& a : maps) images.push_back(act(x, a));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
      report.fixed_point_free = false;
    }
  }

  // quasi-kernel: x alpha + x beta = x gamma for some gamma, for all alpha, beta
  std::vector<std::uint64_t> kernel;
  for (std::uint64_t x = 0; x < vsize; ++x) {
    std::vector<std::uint64_t> images;
    for (const auto& c : tuples) images.push_back(act(x, c));
    std::sort(images.begin(), images.end());
    bool member = true;
    for (std::size_t a = 0; a < images.size() && member; ++a) {
      for (std::size_t b = 0; b < images.size(); ++b) {
        if (!std::binary_search(images.begin(), images.end(), vadd(images[a], images[b]))) {
          member = false;
          break;
        }
      }
    }
    if (member) kernel.push_back(x);
  }
  report.quasi_kernel_size = kernel.size();

  // additive closure of the quasi-kernel
  std::vector<char> reached(vsize, 0);
  std::vector<std::uint64_t> stack{0};
  reached[0] = 1;
  std::uint64_t count = 1;
  while (!stack.empty()) {
    const std::uint64_t v = stack.back();
    stack.pop_back();
    for (std::uint64_t k : kernel) {
      const std::uint64_t w = vadd(v, k);
      if (!reached[w]) {
        reached[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  report.quasi_kernel_generates = count == vsize;
  return report;
}

/// The action determined by a suitable sequence (exponents q_1, ..., q_m).
inline ActionSpec action_of(const SuitableSequence& s) {
  ActionSpec spec;
  for (GroupElement e : s.entries()) spec.exponents.push_back(e.value);
  return spec;
}

}  // namespace nearvec
