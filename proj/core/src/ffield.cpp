#include "bbg/ffield.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbg {

namespace {

using Poly = std::vector<Bigint>;  // ascending coefficients

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, const Bigint& p) {
  // f monic
  poly_trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const Bigint c = a.back();
    const std::size_t shift = a.size() - 1 - df;
    if (c != 0) {
      for (std::size_t i = 0; i < df; ++i) {
        a[shift + i] = mod_reduce(a[shift + i] - c * f[i], p);
      }
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, const Bigint& p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      prod[i + j] = mod_reduce(prod[i + j] + a[i] * b[j], p);
    }
  }
  return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, Bigint e, const Poly& f, const Bigint& p) {
  Poly r = {Bigint(1)};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if ((e & 1) != 0) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, const Bigint& p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // make b monic, reduce a mod b
    const Bigint lead_inv = mod_inverse(b.back(), p);
    for (auto& c : b) c = mod_reduce(c * lead_inv, p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const Bigint lead_inv = mod_inverse(a.back(), p);
    for (auto& c : a) c = mod_reduce(c * lead_inv, p);
  }
  return a;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Gaussian solve of the n x n system A x = rhs over F_p (A row-major);
// returns nullopt when singular.
std::optional<std::vector<Bigint>> solve_linear(std::vector<Bigint> A,
                                                std::vector<Bigint> rhs,
                                                unsigned n, const Bigint& p) {
  for (unsigned col = 0, row = 0; col < n && row < n; ++col, ++row) {
    unsigned piv = row;
    while (piv < n && A[piv * n + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != row) {
      for (unsigned j = 0; j < n; ++j) std::swap(A[piv * n + j], A[row * n + j]);
      std::swap(rhs[piv], rhs[row]);
    }
    const Bigint inv = mod_inverse(A[row * n + col], p);
    for (unsigned j = 0; j < n; ++j) A[row * n + j] = mod_reduce(A[row * n + j] * inv, p);
    rhs[row] = mod_reduce(rhs[row] * inv, p);
    for (unsigned r = 0; r < n; ++r) {
      if (r == row) continue;
      const Bigint c = A[r * n + col];
      if (c == 0) continue;
      for (unsigned j = 0; j < n; ++j) {
        A[r * n + j] = mod_reduce(A[r * n + j] - c * A[row * n + j], p);
      }
      rhs[r] = mod_reduce(rhs[r] - c * rhs[row], p);
    }
  }
  return rhs;
}

bool probably_prime_small(const Bigint& p) {
  // deterministic trial division for small p; used only as a constructor
  // sanity check (primality of large p is the caller's contract)
  if (p < 2) return false;
  for (Bigint d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

bool polynomial_irreducible(const Bigint& p, const Poly& f) {
  const unsigned n = static_cast<unsigned>(f.size()) - 1;
  if (n == 0) return false;
  if (f.back() != 1) throw std::invalid_argument("modulus must be monic");
  if (n == 1) return true;
  // x^(p^n) == x mod f, and gcd(x^(p^(n/r)) - x, f) == 1 for prime r | n
  const Poly x = {Bigint(0), Bigint(1)};
  Bigint pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  Poly xp = poly_powmod(x, pn, f, p);
  Poly diff = xp;
  diff.resize(std::max<std::size_t>(diff.size(), 2), Bigint(0));
  diff[1] = mod_reduce(diff[1] - 1, p);
  poly_trim(diff);
  if (!diff.empty()) return false;
  for (unsigned r : prime_divisors(n)) {
    Bigint e = 1;
    for (unsigned i = 0; i < n / r; ++i) e *= p;
    Poly xr = poly_powmod(x, e, f, p);
    xr.resize(std::max<std::size_t>(xr.size(), 2), Bigint(0));
    xr[1] = mod_reduce(xr[1] - 1, p);
    poly_trim(xr);
    Poly g = poly_gcd(xr, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<Bigint> find_irreducible(const Bigint& p, unsigned n) {
  if (n == 1) return {Bigint(0), Bigint(1)};  // x
  // sweep constant..leading-1 coefficients in mixed radix
  std::vector<Bigint> f(n + 1, Bigint(0));
  f[n] = 1;
  for (;;) {
    unsigned i = 0;
    while (i < n) {
      f[i] += 1;
      if (f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == n) throw std::runtime_error("find_irreducible: exhausted search");
    if (f[0] == 0) continue;  // divisible by x
    if (polynomial_irreducible(p, f)) return f;
  }
}

std::shared_ptr<const ExplicitField> ExplicitField::from_polynomial(
    const Bigint& p, unsigned n, std::vector<Bigint> monic) {
  if (n < 1) throw std::invalid_argument("field: extension degree must be >= 1");
  if (p < 2) throw std::invalid_argument("field: characteristic must be >= 2");
  if (bit_length(p) <= 20 && !probably_prime_small(p))
    throw std::invalid_argument("field: p is not prime");
  if (monic.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("field: modulus must have degree n");
  for (auto& c : monic) c = mod_reduce(c, p);
  if (monic.back() != 1) throw std::invalid_argument("field: modulus must be monic");
  if (!polynomial_irreducible(p, monic))
    throw std::invalid_argument("field: reducible modulus");
  auto F = std::shared_ptr<ExplicitField>(new ExplicitField());
  F->p_ = p;
  F->n_ = n;
  F->modulus_ = std::move(monic);
  F->init_common();
  return F;
}

void ExplicitField::init_common() {
  order_ = 1;
  for (unsigned i = 0; i < n_; ++i) order_ *= p_;
  coeff_width_ = (bit_length(p_) + 7) / 8;
  if (coeff_width_ == 0) coeff_width_ = 1;
  if (order_ <= 65536) build_small_tables();
}

FieldElement ExplicitField::zero() const {
  return FieldElement(std::vector<Bigint>(n_, Bigint(0)));
}

FieldElement ExplicitField::one() const {
  std::vector<Bigint> c(n_, Bigint(0));
  c[0] = 1;
  return FieldElement(std::move(c));
}

FieldElement ExplicitField::element(std::vector<Bigint> coeffs) const {
  if (coeffs.size() != n_) throw std::invalid_argument("element: wrong coefficient count");
  for (auto& c : coeffs) c = mod_reduce(c, p_);
  return FieldElement(std::move(coeffs));
}

FieldElement ExplicitField::scalar(const Bigint& m) const {
  std::vector<Bigint> c(n_, Bigint(0));
  c[0] = mod_reduce(m, p_);
  return FieldElement(std::move(c));
}

bool ExplicitField::is_zero(const FieldElement& a) const {
  for (const auto& c : a.coeffs())
    if (c != 0) return false;
  return true;
}

FieldElement ExplicitField::add(const FieldElement& a, const FieldElement& b) const {
  std::vector<Bigint> c(n_);
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = a.coeffs()[i] + b.coeffs()[i];
    if (c[i] >= p_) c[i] -= p_;
  }
  return FieldElement(std::move(c));
}

FieldElement ExplicitField::neg(const FieldElement& a) const {
  std::vector<Bigint> c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = a.coeffs()[i] == 0 ? Bigint(0) : p_ - a.coeffs()[i];
  return FieldElement(std::move(c));
}

FieldElement ExplicitField::sub(const FieldElement& a, const FieldElement& b) const {
  std::vector<Bigint> c(n_);
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = a.coeffs()[i] - b.coeffs()[i];
    if (c[i] < 0) c[i] += p_;
  }
  return FieldElement(std::move(c));
}

FieldElement ExplicitField::reduce(std::vector<Bigint> raw) const {
  Poly r = poly_mod(std::move(raw), modulus_, p_);
  r.resize(n_, Bigint(0));
  return FieldElement(std::move(r));
}

FieldElement ExplicitField::mul(const FieldElement& a, const FieldElement& b) const {
  if (a.size() != n_ || b.size() != n_)
    throw std::invalid_argument("mul: element from a different field");
  if (small_order_ != 0) {
    const std::uint32_t ia = index_of(a), ib = index_of(b);
    const std::uint32_t q1 = small_order_ - 1;
    if (log_[ia] == q1 || log_[ib] == q1) return zero();
    return element_at(exp_[(log_[ia] + log_[ib]) % q1]);
  }
  std::vector<Bigint> prod(2 * n_ - 1, Bigint(0));
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b.coeffs()[j] == 0) continue;
      prod[i + j] = mod_reduce(prod[i + j] + a.coeffs()[i] * b.coeffs()[j], p_);
    }
  }
  return reduce(std::move(prod));
}

FieldElement ExplicitField::inv(const FieldElement& a) const {
  if (is_zero(a)) throw std::domain_error("inv: zero has no inverse");
  if (small_order_ != 0) {
    const std::uint32_t q1 = small_order_ - 1;
    return element_at(exp_[(q1 - log_[index_of(a)]) % q1]);
  }
  return pow(a, order_ - 2);
}

FieldElement ExplicitField::pow(const FieldElement& a, const Bigint& e) const {
  if (e < 0) {
    if (is_zero(a)) throw std::domain_error("pow: negative exponent of zero");
    return pow(inv(a), -e);
  }
  if (small_order_ != 0) {
    if (is_zero(a)) return e == 0 ? one() : zero();
    const Bigint q1 = small_order_ - 1;
    const std::uint32_t ee = static_cast<std::uint32_t>(mod_reduce(e, q1));
    const std::uint64_t l = static_cast<std::uint64_t>(log_[index_of(a)]) * ee;
    return element_at(exp_[l % static_cast<std::uint32_t>(q1)]);
  }
  FieldElement r = one();
  FieldElement base = a;
  Bigint ee = e;
  while (ee > 0) {
    if ((ee & 1) != 0) r = mul(r, base);
    base = mul(base, base);
    ee >>= 1;
  }
  return r;
}

FieldElement ExplicitField::frobenius(const FieldElement& a, unsigned j) const {
  if (j > n_) throw std::invalid_argument("frobenius: power out of range");
  Bigint e = 1;
  for (unsigned i = 0; i < j; ++i) e *= p_;
  return pow(a, e);
}

std::uint32_t ExplicitField::index_of(const FieldElement& a) const {
  if (order_ > 65536) throw std::logic_error("index_of: field too large");
  std::uint32_t idx = 0;
  const std::uint32_t pp = static_cast<std::uint32_t>(p_);
  for (unsigned i = n_; i-- > 0;) idx = idx * pp + static_cast<std::uint32_t>(a.coeffs()[i]);
  return idx;
}

FieldElement ExplicitField::element_at(std::uint32_t idx) const {
  if (order_ > 65536) throw std::logic_error("element_at: field too large");
  const std::uint32_t pp = static_cast<std::uint32_t>(p_);
  std::vector<Bigint> c(n_);
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = idx % pp;
    idx /= pp;
  }
  return FieldElement(std::move(c));
}

void ExplicitField::build_small_tables() {
  const std::uint32_t q = static_cast<std::uint32_t>(order_);
  small_order_ = 0;  // keep generic paths active while bootstrapping
  // find a multiplicative generator by exact order computation
  FieldElement g;
  for (std::uint32_t i = 1; i < q; ++i) {
    g = element_at(i);
    FieldElement r = g;
    std::uint32_t o = 1;
    while (!(r == one())) {
      r = mul(r, g);
      ++o;
      if (o > q) throw std::runtime_error("field tables: runaway order");
    }
    if (o == q - 1) break;
    if (i + 1 == q) throw std::runtime_error("field tables: no generator found");
  }
  log_.assign(q, q - 1);
  exp_.assign(q - 1, 0);
  FieldElement r = one();
  for (std::uint32_t k = 0; k < q - 1; ++k) {
    const std::uint32_t idx = index_of(r);
    exp_[k] = idx;
    log_[idx] = k;
    r = mul(r, g);
  }
  small_order_ = q;
}

void ExplicitField::encode(const FieldElement& a, std::uint8_t* out) const {
  for (unsigned i = 0; i < n_; ++i) {
    encode_fixed(a.coeffs()[i], coeff_width_, out + i * coeff_width_);
  }
}

FieldElement ExplicitField::decode(const std::uint8_t* in) const {
  std::vector<Bigint> c(n_);
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = decode_fixed(in + i * coeff_width_, coeff_width_);
    if (c[i] >= p_) throw std::invalid_argument("decode: coefficient out of range");
  }
  return FieldElement(std::move(c));
}

FieldElement ExplicitField::from_presented(const std::vector<Bigint>& v) const {
  if (v.size() != n_) throw std::invalid_argument("from_presented: wrong length");
  if (!to_canonical_) return element(v);
  std::vector<Bigint> out(n_, Bigint(0));
  const auto& M = *to_canonical_;
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      out[i] = mod_reduce(out[i] + M[i * n_ + j] * v[j], p_);
    }
  }
  return FieldElement(std::move(out));
}

std::vector<Bigint> ExplicitField::to_presented(const FieldElement& a) const {
  if (!from_canonical_) return a.coeffs();
  std::vector<Bigint> out(n_, Bigint(0));
  const auto& M = *from_canonical_;
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      out[i] = mod_reduce(out[i] + M[i * n_ + j] * a.coeffs()[j], p_);
    }
  }
  return out;
}

std::shared_ptr<const ExplicitField> ExplicitField::from_table(
    const Bigint& p, unsigned n, const std::vector<Bigint>& c_raw) {
  if (n < 1) throw std::invalid_argument("field: extension degree must be >= 1");
  if (c_raw.size() != static_cast<std::size_t>(n) * n * n)
    throw std::invalid_argument("field: table must have n^3 entries");
  std::vector<Bigint> c(c_raw.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(c_raw[i], p);

  auto tmul = [&](const std::vector<Bigint>& a, const std::vector<Bigint>& b) {
    std::vector<Bigint> out(n, Bigint(0));
    for (unsigned i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        const Bigint ab = mod_reduce(a[i] * b[j], p);
        for (unsigned k = 0; k < n; ++k) {
          const Bigint& cc = c[(static_cast<std::size_t>(i) * n + j) * n + k];
          if (cc != 0) out[k] = mod_reduce(out[k] + ab * cc, p);
        }
      }
    }
    return out;
  };

  // commutativity on basis elements
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < i; ++j)
      for (unsigned k = 0; k < n; ++k)
        if (c[(static_cast<std::size_t>(i) * n + j) * n + k] !=
            c[(static_cast<std::size_t>(j) * n + i) * n + k])
          throw std::invalid_argument("field table: multiplication not commutative");

  // unit element: sum_i e_i c_ijk = delta_jk, n^2 equations; solve the first
  // solvable n x n block and verify the rest
  {
    std::vector<Bigint> A(static_cast<std::size_t>(n) * n), rhs(n);
    std::optional<std::vector<Bigint>> e;
    for (unsigned j = 0; j < n && !e; ++j) {
      for (unsigned k = 0; k < n; ++k) {
        for (unsigned i = 0; i < n; ++i)
          A[k * n + i] = c[(static_cast<std::size_t>(i) * n + j) * n + k];
        rhs[k] = (j == k) ? 1 : 0;
      }
      e = solve_linear(A, rhs, n, p);
    }
    if (!e) throw std::invalid_argument("field table: no unit element");
    for (unsigned j = 0; j < n; ++j) {
      std::vector<Bigint> basis(n, Bigint(0));
      basis[j] = 1;
      if (tmul(*e, basis) != basis)
        throw std::invalid_argument("field table: unit candidate fails");
    }

    // associativity on basis triples: exhaustive when n^3 <= 4096, else 40
    // randomized triples (validation stays polynomial in log p)
    Rng rng(0x5eedf1e1du);
    auto check_assoc = [&](unsigned i, unsigned j, unsigned k) {
      std::vector<Bigint> si(n, Bigint(0)), sj(n, Bigint(0)), sk(n, Bigint(0));
      si[i] = 1; sj[j] = 1; sk[k] = 1;
      if (tmul(tmul(si, sj), sk) != tmul(si, tmul(sj, sk)))
        throw std::invalid_argument("field table: multiplication not associative");
    };
    if (static_cast<std::size_t>(n) * n * n <= 4096) {
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          for (unsigned k = 0; k < n; ++k) check_assoc(i, j, k);
    } else {
      for (int t = 0; t < 40; ++t)
        check_assoc(static_cast<unsigned>(rng.below(n)),
                    static_cast<unsigned>(rng.below(n)),
                    static_cast<unsigned>(rng.below(n)));
    }

    // locate a degree-n generator and its minimal polynomial
    auto try_generator = [&](const std::vector<Bigint>& g)
        -> std::optional<std::pair<Poly, std::vector<Bigint>>> {
      // powers g^0 = e, g^1, ..., g^n in table coordinates
      std::vector<std::vector<Bigint>> pw;
      pw.push_back(*e);
      for (unsigned d = 1; d <= n; ++d) pw.push_back(tmul(pw.back(), g));
      // solve sum_{d<n} x_d g^d = g^n  -> minimal poly x^n - sum x_d x^d
      std::vector<Bigint> A(static_cast<std::size_t>(n) * n), rhs(n);
      for (unsigned r = 0; r < n; ++r) {
        for (unsigned d = 0; d < n; ++d) A[r * n + d] = pw[d][r];
        rhs[r] = pw[n][r];
      }
      auto x = solve_linear(A, rhs, n, p);
      if (!x) return std::nullopt;  // powers dependent: g lies in a subring
      Poly f(n + 1);
      for (unsigned d = 0; d < n; ++d) f[d] = mod_reduce(-(*x)[d], p);
      f[n] = 1;
      if (!polynomial_irreducible(p, f)) return std::nullopt;
      // basis change: columns are coordinates of g^d
      std::vector<Bigint> B(static_cast<std::size_t>(n) * n);
      for (unsigned r = 0; r < n; ++r)
        for (unsigned d = 0; d < n; ++d) B[r * n + d] = pw[d][r];
      return std::make_pair(std::move(f), std::move(B));
    };

    std::optional<std::pair<Poly, std::vector<Bigint>>> found;
    for (unsigned i = 0; i < n && !found; ++i) {
      std::vector<Bigint> g(n, Bigint(0));
      g[i] = 1;
      found = try_generator(g);
    }
    for (int t = 0; t < 64 + static_cast<int>(n) && !found; ++t) {
      std::vector<Bigint> g(n);
      for (unsigned i = 0; i < n; ++i) g[i] = rng.below_big(p);
      found = try_generator(g);
    }
    if (!found)
      throw std::invalid_argument("field table: no degree-n generator (not a field)");

    auto F = std::shared_ptr<ExplicitField>(new ExplicitField());
    F->p_ = p;
    F->n_ = n;
    F->modulus_ = std::move(found->first);
    if (bit_length(p) <= 20 && !probably_prime_small(p))
      throw std::invalid_argument("field: p is not prime");

    // invert B column-by-column
    const auto& B = found->second;
    std::vector<Bigint> Binv(static_cast<std::size_t>(n) * n);
    for (unsigned col = 0; col < n; ++col) {
      std::vector<Bigint> rhs2(n, Bigint(0));
      rhs2[col] = 1;
      auto x = solve_linear(B, rhs2, n, p);
      if (!x) throw std::invalid_argument("field table: basis change not invertible");
      for (unsigned r = 0; r < n; ++r) Binv[r * n + col] = (*x)[r];
    }
    F->to_canonical_ = std::move(Binv);
    F->from_canonical_ = B;
    F->init_common();

    // sampled consistency: table product matches canonical multiplication
    const bool exhaustive = static_cast<std::size_t>(n) * n <= 1024;
    const int pairs = exhaustive ? -1 : 40;
    auto check_pair = [&](unsigned i, unsigned j) {
      std::vector<Bigint> si(n, Bigint(0)), sj(n, Bigint(0));
      si[i] = 1; sj[j] = 1;
      const FieldElement lhs = F->mul(F->from_presented(si), F->from_presented(sj));
      const FieldElement rhs3 = F->from_presented(tmul(si, sj));
      if (!(lhs == rhs3))
        throw std::invalid_argument("field table: inconsistent with located basis");
    };
    if (pairs < 0) {
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) check_pair(i, j);
    } else {
      for (int t = 0; t < pairs; ++t)
        check_pair(static_cast<unsigned>(rng.below(n)),
                   static_cast<unsigned>(rng.below(n)));
    }
    return F;
  }
}

void ExplicitField::check_axioms(Rng& rng, int triples) const {
  auto random_elem = [&] {
    std::vector<Bigint> c(n_);
    for (unsigned i = 0; i < n_; ++i) c[i] = rng.below_big(p_);
    return FieldElement(std::move(c));
  };
  for (int t = 0; t < triples; ++t) {
    const FieldElement a = random_elem(), b = random_elem(), cc = random_elem();
    if (!(mul(mul(a, b), cc) == mul(a, mul(b, cc))))
      throw std::runtime_error("field axioms: associativity failed");
    if (!(mul(a, add(b, cc)) == add(mul(a, b), mul(a, cc))))
      throw std::runtime_error("field axioms: distributivity failed");
    if (!(mul(a, b) == mul(b, a)))
      throw std::runtime_error("field axioms: commutativity failed");
    if (!is_zero(a)) {
      if (!(mul(a, inv(a)) == one()))
        throw std::runtime_error("field axioms: inverse failed");
    }
  }
}

}  // namespace bbg
