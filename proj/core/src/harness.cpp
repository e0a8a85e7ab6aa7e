#include "bbg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "bbg/cyclic.hpp"

namespace bbg {

namespace {

std::string hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint8_t b : v) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

std::optional<WhiteBox> WhiteBox::try_from(const OpsPtr& ops) {
  auto m = std::dynamic_pointer_cast<const MatrixOps>(ops);
  if (!m) return std::nullopt;
  return WhiteBox(std::move(m));
}

Matrix WhiteBox::canonical(const GroupString& s) const {
  Matrix m = ops_->decode(s);
  if (!ops_->quotient()) return m;
  const ExplicitField& F = ops_->field();
  Matrix best = m;
  std::vector<std::uint8_t> best_key = ops_->encode(best).bytes();
  for (const auto& lambda : ops_->center_scalars()) {
    if (lambda == F.one()) continue;
    Matrix cand = mat_scalar_mul(F, lambda, m);
    std::vector<std::uint8_t> key = ops_->encode(cand).bytes();
    if (key < best_key) {
      best = std::move(cand);
      best_key = std::move(key);
    }
  }
  return best;
}

std::vector<std::uint8_t> WhiteBox::canonical_key(const GroupString& s) const {
  return ops_->encode(canonical(s)).bytes();
}

std::vector<std::uint8_t> WhiteBox::canonical_key(const Matrix& m) const {
  return ops_->encode(canonical(ops_->encode(m))).bytes();
}

void Report::add_param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void Report::add_witness(const GroupString& s) {
  if (witnesses.size() < 10) witnesses.push_back(hex(s.bytes()));
}

std::string Report::line(bool include_timing) const {
  std::ostringstream os;
  os << "experiment=" << name;
  for (const auto& [k, v] : params) os << ' ' << k << '=' << v;
  os << " seed=" << seed << " trials=" << trials << " failures=" << failures;
  os << " witnesses=";
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) os << ',';
    os << witnesses[i];
  }
  if (include_timing) os << " wall_time_ms=" << wall_time_ms;
  return os.str();
}

Report verify_homomorphism(Morphism& M, const WhiteBox& wx, const WhiteBox& wy,
                           std::uint64_t trials, std::uint64_t seed) {
  Report report;
  report.name = "verify_homomorphism";
  report.seed = seed;
  report.trials = trials;

  using Key = std::vector<std::uint8_t>;
  std::unordered_map<Key, Key, KeyHash> fmap;      // pi_X(x) -> pi_Y(y)
  std::unordered_map<Key, Matrix, KeyHash> xrep;   // canonical matrices
  std::unordered_map<Key, Matrix, KeyHash> yrep;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const GroupString pair = M.graph().rand();
    auto [xs, ys] = M.split(pair);
    Key xk = wx.canonical_key(xs);
    Key yk = wy.canonical_key(ys);
    auto it = fmap.find(xk);
    if (it == fmap.end()) {
      xrep.emplace(xk, wx.canonical(xs));
      yrep.emplace(yk, wy.canonical(ys));
      fmap.emplace(std::move(xk), std::move(yk));
    } else if (it->second != yk) {
      ++report.failures;  // not functional
      report.add_witness(pair);
    }
    if (M.evaluator() && !wy.ops().eq((*M.evaluator())(xs), ys)) {
      ++report.failures;
      report.add_witness(pair);
    }
  }
  report.add_param("domain", std::to_string(fmap.size()));

  // multiplicativity over all composable sampled pairs (iteration capped so
  // the check stays quadratic only on white-box-sized domains)
  const ExplicitField& FX = wx.field();
  const ExplicitField& FY = wy.field();
  std::vector<const Key*> keys;
  keys.reserve(fmap.size());
  for (const auto& kv : fmap) keys.push_back(&kv.first);
  std::sort(keys.begin(), keys.end(), [](const Key* a, const Key* b) { return *a < *b; });
  const std::size_t iter_cap = 2'000'000;
  std::size_t iters = 0;
  std::size_t checked = 0;
  std::uint64_t mult_failures = 0;
  for (std::size_t i = 0; i < keys.size() && iters < iter_cap; ++i) {
    for (std::size_t j = 0; j < keys.size() && iters < iter_cap; ++j) {
      ++iters;
      const Matrix& a = xrep.at(*keys[i]);
      const Matrix& b = xrep.at(*keys[j]);
      const Matrix ab = mat_mul(FX, a, b);
      auto it = fmap.find(wx.canonical_key(ab));
      if (it == fmap.end()) continue;  // product not sampled
      ++checked;
      const Matrix& fa = yrep.at(fmap.at(*keys[i]));
      const Matrix& fb = yrep.at(fmap.at(*keys[j]));
      const Key got = wy.canonical_key(mat_mul(FY, fa, fb));
      if (got != it->second) ++mult_failures;
    }
  }
  report.failures += mult_failures;
  report.trials += checked;  // every multiplicativity check counts as a trial
  report.add_param("composable_pairs", std::to_string(checked));
  return report;
}

namespace {

// trace comparison up to the center scalars of a quotient backend
bool trace_matches(const ExplicitField& F, const FieldElement& got, const FieldElement& want,
                   const std::vector<FieldElement>& center) {
  for (const auto& lambda : center) {
    if (got == F.mul(lambda, want)) return true;
  }
  return false;
}

}  // namespace

Report verify_frobenius(EnrichedBox& E, const WhiteBox& W, const Bigint& p,
                        std::uint64_t trials, std::uint64_t seed) {
  Report report;
  report.name = "verify_frobenius";
  report.seed = seed;
  report.trials = trials;
  const ExplicitField& F = W.field();
  if (F.n() == 1) report.add_param("vacuous", "1");
  const auto& center = W.center_scalars();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const GroupString y = E.rand();
    const Matrix a = W.project(E.project_first(y));
    const Matrix b = W.project(E.project_first(E.shift(y)));
    const FieldElement want = F.pow(mat_trace(F, a), p);
    const FieldElement got = mat_trace(F, b);
    // center scalars act on traces; over (P)SL_2 this is the global sign
    if (!trace_matches(F, got, want, center)) {
      ++report.failures;
      report.add_witness(y);
    }
  }
  return report;
}

Report verify_inverse_transpose(EnrichedBox& E, const WhiteBox& W, std::uint64_t trials,
                                std::uint64_t seed) {
  Report report;
  report.name = "verify_inverse_transpose";
  report.seed = seed;
  report.trials = trials;
  const ExplicitField& F = W.field();
  const auto& center = W.center_scalars();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const GroupString y = E.rand();
    const Matrix a = W.project(E.project_first(y));
    const Matrix b = W.project(E.project_first(E.shift(y)));
    const FieldElement want = mat_trace(F, mat_inv(F, a));
    const FieldElement got = mat_trace(F, b);
    if (!trace_matches(F, got, want, center)) {
      ++report.failures;
      report.add_witness(y);
    }
  }
  return report;
}

HermitianOutcome find_hermitian_form(const ExplicitField& F, std::span<const Matrix> samples,
                                     const Bigint& q) {
  if (samples.size() < 2)
    return HermitianOutcome{HermitianOutcome::Status::inconclusive, std::nullopt};
  const unsigned n = samples.front().dim();
  const unsigned vars = n * n;
  // bar = entrywise q-power; q = p^k must be a power of p with even n/k ratio
  // (the field has an index-2 subfield of order q)
  unsigned k = 0;
  {
    Bigint qq = 1;
    while (qq < q) {
      qq *= F.p();
      ++k;
    }
    if (qq != q || F.n() % (2 * k) != 0)
      throw std::invalid_argument("find_hermitian_form: field is not quadratic over F_q");
  }
  auto bar = [&](const FieldElement& x) { return F.pow(x, q); };

  // rows of the homogeneous system (Mbar^T J M - J = 0), J row-major
  std::vector<std::vector<FieldElement>> rows;
  for (const auto& M : samples) {
    Matrix Mb = M;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) Mb.at(i, j) = bar(M.at(i, j));
    // (Mbar^T J M)_{ab} = sum_{c,d} Mbar_{ca} J_{cd} M_{db}
    for (unsigned a = 0; a < n; ++a) {
      for (unsigned b = 0; b < n; ++b) {
        std::vector<FieldElement> row(vars, F.zero());
        for (unsigned c = 0; c < n; ++c) {
          for (unsigned d = 0; d < n; ++d) {
            FieldElement coef = F.mul(Mb.at(c, a), M.at(d, b));
            if (c == a && d == b) coef = F.sub(coef, F.one());
            row[c * n + d] = F.add(row[c * n + d], coef);
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }

  // Gaussian elimination to row echelon form
  std::size_t rank = 0;
  std::vector<int> pivot_of_col(vars, -1);
  for (unsigned col = 0; col < vars && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && F.is_zero(rows[piv][col])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const FieldElement inv = F.inv(rows[rank][col]);
    for (unsigned j = col; j < vars; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || F.is_zero(rows[r][col])) continue;
      const FieldElement c = rows[r][col];
      for (unsigned j = col; j < vars; ++j)
        rows[r][j] = F.sub(rows[r][j], F.mul(c, rows[rank][j]));
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  const unsigned nullity = vars - static_cast<unsigned>(rank);
  if (nullity == 0) return HermitianOutcome{HermitianOutcome::Status::none, std::nullopt};
  if (nullity > 1)
    return HermitianOutcome{HermitianOutcome::Status::inconclusive, std::nullopt};

  // kernel vector: set the free variable to 1, back-substitute
  int free_col = -1;
  for (unsigned col = 0; col < vars; ++col)
    if (pivot_of_col[col] < 0) {
      free_col = static_cast<int>(col);
      break;
    }
  std::vector<FieldElement> sol(vars, F.zero());
  sol[free_col] = F.one();
  for (unsigned col = 0; col < vars; ++col) {
    const int pr = pivot_of_col[col];
    if (pr < 0) continue;
    sol[col] = F.neg(rows[pr][free_col]);
  }
  Matrix J(n, std::vector<FieldElement>(sol.begin(), sol.end()));

  // Hermitianize: J and Jbar^T span the same line, so nu J + nubar Jbar^T is
  // Hermitian; two choices of nu cannot both vanish.
  auto bar_t = [&](const Matrix& m) {
    Matrix out = m;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) out.at(i, j) = bar(m.at(j, i));
    return out;
  };
  Matrix Jbt = bar_t(J);
  Matrix H = J;
  bool zero = true;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      H.at(i, j) = F.add(J.at(i, j), Jbt.at(i, j));
      if (!F.is_zero(H.at(i, j))) zero = false;
    }
  if (zero) {
    // nu = t (any element with nubar != nu does the job in odd characteristic)
    std::vector<Bigint> c(F.n(), Bigint(0));
    if (F.n() >= 2) c[1] = 1; else c[0] = 2;
    const FieldElement nu = F.element(std::move(c));
    const FieldElement nub = bar(nu);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        H.at(i, j) = F.add(F.mul(nu, J.at(i, j)), F.mul(nub, Jbt.at(i, j)));
  }
  if (F.is_zero(mat_det(F, H)))
    return HermitianOutcome{HermitianOutcome::Status::none, std::nullopt};
  return HermitianOutcome{HermitianOutcome::Status::found, std::move(H)};
}

MrVerdict miller_rabin(const Bigint& n, int rounds, std::uint64_t seed) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("miller_rabin: n must be odd and >= 3");
  return is_probable_prime(n, rounds, seed ^ 0x6d72u) ? MrVerdict::probably_prime
                                                      : MrVerdict::composite;
}

std::size_t closure_order(const ExplicitField& F, std::span<const Matrix> gens,
                          std::size_t limit) {
  using Key = std::vector<std::uint8_t>;
  const unsigned dim = gens.empty() ? 0 : gens.front().dim();
  if (gens.empty()) return 0;
  auto key_of = [&](const Matrix& m) {
    Key key(static_cast<std::size_t>(dim) * dim * F.element_byte_width());
    const std::size_t w = F.element_byte_width();
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j)
        F.encode(m.at(i, j), key.data() + (static_cast<std::size_t>(i) * dim + j) * w);
    return key;
  };
  std::unordered_set<Key, KeyHash> seen;
  std::deque<Matrix> frontier;
  for (const auto& g : gens) {
    if (seen.insert(key_of(g)).second) frontier.push_back(g);
  }
  while (!frontier.empty()) {
    Matrix x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      Matrix y = mat_mul(F, x, g);
      if (seen.insert(key_of(y)).second) {
        if (seen.size() > limit) throw std::runtime_error("closure_order: limit exceeded");
        frontier.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

Bigint closure_exponent(const ExplicitField& F, std::span<const Matrix> gens,
                        std::size_t limit) {
  using Key = std::vector<std::uint8_t>;
  if (gens.empty()) return 1;
  const unsigned dim = gens.front().dim();
  auto key_of = [&](const Matrix& m) {
    Key key(static_cast<std::size_t>(dim) * dim * F.element_byte_width());
    const std::size_t w = F.element_byte_width();
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j)
        F.encode(m.at(i, j), key.data() + (static_cast<std::size_t>(i) * dim + j) * w);
    return key;
  };
  std::unordered_set<Key, KeyHash> seen;
  std::deque<Matrix> frontier;
  std::vector<Matrix> all;
  for (const auto& g : gens) {
    if (seen.insert(key_of(g)).second) {
      frontier.push_back(g);
      all.push_back(g);
    }
  }
  while (!frontier.empty()) {
    Matrix x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      Matrix y = mat_mul(F, x, g);
      if (seen.insert(key_of(y)).second) {
        if (seen.size() > limit) throw std::runtime_error("closure_exponent: limit exceeded");
        frontier.push_back(y);
        all.push_back(std::move(y));
      }
    }
  }
  Bigint e = 1;
  for (const auto& m : all) {
    Bigint o = 1;
    Matrix r = m;
    while (!mat_is_identity(F, r)) {
      r = mat_mul(F, r, m);
      ++o;
    }
    e = lcm(e, o);
  }
  return e;
}

std::map<std::vector<std::uint8_t>, std::uint64_t> sample_census(BlackBox& X, const WhiteBox& W,
                                                                 std::uint64_t trials) {
  std::map<std::vector<std::uint8_t>, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < trials; ++t) ++counts[W.canonical_key(X.rand())];
  return counts;
}

double chi_square_uniform(const std::map<std::vector<std::uint8_t>, std::uint64_t>& counts,
                          std::size_t classes, std::uint64_t trials) {
  const double expected = static_cast<double>(trials) / static_cast<double>(classes);
  double stat = 0.0;
  std::uint64_t observed_total = 0;
  for (const auto& [key, c] : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
    observed_total += c;
  }
  // classes never observed
  const std::size_t missing = classes - counts.size();
  stat += static_cast<double>(missing) * expected;
  if (observed_total != trials) throw std::logic_error("chi_square_uniform: bad counts");
  return stat;
}

double chi_square_quantile(double df, double alpha) {
  // Wilson-Hilferty: X ~ df * (1 - 2/(9 df) + z * sqrt(2/(9 df)))^3
  // z: inverse normal quantile via Acklam's rational approximation
  auto inv_norm = [](double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
      q = std::sqrt(-2 * std::log(p));
      return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
      q = std::sqrt(-2 * std::log(1 - p));
      return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  };
  const double z = inv_norm(1.0 - alpha);
  const double t = 2.0 / (9.0 * df);
  const double base = 1.0 - t + z * std::sqrt(t);
  return df * base * base * base;
}

}  // namespace bbg
