// bbg: command-line driver for the black box group toolkit.
//
// Subcommands: ff-check, involution, frobenius, invtrans, su-embed, verify,
// mr. Every run is deterministic given --seed (default from BBGROUP_SEED);
// reports are appended as line-delimited key=value records.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "bbg/frobenius.hpp"
#include "bbg/harness.hpp"
#include "bbg/io.hpp"
#include "bbg/standard.hpp"
#include "bbg/twisted.hpp"

using namespace bbg;

namespace {

struct Output {
  std::string path;
  bool timing = false;

  void emit(Report rep, std::uint64_t ms) {
    rep.wall_time_ms = ms;
    const std::string line = rep.line(timing);
    if (path.empty()) {
      std::cout << line << "\n";
    } else {
      std::ofstream out(path, std::ios::app);
      out << line << "\n";
    }
  }
};

class Timer {
 public:
  std::uint64_t ms() const {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

FieldPtr field_for(const Bigint& p, unsigned k) {
  return ExplicitField::from_polynomial(p, k, find_irreducible(p, k));
}

// q = p^k for a known prime p (trial division for small q, Miller-Rabin
// certificate for a large prime q)
std::pair<Bigint, unsigned> split_prime_power(const Bigint& q) {
  if (q < 2) throw std::invalid_argument("q must be >= 2");
  if (bit_length(q) > 24) {
    if (!is_probable_prime(q)) throw std::invalid_argument("large q must be prime");
    return {q, 1};
  }
  Bigint p = q;
  for (Bigint d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned k = 0;
  Bigint rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw std::invalid_argument("q must be a prime power");
  return {p, k};
}

int run_ff_check(const std::string& file, const std::string& p_str, unsigned n,
                 const std::string& poly, int triples, std::uint64_t seed, Output& out) {
  Timer timer;
  Report rep;
  rep.name = "ff_check";
  rep.seed = seed;
  FieldPtr F;
  try {
    if (!file.empty()) {
      F = read_field_description_file(file);
    } else {
      const Bigint p(p_str);
      if (bit_length(p) > 20 && !is_probable_prime(p))
        throw std::invalid_argument("p fails Miller-Rabin");
      if (poly.empty()) {
        F = field_for(p, n);
      } else {
        std::vector<Bigint> coeffs;
        std::istringstream is(poly);
        std::string tok;
        while (is >> tok) coeffs.emplace_back(tok);
        F = ExplicitField::from_polynomial(p, n, std::move(coeffs));
      }
    }
    Rng rng(seed);
    F->check_axioms(rng, triples);
    rep.trials = static_cast<std::uint64_t>(triples);
    rep.failures = 0;
  } catch (const std::exception& e) {
    rep.trials = static_cast<std::uint64_t>(triples);
    rep.failures = 1;
    rep.add_param("error", std::string("\"") + e.what() + "\"");
  }
  if (F) {
    std::ostringstream os;
    os << F->p() << '^' << F->n();
    rep.add_param("field", os.str());
  }
  out.emit(rep, timer.ms());
  return rep.failures == 0 ? 0 : 1;
}

int run_involution(const Bigint& q, int trials, int budget, std::uint64_t seed, Output& out) {
  Timer timer;
  // q must be a power of two
  Bigint qq = q;
  unsigned n = 0;
  while (qq > 1 && qq % 2 == 0) {
    qq /= 2;
    ++n;
  }
  if (qq != 1 || n < 2) throw CLI::ValidationError("--q must be 2^n with n >= 2");
  auto F = field_for(2, n);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, seed);
  BlackBox& X = handle.box;
  const auto E = FactoredInteger::trial_division(*X.exponent());
  Report rep;
  rep.name = "kk_involution";
  rep.seed = seed;
  rep.trials = static_cast<std::uint64_t>(trials);
  rep.add_param("q", q.str());
  for (int t = 0; t < trials; ++t) {
    try {
      const GroupString z = kk_involution(X, *E, budget);
      if (X.is_identity(z) || !X.is_identity(X.mul(z, z))) {
        ++rep.failures;
        rep.add_witness(z);
      }
    } catch (const BudgetExhausted&) {
      ++rep.failures;
    }
  }
  out.emit(rep, timer.ms());
  return rep.failures == 0 ? 0 : 1;
}

int run_frobenius(const std::string& group, const Bigint& p, unsigned k, int budget,
                  std::uint64_t trials, std::uint64_t seed, Output& out) {
  Timer timer;
  auto F = field_for(p, k);
  // both modes share the backend: strings encode SL_2 matrices and equality
  // is taken modulo the center (for sl2 this is the center-aware equality of
  // the construction; for psl2 it is the quotient encryption itself)
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), true, {}, seed);
  BlackBox& X = handle.box;
  WhiteBox W(handle.ops);
  const auto E = FactoredInteger::trial_division(*X.exponent());
  if (!E) throw std::runtime_error("exponent not factorable by trial division");
  FrobeniusJob job{p, k, *E, budget, 4096, 64, seed};
  auto accept = [&](EnrichedBox& box) {
    Report probe = verify_frobenius(box, W, p, 200, seed);
    return probe.failures == 0;
  };
  FrobeniusResult r = frobenius_psl2(X, job, accept);
  Report rep = verify_frobenius(r.box, W, p, trials, seed);
  rep.name = "frobenius";
  rep.add_param("group", group);
  rep.add_param("p", p.str());
  rep.add_param("k", std::to_string(k));
  rep.add_param("eps", std::to_string(job.eps()));
  rep.add_param("attempts", std::to_string(r.attempts));
  rep.add_param("accepted", r.accepted ? "1" : "0");
  rep.add_param("torus_orders", r.order1.str() + "," + r.order2.str());
  out.emit(rep, timer.ms());
  return rep.failures == 0 ? 0 : 1;
}

int run_invtrans(unsigned dim, const Bigint& q, std::uint64_t trials, const std::string& datum_file,
                 std::uint64_t seed, Output& out) {
  Timer timer;
  const auto [p, k] = split_prime_power(q);
  if (p == 2) throw CLI::ValidationError("invtrans requires odd q");
  auto F = field_for(p, k);
  auto handle = bb_matrix(F, dim, sl_generators(*F, dim), false, {}, seed);
  BlackBox& X = handle.box;
  WhiteBox W(handle.ops);
  const CurtisTitsDatum datum =
      datum_file.empty() ? standard_sl_datum(*handle.ops, seed) : read_datum_file(datum_file);
  check_datum(X, datum);
  EnrichedBox E = inverse_transpose(X, datum, {}, seed);
  Report rep = verify_inverse_transpose(E, W, trials, seed);
  rep.name = "invtrans";
  rep.add_param("n", std::to_string(dim));
  rep.add_param("q", q.str());
  out.emit(rep, timer.ms());
  return rep.failures == 0 ? 0 : 1;
}

int run_su_embed(unsigned dim, const Bigint& q, int samples, bool census,
                 const std::string& datum_file, std::uint64_t seed, Output& out) {
  Timer timer;
  const auto [p, k] = split_prime_power(q);
  if (p == 2) throw CLI::ValidationError("su-embed requires odd q");
  auto F = field_for(p, 2 * k);  // F_{q^2}
  auto handle = bb_matrix(F, dim, sl_generators(*F, dim), false, {}, seed);
  BlackBox& X = handle.box;
  WhiteBox W(handle.ops);
  const CurtisTitsDatum datum =
      datum_file.empty() ? standard_sl_datum(*handle.ops, seed) : read_datum_file(datum_file);
  BlackBox su = su_subgroup(X, datum, q, SuOptions{6, 64, seed});
  std::vector<Matrix> sample_mats;
  sample_mats.reserve(static_cast<std::size_t>(samples));
  for (int t = 0; t < samples; ++t) sample_mats.push_back(W.project(su.rand()));
  const auto outcome = find_hermitian_form(*F, sample_mats, q);
  Report rep;
  rep.name = "su_embed";
  rep.seed = seed;
  rep.trials = static_cast<std::uint64_t>(samples);
  rep.add_param("n", std::to_string(dim));
  rep.add_param("q", q.str());
  switch (outcome.status) {
    case HermitianOutcome::Status::found:
      rep.add_param("hermitian", "found");
      break;
    case HermitianOutcome::Status::none:
      rep.add_param("hermitian", "none");
      ++rep.failures;
      break;
    case HermitianOutcome::Status::inconclusive:
      rep.add_param("hermitian", "inconclusive");
      ++rep.failures;
      break;
  }
  if (census) {
    std::vector<Matrix> gens;
    for (int t = 0; t < 12; ++t) gens.push_back(W.project(su.rand()));
    const std::size_t order = closure_order(*F, gens, 2'000'000);
    rep.add_param("census", std::to_string(order));
  }
  out.emit(rep, timer.ms());
  return rep.failures == 0 ? 0 : 1;
}

int run_verify(const std::string& target, const Bigint& p, unsigned k, unsigned dim,
               std::uint64_t trials, std::uint64_t seed, Output& out) {
  Timer timer;
  int rc = 0;
  if (target == "frobenius") {
    auto F = field_for(p, k);
    auto handle = bb_matrix(F, 2, sl_generators(*F, 2), true, {}, seed);
    WhiteBox W(handle.ops);
    const auto E = FactoredInteger::trial_division(*handle.box.exponent());
    FrobeniusJob job{p, k, *E, 10, 4096, 64, seed};
    FrobeniusResult r = frobenius_psl2(handle.box, job);
    Report pos = verify_frobenius(r.box, W, p, trials, seed);
    pos.add_param("control", "positive");
    out.emit(pos, timer.ms());
    // negative control: the identity shift on the same generators
    std::vector<std::vector<GroupString>> tuples;
    for (const auto& g : sl_generators(*F, 2)) {
      const GroupString s = handle.ops->encode(g);
      tuples.push_back({s, s});
    }
    EnrichedBox ident = enrich(handle.box, 2, tuples, {}, seed);
    Report neg = verify_frobenius(ident, W, p, trials, seed);
    neg.add_param("control", "negative");
    out.emit(neg, timer.ms());
    rc = (pos.failures == 0 && neg.failures > 0) ? 0 : 1;
  } else if (target == "invtrans") {
    auto F = field_for(p, k);
    auto handle = bb_matrix(F, dim, sl_generators(*F, dim), false, {}, seed);
    WhiteBox W(handle.ops);
    const CurtisTitsDatum datum = standard_sl_datum(*handle.ops, seed);
    EnrichedBox E = inverse_transpose(handle.box, datum, {}, seed);
    Report pos = verify_inverse_transpose(E, W, trials, seed);
    pos.add_param("control", "positive");
    out.emit(pos, timer.ms());
    std::vector<Local> id_locals;
    for (const auto& node : datum.nodes) {
      std::vector<GroupString> gens = node.k_gens;
      gens.push_back(node.t_split);
      id_locals.push_back(Local{std::move(gens), identity_map()});
    }
    EnrichedBox ident = amalgamate(handle.box, id_locals, 2, {}, seed);
    Report neg = verify_inverse_transpose(ident, W, trials, seed);
    neg.add_param("control", "negative");
    out.emit(neg, timer.ms());
    rc = (pos.failures == 0 && neg.failures > 0) ? 0 : 1;
  } else if (target == "hom") {
    auto F = field_for(p, k);
    auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, seed);
    WhiteBox W(handle.ops);
    std::vector<std::pair<GroupString, GroupString>> pairs;
    for (const auto& g : sl_generators(*F, 2)) {
      const GroupString s = handle.ops->encode(g);
      pairs.emplace_back(s, s);
    }
    Morphism M = morphism_from_pairs(handle.box, handle.box, pairs, {}, seed);
    Report pos = verify_homomorphism(M, W, W, trials, seed);
    pos.add_param("control", "positive");
    out.emit(pos, timer.ms());
    // corrupt one pair: swap the image of the first generator with its inverse
    auto bad_pairs = pairs;
    bad_pairs[0].second = handle.box.inv(handle.box.mul(bad_pairs[0].second, bad_pairs[1].second));
    Morphism Mbad = morphism_from_pairs(handle.box, handle.box, bad_pairs, {}, seed);
    Report neg = verify_homomorphism(Mbad, W, W, trials, seed);
    neg.add_param("control", "negative");
    out.emit(neg, timer.ms());
    rc = (pos.failures == 0 && neg.failures > 0) ? 0 : 1;
  } else {
    throw CLI::ValidationError("--target must be frobenius, invtrans, or hom");
  }
  return rc;
}

int run_mr(const Bigint& n, int rounds, std::uint64_t seed, Output& out) {
  Timer timer;
  Report rep;
  rep.name = "miller_rabin";
  rep.seed = seed;
  rep.trials = static_cast<std::uint64_t>(rounds);
  rep.add_param("n", n.str());
  const MrVerdict v = miller_rabin(n, rounds, seed);
  rep.add_param("verdict", v == MrVerdict::composite ? "composite" : "probably-prime");
  out.emit(rep, timer.ms());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"black box group toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "base seed for all randomness")->envname("BBGROUP_SEED");
  Output out;
  app.add_option("--out", out.path, "append report lines to this file");
  app.add_flag("--timing", out.timing, "include wall_time_ms in report lines");

  auto* ff = app.add_subcommand("ff-check", "validate an explicit field");
  std::string ff_file, ff_p = "2", ff_poly;
  unsigned ff_n = 1;
  int ff_triples = 40;
  ff->add_option("--file", ff_file, "field description file");
  ff->add_option("--p", ff_p);
  ff->add_option("--n", ff_n);
  ff->add_option("--poly", ff_poly, "ascending coefficients, space separated");
  ff->add_option("--triples", ff_triples);

  auto* inv = app.add_subcommand("involution", "Kantor-Kassabov involutions in SL2(2^n)");
  std::string inv_q = "4";
  int inv_trials = 100, inv_budget = 64;
  inv->add_option("--q", inv_q)->required();
  inv->add_option("--trials", inv_trials);
  inv->add_option("--budget", inv_budget);

  auto* fr = app.add_subcommand("frobenius", "Frobenius morphism on (P)SL2(p^k)");
  std::string fr_group = "psl2", fr_p = "3";
  unsigned fr_k = 2;
  int fr_budget = 10;
  std::uint64_t fr_trials = 1000;
  fr->add_option("--group", fr_group)->check(CLI::IsMember({"psl2", "sl2"}));
  fr->add_option("--p", fr_p)->required();
  fr->add_option("--k", fr_k)->required();
  fr->add_option("--budget", fr_budget);
  fr->add_option("--trials", fr_trials);

  auto* it = app.add_subcommand("invtrans", "inverse-transpose morphism on SL_n(q)");
  unsigned it_n = 3;
  std::string it_q = "5", it_datum;
  std::uint64_t it_trials = 1000;
  it->add_option("--n", it_n);
  it->add_option("--q", it_q)->required();
  it->add_option("--trials", it_trials);
  it->add_option("--datum", it_datum, "Curtis-Tits datum file");

  auto* su = app.add_subcommand("su-embed", "SU_n(q) inside SL_n(q^2)");
  unsigned su_n = 3;
  std::string su_q = "5", su_datum;
  int su_samples = 200;
  bool su_census = false;
  su->add_option("--n", su_n);
  su->add_option("--q", su_q)->required();
  su->add_option("--samples", su_samples);
  su->add_flag("--census", su_census, "white-box closure census (small q only)");
  su->add_option("--datum", su_datum);

  auto* ve = app.add_subcommand("verify", "positive and negative verifier controls");
  std::string ve_target = "frobenius", ve_p = "3";
  unsigned ve_k = 2, ve_n = 3;
  std::uint64_t ve_trials = 500;
  ve->add_option("--target", ve_target)->check(CLI::IsMember({"frobenius", "invtrans", "hom"}));
  ve->add_option("--p", ve_p);
  ve->add_option("--k", ve_k);
  ve->add_option("--n", ve_n);
  ve->add_option("--trials", ve_trials);

  auto* mr = app.add_subcommand("mr", "Miller-Rabin verification-problem demo");
  std::string mr_n;
  int mr_rounds = 20;
  mr->add_option("--n", mr_n)->required();
  mr->add_option("--rounds", mr_rounds);

  for (auto* sub : {ff, inv, fr, it, su, ve, mr}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ff->parsed()) return run_ff_check(ff_file, ff_p, ff_n, ff_poly, ff_triples, seed, out);
    if (inv->parsed()) return run_involution(Bigint(inv_q), inv_trials, inv_budget, seed, out);
    if (fr->parsed())
      return run_frobenius(fr_group, Bigint(fr_p), fr_k, fr_budget, fr_trials, seed, out);
    if (it->parsed()) return run_invtrans(it_n, Bigint(it_q), it_trials, it_datum, seed, out);
    if (su->parsed())
      return run_su_embed(su_n, Bigint(su_q), su_samples, su_census, su_datum, seed, out);
    if (ve->parsed()) return run_verify(ve_target, Bigint(ve_p), ve_k, ve_n, ve_trials, seed, out);
    if (mr->parsed()) return run_mr(Bigint(mr_n), mr_rounds, seed, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
