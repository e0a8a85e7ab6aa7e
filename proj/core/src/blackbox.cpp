#include "bbg/blackbox.hpp"

#include <stdexcept>

namespace bbg {

GroupString GroupString::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > bytes_.size()) throw std::out_of_range("GroupString::slice");
  return GroupString(std::vector<std::uint8_t>(bytes_.begin() + offset,
                                               bytes_.begin() + offset + len));
}

GroupString GroupString::concat(std::span<const GroupString> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<std::uint8_t> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.bytes().begin(), p.bytes().end());
  return GroupString(std::move(out));
}

void GroupOps::check(const GroupString& s) const {
  if (s.size() != string_length())
    throw std::invalid_argument("group string length mismatch");
}

ProductReplacementState::ProductReplacementState(const GroupOps& ops,
                                                 std::span<const GroupString> seeds,
                                                 PrParams params, Rng rng)
    : params_(params), acc_(ops.identity()), rng_(rng) {
  if (seeds.empty()) throw std::invalid_argument("product replacement: empty seed list");
  std::size_t r = params.slots ? params.slots : std::max<std::size_t>(10, 2 * seeds.size());
  params_.slots = r;
  if (params_.burn_in_steps == static_cast<std::size_t>(-1))
    params_.burn_in_steps = 50 * seeds.size();
  slots_.reserve(r);
  for (std::size_t i = 0; i < r; ++i) slots_.push_back(seeds[i % seeds.size()]);
  for (std::size_t i = 0; i < params_.burn_in_steps; ++i) step(ops);
}

void ProductReplacementState::step(const GroupOps& ops) {
  const std::size_t r = slots_.size();
  const std::size_t i = rng_.below(r);
  std::size_t j = i;
  if (r > 1) {
    j = rng_.below(r - 1);
    if (j >= i) ++j;
  }
  const bool invert = rng_.coin();
  const bool right = rng_.coin();
  const GroupString t = invert ? ops.inv(slots_[j]) : slots_[j];
  slots_[i] = right ? ops.mul(slots_[i], t) : ops.mul(t, slots_[i]);
  acc_ = ops.mul(acc_, slots_[rng_.below(r)]);
  ++steps_;
}

GroupString ProductReplacementState::next(const GroupOps& ops) {
  step(ops);
  return acc_;
}

GeneratedSampler::GeneratedSampler(OpsPtr ops, std::span<const GroupString> seeds,
                                   PrParams params, std::uint64_t seed)
    : ops_(std::move(ops)),
      seeds_(seeds.begin(), seeds.end()),
      params_(params),
      pr_(*ops_, seeds, params, Rng(seed)) {}

GroupString GeneratedSampler::next(const GroupOps& ops) { return pr_.next(ops); }

std::unique_ptr<Sampler> GeneratedSampler::clone_reseeded(std::uint64_t seed) const {
  return std::make_unique<GeneratedSampler>(ops_, seeds_, params_, seed);
}

BlackBox::BlackBox(OpsPtr ops, std::unique_ptr<Sampler> sampler, std::optional<Bigint> exponent)
    : ops_(std::move(ops)), sampler_(std::move(sampler)), exponent_(std::move(exponent)) {
  if (!ops_) throw std::invalid_argument("BlackBox: null ops");
  if (!sampler_) throw std::invalid_argument("BlackBox: null sampler");
}

BlackBox BlackBox::clone(std::uint64_t seed) const {
  return BlackBox(ops_, sampler_->clone_reseeded(seed), exponent_);
}

GroupString bb_pow(const GroupOps& ops, const GroupString& x, Bigint e) {
  if (e < 0) return bb_pow(ops, ops.inv(x), -e);
  GroupString r = ops.identity();
  GroupString base = x;
  while (e > 0) {
    if ((e & 1) != 0) r = ops.mul(r, base);
    if (e > 1) base = ops.mul(base, base);
    e >>= 1;
  }
  return r;
}

GroupString bb_pow(const BlackBox& box, const GroupString& x, const Bigint& e) {
  return bb_pow(*box.ops(), x, e);
}

DirectProductOps::DirectProductOps(OpsPtr left, OpsPtr right)
    : left_(std::move(left)), right_(std::move(right)) {}

std::size_t DirectProductOps::string_length() const {
  return left_->string_length() + right_->string_length();
}

std::pair<GroupString, GroupString> DirectProductOps::split(const GroupString& s) const {
  check(s);
  const std::size_t ll = left_->string_length();
  return {s.slice(0, ll), s.slice(ll, right_->string_length())};
}

GroupString DirectProductOps::identity() const {
  const GroupString parts[] = {left_->identity(), right_->identity()};
  return GroupString::concat(parts);
}

GroupString DirectProductOps::mul(const GroupString& a, const GroupString& b) const {
  auto [ax, ay] = split(a);
  auto [bx, by] = split(b);
  const GroupString parts[] = {left_->mul(ax, bx), right_->mul(ay, by)};
  return GroupString::concat(parts);
}

GroupString DirectProductOps::inv(const GroupString& a) const {
  auto [ax, ay] = split(a);
  const GroupString parts[] = {left_->inv(ax), right_->inv(ay)};
  return GroupString::concat(parts);
}

bool DirectProductOps::eq(const GroupString& a, const GroupString& b) const {
  auto [ax, ay] = split(a);
  auto [bx, by] = split(b);
  return left_->eq(ax, bx) && right_->eq(ay, by);
}

namespace {

class ProductSampler : public Sampler {
 public:
  ProductSampler(OpsPtr lops, OpsPtr rops, std::unique_ptr<Sampler> ls,
                 std::unique_ptr<Sampler> rs)
      : lops_(std::move(lops)), rops_(std::move(rops)), ls_(std::move(ls)), rs_(std::move(rs)) {}

  GroupString next(const GroupOps&) override {
    const GroupString parts[] = {ls_->next(*lops_), rs_->next(*rops_)};
    return GroupString::concat(parts);
  }

  std::unique_ptr<Sampler> clone_reseeded(std::uint64_t seed) const override {
    Rng rng(seed);
    const auto s1 = rng.next();
    const auto s2 = rng.next();
    return std::make_unique<ProductSampler>(lops_, rops_, ls_->clone_reseeded(s1),
                                            rs_->clone_reseeded(s2));
  }

 private:
  OpsPtr lops_, rops_;
  std::unique_ptr<Sampler> ls_, rs_;
};

}  // namespace

BlackBox bb_direct_product(BlackBox x, BlackBox y) {
  auto ops = std::make_shared<DirectProductOps>(x.ops(), y.ops());
  std::optional<Bigint> e;
  if (x.exponent() && y.exponent()) e = lcm(*x.exponent(), *y.exponent());
  auto sampler = std::make_unique<ProductSampler>(x.ops(), y.ops(), std::move(x.sampler_),
                                                  std::move(y.sampler_));
  return BlackBox(std::move(ops), std::move(sampler), std::move(e));
}

BlackBox bb_generated(const OpsPtr& ops, std::optional<Bigint> exponent,
                      std::span<const GroupString> seeds, PrParams params,
                      std::uint64_t seed) {
  if (seeds.empty()) throw std::invalid_argument("bb_generated: empty seed list");
  for (const auto& s : seeds)
    if (s.size() != ops->string_length())
      throw std::invalid_argument("bb_generated: seed length mismatch");
  return BlackBox(ops, std::make_unique<GeneratedSampler>(ops, seeds, params, seed),
                  std::move(exponent));
}

BlackBox bb_generated(const BlackBox& parent, std::span<const GroupString> seeds,
                      PrParams params, std::uint64_t seed) {
  return bb_generated(parent.ops(), parent.exponent(), seeds, params, seed);
}

PowerOps::PowerOps(OpsPtr base, std::size_t k) : base_(std::move(base)), k_(k) {
  if (k_ < 1) throw std::invalid_argument("PowerOps: k must be >= 1");
}

std::size_t PowerOps::string_length() const { return base_->string_length() * k_; }

GroupString PowerOps::component(const GroupString& s, std::size_t i) const {
  check(s);
  if (i >= k_) throw std::out_of_range("PowerOps::component");
  const std::size_t l = base_->string_length();
  return s.slice(i * l, l);
}

GroupString PowerOps::rotate_left(const GroupString& s) const {
  check(s);
  const std::size_t l = base_->string_length();
  std::vector<std::uint8_t> out;
  out.reserve(s.size());
  out.insert(out.end(), s.bytes().begin() + l, s.bytes().end());
  out.insert(out.end(), s.bytes().begin(), s.bytes().begin() + l);
  return GroupString(std::move(out));
}

GroupString PowerOps::identity() const {
  std::vector<GroupString> parts(k_, base_->identity());
  return GroupString::concat(parts);
}

GroupString PowerOps::mul(const GroupString& a, const GroupString& b) const {
  check(a);
  check(b);
  std::vector<GroupString> parts;
  parts.reserve(k_);
  for (std::size_t i = 0; i < k_; ++i)
    parts.push_back(base_->mul(component(a, i), component(b, i)));
  return GroupString::concat(parts);
}

GroupString PowerOps::inv(const GroupString& a) const {
  check(a);
  std::vector<GroupString> parts;
  parts.reserve(k_);
  for (std::size_t i = 0; i < k_; ++i) parts.push_back(base_->inv(component(a, i)));
  return GroupString::concat(parts);
}

bool PowerOps::eq(const GroupString& a, const GroupString& b) const {
  check(a);
  check(b);
  for (std::size_t i = 0; i < k_; ++i)
    if (!base_->eq(component(a, i), component(b, i))) return false;
  return true;
}

Bigint global_exponent_gl(unsigned n, const Bigint& p, unsigned k) {
  if (n < 1) throw std::invalid_argument("global_exponent_gl: dimension must be >= 1");
  Bigint q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  Bigint ppart = 1;
  while (ppart < n) ppart *= p;
  Bigint l = 1;
  Bigint qi = 1;
  for (unsigned i = 1; i <= n; ++i) {
    qi *= q;
    l = lcm(l, Bigint(qi - 1));
  }
  return ppart * l;
}

}  // namespace bbg
