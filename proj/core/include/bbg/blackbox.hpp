#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bbg/bigint.hpp"

namespace bbg {

/// Opaque fixed-length byte string encrypting a group element, possibly
/// non-uniquely. Byte equality (operator==) is NOT semantic equality; only a
/// box's eq oracle decides whether two strings encrypt the same element.
class GroupString {
 public:
  GroupString() = default;
  explicit GroupString(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  std::size_t size() const { return bytes_.size(); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::uint8_t* data() { return bytes_.data(); }
  const std::uint8_t* data() const { return bytes_.data(); }

  GroupString slice(std::size_t offset, std::size_t len) const;
  static GroupString concat(std::span<const GroupString> parts);

  bool operator==(const GroupString& o) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Oracle operation table of one encrypted group: multiply, invert, decide
/// equality, plus an identity string. Immutable and shareable between boxes
/// over the same group.
class GroupOps {
 public:
  virtual ~GroupOps() = default;
  virtual std::size_t string_length() const = 0;
  virtual GroupString identity() const = 0;
  virtual GroupString mul(const GroupString& a, const GroupString& b) const = 0;
  virtual GroupString inv(const GroupString& a) const = 0;
  virtual bool eq(const GroupString& a, const GroupString& b) const = 0;

 protected:
  void check(const GroupString& s) const;
};

using OpsPtr = std::shared_ptr<const GroupOps>;

/// Randomness source of a box; owns all of its mutable state.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual GroupString next(const GroupOps& ops) = 0;
  virtual std::unique_ptr<Sampler> clone_reseeded(std::uint64_t seed) const = 0;
};

struct PrParams {
  std::size_t slots = 0;  // 0: max(10, 2 * #seeds)
  std::size_t burn_in_steps = static_cast<std::size_t>(-1);  // default 50 * #seeds
};

/// Product replacement walk with a rattle accumulator: a step replaces one
/// slot by its product with another slot (or its inverse, either side), then
/// multiplies the accumulator by a random slot. next() performs one step and
/// returns the accumulator. Every slot stays inside the subgroup generated by
/// the seeds.
class ProductReplacementState {
 public:
  ProductReplacementState(const GroupOps& ops, std::span<const GroupString> seeds,
                          PrParams params, Rng rng);

  GroupString next(const GroupOps& ops);

  const std::vector<GroupString>& slots() const { return slots_; }
  const GroupString& accumulator() const { return acc_; }
  std::uint64_t steps_taken() const { return steps_; }
  const PrParams& params() const { return params_; }

 private:
  void step(const GroupOps& ops);

  PrParams params_;
  std::vector<GroupString> slots_;
  GroupString acc_;
  std::uint64_t steps_ = 0;
  Rng rng_;
};

/// Black box group: oracle bundle over some finite group, with an optional
/// global exponent annihilating every encrypted element. Move-only; clone(seed) yields an
/// independent instance with a freshly seeded randomness stream. rand()
/// mutates only instance-local state; every other operation is pure, so
/// parallel experiments run on independent clones.
class BlackBox {
 public:
  BlackBox(OpsPtr ops, std::unique_ptr<Sampler> sampler, std::optional<Bigint> exponent);
  BlackBox(BlackBox&&) noexcept = default;
  BlackBox& operator=(BlackBox&&) noexcept = default;
  BlackBox(const BlackBox&) = delete;
  BlackBox& operator=(const BlackBox&) = delete;

  std::size_t string_length() const { return ops_->string_length(); }
  GroupString rand() { return sampler_->next(*ops_); }
  GroupString mul(const GroupString& a, const GroupString& b) const { return ops_->mul(a, b); }
  GroupString inv(const GroupString& a) const { return ops_->inv(a); }
  bool eq(const GroupString& a, const GroupString& b) const { return ops_->eq(a, b); }
  GroupString identity() const { return ops_->identity(); }
  bool is_identity(const GroupString& a) const { return ops_->eq(a, ops_->identity()); }

  const std::optional<Bigint>& exponent() const { return exponent_; }
  void set_exponent(std::optional<Bigint> e) { exponent_ = std::move(e); }
  const OpsPtr& ops() const { return ops_; }
  const Sampler& sampler() const { return *sampler_; }

  BlackBox clone(std::uint64_t seed) const;

 private:
  friend BlackBox bb_direct_product(BlackBox x, BlackBox y);
  OpsPtr ops_;
  std::unique_ptr<Sampler> sampler_;
  std::optional<Bigint> exponent_;
};

/// x^e by repeated squaring on the oracle operations; negative e uses inv.
GroupString bb_pow(const GroupOps& ops, const GroupString& x, Bigint e);
GroupString bb_pow(const BlackBox& box, const GroupString& x, const Bigint& e);

/// Componentwise direct product; strings are concatenations, sampling is
/// independent per component, and the exponent is lcm of the component
/// exponents when both are present.
BlackBox bb_direct_product(BlackBox x, BlackBox y);

class DirectProductOps : public GroupOps {
 public:
  DirectProductOps(OpsPtr left, OpsPtr right);
  std::size_t string_length() const override;
  GroupString identity() const override;
  GroupString mul(const GroupString& a, const GroupString& b) const override;
  GroupString inv(const GroupString& a) const override;
  bool eq(const GroupString& a, const GroupString& b) const override;

  const OpsPtr& left() const { return left_; }
  const OpsPtr& right() const { return right_; }
  std::pair<GroupString, GroupString> split(const GroupString& s) const;

 private:
  OpsPtr left_, right_;
};

/// Ops of the k-th direct power of a base group (used for bundled tuples).
class PowerOps : public GroupOps {
 public:
  PowerOps(OpsPtr base, std::size_t k);
  std::size_t string_length() const override;
  GroupString identity() const override;
  GroupString mul(const GroupString& a, const GroupString& b) const override;
  GroupString inv(const GroupString& a) const override;
  bool eq(const GroupString& a, const GroupString& b) const override;

  const OpsPtr& base() const { return base_; }
  std::size_t k() const { return k_; }
  GroupString component(const GroupString& s, std::size_t i) const;
  GroupString rotate_left(const GroupString& s) const;

 private:
  OpsPtr base_;
  std::size_t k_;
};

/// Sampler backed by a product replacement walk over fixed seed strings;
/// reseeded clones re-run the burn-in from the original seeds.
class GeneratedSampler : public Sampler {
 public:
  GeneratedSampler(OpsPtr ops, std::span<const GroupString> seeds, PrParams params,
                   std::uint64_t seed);
  GroupString next(const GroupOps& ops) override;
  std::unique_ptr<Sampler> clone_reseeded(std::uint64_t seed) const override;
  const ProductReplacementState& state() const { return pr_; }

 private:
  OpsPtr ops_;
  std::vector<GroupString> seeds_;
  PrParams params_;
  ProductReplacementState pr_;
};

/// Box over the subgroup generated by the seed strings: oracle operations are
/// inherited from the parent, sampling is the product replacement walk.
BlackBox bb_generated(const BlackBox& parent, std::span<const GroupString> seeds,
                      PrParams params = {}, std::uint64_t seed = 0);
BlackBox bb_generated(const OpsPtr& ops, std::optional<Bigint> exponent,
                      std::span<const GroupString> seeds, PrParams params = {},
                      std::uint64_t seed = 0);

/// Exponent of GL_n(q), q = p^k: p^ceil(log_p n) * lcm(q^i - 1, 1 <= i <= n).
/// A valid global exponent for any subgroup of GL_n(q).
Bigint global_exponent_gl(unsigned n, const Bigint& p, unsigned k);

}  // namespace bbg
