#include "bbg/bbfield.hpp"

#include <memory>
#include <stdexcept>

namespace bbg {

BlackBoxField::BlackBoxField(std::size_t string_length, Bigint characteristic, RandOp rand,
                             BinaryOp add, BinaryOp mul, UnaryOp inv, EqOp eq, GroupString zero,
                             GroupString one)
    : l_(string_length),
      p_(std::move(characteristic)),
      rand_(std::move(rand)),
      add_(std::move(add)),
      mul_(std::move(mul)),
      inv_(std::move(inv)),
      eq_(std::move(eq)),
      zero_(std::move(zero)),
      one_(std::move(one)) {}

BlackBoxField bbf_wrap(FieldPtr F, std::uint64_t seed) {
  const std::size_t l = F->element_byte_width();
  auto encode = [F](const FieldElement& e) {
    std::vector<std::uint8_t> out(F->element_byte_width());
    F->encode(e, out.data());
    return GroupString(std::move(out));
  };
  auto decode = [F, l](const GroupString& s) {
    if (s.size() != l) throw std::invalid_argument("field string length mismatch");
    return F->decode(s.data());
  };
  auto rng = std::make_shared<Rng>(seed);
  auto rand = [F, encode, rng]() {
    std::vector<Bigint> c(F->n());
    for (unsigned i = 0; i < F->n(); ++i) c[i] = rng->below_big(F->p());
    return encode(FieldElement(std::move(c)));
  };
  auto add = [F, encode, decode](const GroupString& a, const GroupString& b) {
    return encode(F->add(decode(a), decode(b)));
  };
  auto mul = [F, encode, decode](const GroupString& a, const GroupString& b) {
    return encode(F->mul(decode(a), decode(b)));
  };
  auto inv = [F, encode, decode](const GroupString& a) { return encode(F->inv(decode(a))); };
  auto eq = [](const GroupString& a, const GroupString& b) { return a == b; };
  return BlackBoxField(l, F->p(), std::move(rand), std::move(add), std::move(mul),
                       std::move(inv), std::move(eq), encode(F->zero()), encode(F->one()));
}

GroupString bbf_prime_embed(const BlackBoxField& K, const Bigint& m) {
  Bigint e = mod_reduce(m, K.characteristic());
  GroupString acc = K.zero();
  GroupString base = K.one();
  while (e > 0) {
    if ((e & 1) != 0) acc = K.add(acc, base);
    base = K.add(base, base);
    e >>= 1;
  }
  return acc;
}

Bigint bbf_small_dlog(const BlackBoxField& K, const GroupString& x) {
  GroupString acc = K.zero();
  for (Bigint m = 0; m < K.characteristic(); ++m) {
    if (K.eq(acc, x)) return m;
    acc = K.add(acc, K.one());
  }
  throw std::domain_error("bbf_small_dlog: string outside the prime subfield");
}

FieldMorphism extend_prime_morphism(const BlackBoxField& K, const BlackBoxField& L,
                                    const FieldMorphism& prime_morphism) {
  if (K.string_length() == L.string_length() && K.characteristic() == L.characteristic() &&
      L.eq(prime_morphism.map(K.one()), L.one())) {
    return FieldMorphism{[](const GroupString& s) { return s; }};
  }
  throw std::logic_error(
      "extend_prime_morphism: only the identity backend is available; the "
      "general extension procedure is not implemented");
}

}  // namespace bbg
