#include "doctest.h"

#include "bbg/io.hpp"
#include "bbg/standard.hpp"

#include <sstream>

using namespace bbg;

TEST_CASE("field description round trip: polynomial form") {
  std::istringstream in("3\n2\npoly 1 0 1\n");
  FieldPtr F = read_field_description(in);
  CHECK(F->p() == 3);
  CHECK(F->n() == 2);
  std::ostringstream out;
  write_field_description(out, *F);
  std::istringstream in2(out.str());
  FieldPtr F2 = read_field_description(in2);
  CHECK(F2->modulus() == F->modulus());
}

TEST_CASE("field description: table form and malformed input") {
  std::istringstream in("7\n1\ntable 1\n");
  FieldPtr F = read_field_description(in);
  CHECK(F->order() == 7);
  std::istringstream bad("7\n1\nneither 1\n");
  CHECK_THROWS_AS(read_field_description(bad), std::invalid_argument);
  std::istringstream trunc("7\n2\npoly 1 0\n");
  CHECK_THROWS_AS(read_field_description(trunc), std::invalid_argument);
}

TEST_CASE("generator file round trip") {
  auto F = ExplicitField::from_polynomial(3, 2, {Bigint(1), Bigint(0), Bigint(1)});
  const auto gens = sl_generators(*F, 2);
  std::ostringstream out;
  write_generator_file(out, *F, 2, true, gens);
  std::istringstream in(out.str());
  GeneratorFile gf = read_generator_file(in);
  CHECK(gf.dim == 2);
  CHECK(gf.quotient);
  CHECK(gf.field->order() == 9);
  REQUIRE(gf.generators.size() == gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) CHECK(gf.generators[i] == gens[i]);
}

TEST_CASE("generator file rejects a trailing partial matrix") {
  std::istringstream in("7\n1\npoly 0 1\ndim 2\nquotient 0\n1 0 0\n");
  CHECK_THROWS_AS(read_generator_file(in), std::invalid_argument);
}

TEST_CASE("declared order formats: factored and plain") {
  const DeclaredOrder plain = parse_declared_order("5040");
  CHECK(plain.value == 5040);
  CHECK(!plain.factored);
  const DeclaredOrder factored = parse_declared_order("2^4*3^2*5*7");
  CHECK(factored.value == 5040);
  REQUIRE(factored.factored);
  CHECK(factored.factored->factors().size() == 4);
  // the writer emits the middle-dot form; both separators parse
  CHECK(format_declared_order(factored) == "2^4·3^2·5·7");
  const DeclaredOrder dotted = parse_declared_order("2^4·3^2·5·7");
  CHECK(dotted.value == 5040);
  CHECK_THROWS_AS(parse_declared_order("4^2*5"), std::invalid_argument);  // 4 not prime
}

TEST_CASE("datum file round trip") {
  auto F = ExplicitField::from_polynomial(5, 2, find_irreducible(5, 2));
  auto handle = bb_matrix(F, 3, sl_generators(*F, 3), false, {}, 1);
  const CurtisTitsDatum datum = standard_sl_datum(*handle.ops, 3);
  std::ostringstream out;
  write_datum_file(out, datum);
  std::istringstream in(out.str());
  const CurtisTitsDatum back = read_datum_file(in);
  CHECK(back.rank() == datum.rank());
  CHECK(back.q == datum.q);
  for (unsigned i = 0; i < datum.rank(); ++i) {
    CHECK(back.nodes[i].k_gens == datum.nodes[i].k_gens);
    CHECK(back.nodes[i].t_split == datum.nodes[i].t_split);
    CHECK(back.nodes[i].t_twisted == datum.nodes[i].t_twisted);
    CHECK(back.nodes[i].weyl == datum.nodes[i].weyl);
    CHECK(back.nodes[i].split_order.value == datum.nodes[i].split_order.value);
    CHECK(back.nodes[i].twisted_order.value == datum.nodes[i].twisted_order.value);
  }
  check_datum(handle.box, back);
}

TEST_CASE("hex helpers") {
  const std::vector<std::uint8_t> bytes = {0x00, 0x1f, 0xab, 0xff};
  CHECK(to_hex(bytes) == "001fabff");
  CHECK(from_hex("001fabff") == bytes);
  CHECK(from_hex("001FABFF") == bytes);
  CHECK_THROWS_AS(from_hex("0g"), std::invalid_argument);
  CHECK_THROWS_AS(from_hex("012"), std::invalid_argument);
}
