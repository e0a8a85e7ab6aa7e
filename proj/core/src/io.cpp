#include "bbg/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bbg {

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& s) {
  if (s.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw std::invalid_argument("from_hex: bad digit");
  };
  std::vector<std::uint8_t> out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
  return out;
}

namespace {

Bigint parse_bigint(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("expected integer");
  for (std::size_t i = (tok[0] == '-' ? 1 : 0); i < tok.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(tok[i])))
      throw std::invalid_argument("bad integer: " + tok);
  return Bigint(tok);
}

std::string next_token(std::istream& in) {
  std::string t;
  if (!(in >> t)) throw std::invalid_argument("unexpected end of input");
  return t;
}

}  // namespace

FieldPtr read_field_description(std::istream& in) {
  const Bigint p = parse_bigint(next_token(in));
  const long n_long = std::stol(next_token(in));
  if (n_long < 1) throw std::invalid_argument("field description: n < 1");
  const unsigned n = static_cast<unsigned>(n_long);
  const std::string kind = next_token(in);
  if (kind == "poly") {
    std::vector<Bigint> coeffs(n + 1);
    for (auto& c : coeffs) c = parse_bigint(next_token(in));
    return ExplicitField::from_polynomial(p, n, std::move(coeffs));
  }
  if (kind == "table") {
    std::vector<Bigint> c(static_cast<std::size_t>(n) * n * n);
    for (auto& e : c) e = parse_bigint(next_token(in));
    return ExplicitField::from_table(p, n, c);
  }
  throw std::invalid_argument("field description: expected 'poly' or 'table'");
}

FieldPtr read_field_description_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field description: " + path);
  return read_field_description(in);
}

void write_field_description(std::ostream& out, const ExplicitField& F) {
  out << F.p() << "\n" << F.n() << "\npoly";
  for (const auto& c : F.modulus()) out << ' ' << c;
  out << "\n";
}

namespace {

FieldElement parse_entry(const ExplicitField& F, const std::string& tok) {
  std::vector<Bigint> coeffs;
  std::string cur;
  for (char ch : tok + ":") {
    if (ch == ':') {
      coeffs.push_back(parse_bigint(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (coeffs.size() != F.n())
    throw std::invalid_argument("matrix entry has wrong coefficient count");
  return F.element(std::move(coeffs));
}

}  // namespace

GeneratorFile read_generator_file(std::istream& in) {
  GeneratorFile out;
  out.field = read_field_description(in);
  std::string kw = next_token(in);
  if (kw != "dim") throw std::invalid_argument("generator file: expected 'dim'");
  out.dim = static_cast<unsigned>(std::stoul(next_token(in)));
  kw = next_token(in);
  if (kw != "quotient") throw std::invalid_argument("generator file: expected 'quotient'");
  out.quotient = next_token(in) == "1";
  const std::size_t per_matrix = static_cast<std::size_t>(out.dim) * out.dim;
  std::string tok;
  std::vector<FieldElement> entries;
  while (in >> tok) {
    entries.push_back(parse_entry(*out.field, tok));
    if (entries.size() == per_matrix) {
      out.generators.emplace_back(out.dim, std::move(entries));
      entries.clear();
    }
  }
  if (!entries.empty())
    throw std::invalid_argument("generator file: trailing partial matrix");
  if (out.generators.empty())
    throw std::invalid_argument("generator file: no generator matrices");
  return out;
}

GeneratorFile read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generator file: " + path);
  return read_generator_file(in);
}

void write_generator_file(std::ostream& out, const ExplicitField& F, unsigned dim,
                          bool quotient, std::span<const Matrix> gens) {
  write_field_description(out, F);
  out << "dim " << dim << "\nquotient " << (quotient ? 1 : 0) << "\n";
  for (const auto& g : gens) {
    for (unsigned i = 0; i < dim; ++i) {
      for (unsigned j = 0; j < dim; ++j) {
        if (i || j) out << ' ';
        const auto& coeffs = g.at(i, j).coeffs();
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
          if (c) out << ':';
          out << coeffs[c];
        }
      }
    }
    out << "\n";
  }
}

std::string format_declared_order(const DeclaredOrder& o) {
  if (!o.factored) {
    std::ostringstream os;
    os << o.value;
    return os.str();
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [prime, mult] : o.factored->factors()) {
    if (!first) os << "·";
    first = false;
    os << prime;
    if (mult > 1) os << '^' << mult;
  }
  if (first) os << 1;
  return os.str();
}

DeclaredOrder parse_declared_order(const std::string& s) {
  // plain decimal, or factors joined by '·' or '*', each `prime[^mult]`
  const bool factored = s.find('*') != std::string::npos ||
                        s.find("·") != std::string::npos ||
                        s.find('^') != std::string::npos;
  if (!factored) return DeclaredOrder{parse_bigint(s), std::nullopt};
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '*') {
      parts.push_back(cur);
      cur.clear();
      ++i;
    } else if (static_cast<unsigned char>(s[i]) == 0xc2 && i + 1 < s.size() &&
               static_cast<unsigned char>(s[i + 1]) == 0xb7) {
      parts.push_back(cur);
      cur.clear();
      i += 2;
    } else {
      cur.push_back(s[i]);
      ++i;
    }
  }
  parts.push_back(cur);
  std::vector<std::pair<Bigint, unsigned>> factors;
  Bigint value = 1;
  for (const auto& part : parts) {
    const auto caret = part.find('^');
    const Bigint prime = parse_bigint(part.substr(0, caret));
    const unsigned mult =
        caret == std::string::npos ? 1u : static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
    factors.emplace_back(prime, mult);
    for (unsigned i = 0; i < mult; ++i) value *= prime;
  }
  return DeclaredOrder{value, FactoredInteger(value, std::move(factors))};
}

CurtisTitsDatum read_datum_file(std::istream& in) {
  std::string kw = next_token(in);
  if (kw != "rank") throw std::invalid_argument("datum file: expected 'rank'");
  const unsigned rank = static_cast<unsigned>(std::stoul(next_token(in)));
  kw = next_token(in);
  if (kw != "q") throw std::invalid_argument("datum file: expected 'q'");
  CurtisTitsDatum datum;
  datum.q = parse_bigint(next_token(in));
  for (unsigned node = 0; node < rank; ++node) {
    CurtisTitsNode nd;
    kw = next_token(in);
    if (kw != "K") throw std::invalid_argument("datum file: expected 'K'");
    std::string line;
    std::getline(in, line);
    std::istringstream ls(line);
    std::string hexs;
    while (ls >> hexs) nd.k_gens.push_back(GroupString(from_hex(hexs)));
    if (nd.k_gens.empty()) throw std::invalid_argument("datum file: node without generators");
    kw = next_token(in);
    if (kw != "Tsplit") throw std::invalid_argument("datum file: expected 'Tsplit'");
    nd.t_split = GroupString(from_hex(next_token(in)));
    if (next_token(in) != "order") throw std::invalid_argument("datum file: expected 'order'");
    nd.split_order = parse_declared_order(next_token(in));
    kw = next_token(in);
    if (kw != "Ttwist") throw std::invalid_argument("datum file: expected 'Ttwist'");
    nd.t_twisted = GroupString(from_hex(next_token(in)));
    if (next_token(in) != "order") throw std::invalid_argument("datum file: expected 'order'");
    nd.twisted_order = parse_declared_order(next_token(in));
    kw = next_token(in);
    if (kw != "W") throw std::invalid_argument("datum file: expected 'W'");
    nd.weyl = GroupString(from_hex(next_token(in)));
    datum.nodes.push_back(std::move(nd));
  }
  return datum;
}

CurtisTitsDatum read_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open datum file: " + path);
  return read_datum_file(in);
}

void write_datum_file(std::ostream& out, const CurtisTitsDatum& datum) {
  out << "rank " << datum.rank() << " q " << datum.q << "\n";
  for (const auto& nd : datum.nodes) {
    out << "K";
    for (const auto& g : nd.k_gens) out << ' ' << to_hex(g.bytes());
    out << "\n";
    out << "Tsplit " << to_hex(nd.t_split.bytes()) << " order "
        << format_declared_order(nd.split_order) << "\n";
    out << "Ttwist " << to_hex(nd.t_twisted.bytes()) << " order "
        << format_declared_order(nd.twisted_order) << "\n";
    out << "W " << to_hex(nd.weyl.bytes()) << "\n";
  }
}

}  // namespace bbg
