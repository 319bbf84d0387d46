#pragma once

// Text format:
//   p <prime>
//   n <nvars>
//   <coeff> <e1> ... <en>      one term per line, lex-increasing
// Lines whose first non-blank character is '#' are comments.

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "sparse_poly.hpp"

namespace spgcd {

class parse_error : public invalid_input {
 public:
  parse_error(std::size_t line, const std::string& what)
      : invalid_input("line " + std::to_string(line) + ": " + what) {}
};

struct PolyFile {
  PrimeField field{2};
  SparsePoly<PrimeField> poly;
};

namespace detail {

inline bool parse_u64(const std::string& tok, u64& out) {
  if (tok.empty() || tok.size() > 20) return false;
  u128 v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
    if (v > std::numeric_limits<u64>::max()) return false;
  }
  out = static_cast<u64>(v);
  return true;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

inline PolyFile parse_polyfile(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  int header = 0;
  u64 p = 0;
  int n = 0;
  std::vector<std::vector<std::string>> term_lines;
  std::vector<std::size_t> term_lineno;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (header == 0) {
      if (toks.size() != 2 || toks[0] != "p" || !detail::parse_u64(toks[1], p))
        throw parse_error(lineno, "expected 'p <prime>'");
      ++header;
    } else if (header == 1) {
      u64 nv = 0;
      if (toks.size() != 2 || toks[0] != "n" || !detail::parse_u64(toks[1], nv) || nv > 1'000'000)
        throw parse_error(lineno, "expected 'n <nvars>'");
      n = static_cast<int>(nv);
      ++header;
    } else {
      term_lines.push_back(std::move(toks));
      term_lineno.push_back(lineno);
    }
  }
  if (header < 2) throw parse_error(lineno, "missing 'p' or 'n' header");

  PolyFile out{PrimeField(p), SparsePoly<PrimeField>(n)};
  out.poly.reserve(term_lines.size());
  Monomial e(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < term_lines.size(); ++t) {
    const auto& toks = term_lines[t];
    if (toks.size() != static_cast<std::size_t>(n) + 1)
      throw parse_error(term_lineno[t], "expected a coefficient and " + std::to_string(n) + " exponents");
    u64 c = 0;
    if (!detail::parse_u64(toks[0], c) || c == 0 || c >= p)
      throw parse_error(term_lineno[t], "coefficient must lie in [1, p)");
    for (int k = 0; k < n; ++k) {
      u64 x = 0;
      if (!detail::parse_u64(toks[static_cast<std::size_t>(k) + 1], x) ||
          x > static_cast<u64>(std::numeric_limits<exponent_t>::max()))
        throw parse_error(term_lineno[t], "exponent must be a nonnegative 32-bit integer");
      e[static_cast<std::size_t>(k)] = static_cast<exponent_t>(x);
    }
    out.poly.push(out.field.from_u64(c), e);
  }
  const std::size_t count = out.poly.size();
  out.poly = sparse::canonicalize(out.field, out.poly);
  if (out.poly.size() != count) throw parse_error(lineno, "duplicate exponent vector");
  return out;
}

inline PolyFile parse_polyfile(const std::string& text) {
  std::istringstream is(text);
  return parse_polyfile(is);
}

inline void render_polyfile(std::ostream& os, const PrimeField& f, const SparsePoly<PrimeField>& poly) {
  os << "p " << f.characteristic() << '\n' << "n " << poly.nvars << '\n';
  for (std::size_t i = 0; i < poly.size(); ++i) {
    os << f.to_u64(poly.coeffs[i]);
    for (auto e : poly.exp(i)) os << ' ' << e;
    os << '\n';
  }
}

inline std::string render_polyfile(const PrimeField& f, const SparsePoly<PrimeField>& poly) {
  std::ostringstream os;
  render_polyfile(os, f, poly);
  return os.str();
}

}  // namespace spgcd
