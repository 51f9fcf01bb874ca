#pragma once

// Reaction networks: the text format, stoichiometry, conservation laws and
// species relabelling.

#include "crn1d/errors.hpp"
#include "crn1d/matrix.hpp"
#include "crn1d/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crn1d {

/// One mass-action reaction: reactant -> product with rate constant `label`.
struct Reaction {
  std::vector<int> reactant;  // alpha_{.j}
  std::vector<int> product;   // beta_{.j}
  std::string label;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

class Network {
 public:
  Network() = default;

  /// Validates the invariants: unique names, non-negative coefficients of the
  /// right length, and reactant != product for every reaction.
  Network(std::vector<std::string> species, std::vector<Reaction> reactions)
      : species_(std::move(species)), reactions_(std::move(reactions)) {
    std::vector<std::string> sorted = species_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DimensionMismatch("duplicate species name");
    for (std::size_t j = 0; j < reactions_.size(); ++j) {
      auto& r = reactions_[j];
      if (r.reactant.size() != species_.size() || r.product.size() != species_.size())
        throw DimensionMismatch("reaction " + std::to_string(j + 1) + " has the wrong number of coefficients");
      for (std::size_t i = 0; i < species_.size(); ++i)
        if (r.reactant[i] < 0 || r.product[i] < 0)
          throw DimensionMismatch("reaction " + std::to_string(j + 1) + " has a negative coefficient");
      if (r.reactant == r.product)
        throw DimensionMismatch("reaction " + std::to_string(j + 1) + " has identical reactant and product");
      if (r.label.empty()) r.label = "k" + std::to_string(j + 1);
    }
  }

  std::size_t s() const noexcept { return species_.size(); }
  std::size_t m() const noexcept { return reactions_.size(); }
  const std::vector<std::string>& species() const noexcept { return species_; }
  const std::vector<Reaction>& reactions() const noexcept { return reactions_; }

  int alpha(std::size_t i, std::size_t j) const { return reactions_[j].reactant[i]; }
  int beta(std::size_t i, std::size_t j) const { return reactions_[j].product[i]; }
  /// Net change of species i in reaction j.
  int delta(std::size_t i, std::size_t j) const { return beta(i, j) - alpha(i, j); }

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
};

namespace detail {

class NetworkLexer {
 public:
  enum class Kind { Int, Name, Plus, Arrow, Sep, End };
  struct Token {
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t col;
  };

  explicit NetworkLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blanks();
    std::size_t l = line_, c = col_;
    if (pos_ >= text_.size()) return {Kind::End, "", l, c};
    char ch = text_[pos_];
    if (ch == '\n' || ch == ';') {
      advance();
      return {Kind::Sep, std::string(1, ch), l, c};
    }
    if (ch == '+') {
      advance();
      return {Kind::Plus, "+", l, c};
    }
    if (ch == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        advance();
        advance();
        return {Kind::Arrow, "->", l, c};
      }
      if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
        throw ParseError("negative coefficient", l, c);
      throw ParseError("unexpected '-'", l, c);
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_];
        advance();
      }
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/'))
        throw ParseError("non-integer coefficient", l, c);
      return {Kind::Int, digits, l, c};
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_];
        advance();
      }
      return {Kind::Name, name, l, c};
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

/// Name order with digit runs compared as numbers, so X2 < X10.
inline bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  auto digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && digit(a[i2])) ++i2;
      while (j2 < b.size() && digit(b[j2])) ++j2;
      std::string_view da(a.data() + i, i2 - i), db(b.data() + j, j2 - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      if (i2 - i != j2 - j) return i2 - i > j2 - j;  // more leading zeros first
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

}  // namespace detail

/// Parses the reaction text format. Species are numbered in natural name order
/// (X1, X2, ..., X10); rate constants are k1..km in reaction order. A lone `0`
/// denotes the empty complex.
inline Network parse_network(std::string_view text) {
  using Lexer = detail::NetworkLexer;
  using Kind = Lexer::Kind;
  Lexer lex(text);
  Lexer::Token tok = lex.next();

  std::vector<std::string> species;
  std::map<std::string, std::size_t> index;
  using Side = std::map<std::size_t, long>;
  std::vector<std::pair<Side, Side>> raw;

  auto parse_side = [&](const char* where) {
    Side side;
    if (tok.kind == Kind::Int && tok.text == "0") {
      Lexer::Token zero = tok;
      tok = lex.next();
      if (tok.kind == Kind::Name) throw ParseError("coefficient must be positive", zero.line, zero.col);
      return side;
    }
    while (true) {
      long coeff = 1;
      if (tok.kind == Kind::Int) {
        if (tok.text.size() > 9) throw ParseError("coefficient too large", tok.line, tok.col);
        coeff = std::stol(tok.text);
        if (coeff == 0) throw ParseError("coefficient must be positive", tok.line, tok.col);
        tok = lex.next();
      }
      if (tok.kind != Kind::Name)
        throw ParseError(std::string("expected species name in ") + where, tok.line, tok.col);
      auto [it, inserted] = index.emplace(tok.text, species.size());
      if (inserted) species.push_back(tok.text);
      side[it->second] += coeff;
      tok = lex.next();
      if (tok.kind != Kind::Plus) break;
      tok = lex.next();
    }
    return side;
  };

  while (tok.kind != Kind::End) {
    if (tok.kind == Kind::Sep) {
      tok = lex.next();
      continue;
    }
    Lexer::Token start = tok;
    Side lhs = parse_side("reactant");
    if (tok.kind != Kind::Arrow) throw ParseError("expected '->'", tok.line, tok.col);
    tok = lex.next();
    Side rhs = parse_side("product");
    if (tok.kind != Kind::Sep && tok.kind != Kind::End)
      throw ParseError("expected ';' or end of line", tok.line, tok.col);
    if (lhs == rhs) throw ParseError("reactant and product are identical", start.line, start.col);
    raw.emplace_back(std::move(lhs), std::move(rhs));
  }

  std::vector<std::string> sorted = species;
  std::sort(sorted.begin(), sorted.end(), detail::natural_less);
  std::vector<std::size_t> slot(species.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) slot[index[sorted[i]]] = i;

  std::vector<Reaction> reactions;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    Reaction r{std::vector<int>(species.size(), 0), std::vector<int>(species.size(), 0), "k" + std::to_string(j + 1)};
    for (auto [i, v] : raw[j].first) r.reactant[slot[i]] = static_cast<int>(v);
    for (auto [i, v] : raw[j].second) r.product[slot[i]] = static_cast<int>(v);
    reactions.push_back(std::move(r));
  }
  return Network(std::move(sorted), std::move(reactions));
}

/// Canonical text: one reaction per line, terms in species order.
inline std::string unparse(const Network& net) {
  auto side = [&](const std::vector<int>& coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (coeffs[i] != 1) out += std::to_string(coeffs[i]) + " ";
      out += net.species()[i];
    }
    return out.empty() ? std::string("0") : out;
  };
  std::string out;
  for (const auto& r : net.reactions()) out += side(r.reactant) + " -> " + side(r.product) + "\n";
  return out;
}

/// Stoichiometric matrix, conservation laws and (for rank one) the scale
/// factors lambda_j with column_j(N) = lambda_j * column_1(N).
struct StoichData {
  RationalMatrix N;
  RationalMatrix W;
  std::size_t rank = 0;
  std::vector<Rational> lambda;  // populated only when rank == 1
};

inline StoichData stoich_data(const Network& net) {
  StoichData sd;
  sd.N = RationalMatrix(net.s(), net.m());
  for (std::size_t i = 0; i < net.s(); ++i)
    for (std::size_t j = 0; j < net.m(); ++j) sd.N(i, j) = net.delta(i, j);
  sd.rank = rank(sd.N);
  sd.W = left_null_space(sd.N);
  if (sd.rank == 1) {
    // Reference entry: first nonzero of column 1 (reaction 1 is never trivial).
    std::size_t ref = 0;
    while (sd.N(ref, 0).sign() == 0) ++ref;
    for (std::size_t j = 0; j < net.m(); ++j) sd.lambda.push_back(sd.N(ref, j) / sd.N(ref, 0));
  }
  return sd;
}

inline void assert_one_dimensional(const StoichData& sd) {
  if (sd.rank != 1) throw NotOneDimensional(sd.rank);
}

/// Species relabelling: entry i of the new order is old species perm[i].
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

inline Permutation transposition(std::size_t n, std::size_t a, std::size_t b) {
  Permutation p = identity_permutation(n);
  std::swap(p[a], p[b]);
  return p;
}

/// (first then second) as a single relabelling of the original species.
inline Permutation compose(const Permutation& first, const Permutation& second) {
  Permutation out(second.size());
  for (std::size_t i = 0; i < second.size(); ++i) out[i] = first[second[i]];
  return out;
}

inline Network permute_species(const Network& net, const Permutation& perm) {
  if (perm.size() != net.s()) throw DimensionMismatch("permutation length differs from species count");
  std::vector<std::string> species(net.s());
  for (std::size_t i = 0; i < net.s(); ++i) species[i] = net.species()[perm[i]];
  std::vector<Reaction> reactions;
  for (const auto& r : net.reactions()) {
    Reaction nr{std::vector<int>(net.s()), std::vector<int>(net.s()), r.label};
    for (std::size_t i = 0; i < net.s(); ++i) {
      nr.reactant[i] = r.reactant[perm[i]];
      nr.product[i] = r.product[perm[i]];
    }
    reactions.push_back(std::move(nr));
  }
  return Network(std::move(species), std::move(reactions));
}

template <typename T>
std::vector<T> permute_vector(std::span<const T> v, const Permutation& perm) {
  std::vector<T> out;
  out.reserve(perm.size());
  for (std::size_t i : perm) out.push_back(v[i]);
  return out;
}

/// Undoes permute_vector: maps coordinates in the relabelled order back.
template <typename T>
std::vector<T> unpermute_vector(std::span<const T> v, const Permutation& perm) {
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = v[i];
  return out;
}

struct NormalizedNetwork {
  Network network;
  Permutation permutation;
};

/// Makes species 1 change in reaction 1 by swapping it with the smallest index
/// that does.
inline NormalizedNetwork normalize_first_species(const Network& net) {
  if (net.m() == 0 || net.s() == 0) throw DimensionMismatch("network has no reactions");
  std::size_t i = 0;
  while (i < net.s() && net.delta(i, 0) == 0) ++i;
  if (i == net.s()) throw DimensionMismatch("reaction 1 is trivial");
  Permutation p = transposition(net.s(), 0, i);
  return {i == 0 ? net : permute_species(net, p), p};
}

/// Total constants in the affine form used throughout:
/// c_{i-1} = (beta_i1 - alpha_i1) x_1 - (beta_11 - alpha_11) x_i, i = 2..s.
template <typename T>
std::vector<T> conservation_constants(const Network& net, std::span<const T> x) {
  if (x.size() != net.s()) throw DimensionMismatch("point has the wrong dimension");
  std::vector<T> c;
  for (std::size_t i = 1; i < net.s(); ++i) c.push_back(T(net.delta(i, 0)) * x[0] - T(net.delta(0, 0)) * x[i]);
  return c;
}

/// The point of the compatibility class with x_1 = 0.
inline std::vector<Rational> class_point(const Network& net, std::span<const Rational> c) {
  if (c.size() + 1 != net.s()) throw DimensionMismatch("expected " + std::to_string(net.s() - 1) + " total constants");
  if (net.delta(0, 0) == 0) throw DimensionMismatch("species 1 is unchanged by reaction 1");
  std::vector<Rational> x(net.s(), Rational(0));
  for (std::size_t i = 1; i < net.s(); ++i) x[i] = -c[i - 1] / net.delta(0, 0);
  return x;
}

}  // namespace crn1d
