#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "iolb/polyset/intset.hpp"

namespace iolb::poly {

struct Token {
  enum Kind { ident, number, symbol, end } kind = end;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text);
  const Token& peek(size_t ahead = 0) const;
  Token next();
  bool accept(std::string_view sym);
  void expect(std::string_view sym);
  std::string expect_ident();
  bool at_end() const { return peek().kind == Token::end; }
  [[noreturn]] void error(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Affine expression over names.
struct LinearExpr {
  std::map<std::string, Rational> coeffs;
  Rational constant;
};

// A set or relation in the textual notation: [N,T] -> { S[t,i] : ... ; ... }.
struct ParsedMap {
  bool is_relation = false;
  IntSet set;
  AffRelation relation;
};

// global, when given, fixes the parameter space; listed parameters must belong to it.
ParsedMap parse_map(Lexer& lex, const ParamSpace* global = nullptr);
IntSet parse_set(std::string_view text, const ParamSpace* global = nullptr);
AffRelation parse_relation(std::string_view text, const ParamSpace* global = nullptr);

}  // namespace iolb::poly
