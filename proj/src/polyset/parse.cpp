#include "iolb/polyset/parse.hpp"

#include <algorithm>
#include <cctype>

#include "iolb/core/error.hpp"

namespace iolb::poly {

Lexer::Lexer(std::string_view text) {
  static const char* two[] = {"->", "<=", ">=", "=="};
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      t.kind = Token::ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::number;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else {
      t.kind = Token::symbol;
      bool matched = false;
      for (const char* s : two)
        if (text.substr(i, 2) == s) {
          t.text = s;
          advance(2);
          matched = true;
          break;
        }
      if (!matched) {
        if (std::string_view("[]{}(),;:+-*<>=").find(c) == std::string_view::npos) {
          throw Error(ErrorKind::input, std::to_string(line) + ":" + std::to_string(col) +
                                            ": unexpected character '" + std::string(1, c) + "'");
        }
        t.text = std::string(1, c);
        advance(1);
      }
    }
    toks_.push_back(std::move(t));
  }
  Token e;
  e.line = line;
  e.col = col;
  toks_.push_back(e);
}

const Token& Lexer::peek(size_t ahead) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

Token Lexer::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool Lexer::accept(std::string_view sym) {
  const Token& t = peek();
  if ((t.kind == Token::symbol || t.kind == Token::ident) && t.text == sym) {
    next();
    return true;
  }
  return false;
}

void Lexer::expect(std::string_view sym) {
  if (!accept(sym)) error("expected '" + std::string(sym) + "'");
}

std::string Lexer::expect_ident() {
  if (peek().kind != Token::ident) error("expected identifier");
  return next().text;
}

void Lexer::error(const std::string& msg) const {
  const Token& t = peek();
  std::string near = t.kind == Token::end ? "end of input" : "'" + t.text + "'";
  throw Error(ErrorKind::input, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg + " near " + near);
}

namespace {

LinearExpr scale(LinearExpr e, const Rational& f) {
  for (auto& [_, c] : e.coeffs) c *= f;
  e.constant *= f;
  return e;
}

LinearExpr add(LinearExpr a, const LinearExpr& b, int sign) {
  for (const auto& [n, c] : b.coeffs) a.coeffs[n] += sign * c;
  a.constant += sign * b.constant;
  return a;
}

bool is_constant(const LinearExpr& e) {
  return std::all_of(e.coeffs.begin(), e.coeffs.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

LinearExpr parse_expr(Lexer& lex);

LinearExpr parse_factor(Lexer& lex) {
  if (lex.accept("-")) return scale(parse_factor(lex), -1);
  if (lex.accept("(")) {
    LinearExpr e = parse_expr(lex);
    lex.expect(")");
    return e;
  }
  const Token& t = lex.peek();
  LinearExpr e;
  if (t.kind == Token::number) {
    e.constant = parse_rational(lex.next().text);
    // "2i" style implicit product.
    if (lex.peek().kind == Token::ident && lex.peek().text != "and") {
      LinearExpr v;
      v.coeffs[lex.next().text] = 1;
      return scale(v, e.constant);
    }
    return e;
  }
  if (t.kind == Token::ident && t.text != "and") {
    e.coeffs[lex.next().text] = 1;
    return e;
  }
  lex.error("expected affine expression");
}

LinearExpr parse_term(Lexer& lex) {
  LinearExpr e = parse_factor(lex);
  while (lex.accept("*")) {
    LinearExpr f = parse_factor(lex);
    if (is_constant(e))
      e = scale(f, e.constant);
    else if (is_constant(f))
      e = scale(e, f.constant);
    else
      lex.error("non-affine product");
  }
  return e;
}

LinearExpr parse_expr(Lexer& lex) {
  LinearExpr e = parse_term(lex);
  for (;;) {
    if (lex.accept("+"))
      e = add(e, parse_term(lex), 1);
    else if (lex.accept("-"))
      e = add(e, parse_term(lex), -1);
    else
      return e;
  }
}

struct Tuple {
  std::string tag;
  std::vector<LinearExpr> entries;
};

Tuple parse_tuple(Lexer& lex) {
  Tuple t;
  t.tag = lex.expect_ident();
  lex.expect("[");
  if (!lex.accept("]")) {
    do t.entries.push_back(parse_expr(lex));
    while (lex.accept(","));
    lex.expect("]");
  }
  return t;
}

bool is_relop(const Token& t) {
  return t.kind == Token::symbol &&
         (t.text == "<=" || t.text == "<" || t.text == ">=" || t.text == ">" || t.text == "=" || t.text == "==");
}

struct Atom {
  LinearExpr expr;  // expr >= 0 or == 0
  bool equality;
};

std::vector<Atom> parse_conditions(Lexer& lex) {
  std::vector<Atom> atoms;
  do {
    LinearExpr left = parse_expr(lex);
    if (!is_relop(lex.peek())) lex.error("expected comparison");
    while (is_relop(lex.peek())) {
      std::string op = lex.next().text;
      LinearExpr right = parse_expr(lex);
      if (op == "<=")
        atoms.push_back({add(right, left, -1), false});
      else if (op == "<") {
        LinearExpr e = add(right, left, -1);
        e.constant -= 1;
        atoms.push_back({e, false});
      } else if (op == ">=")
        atoms.push_back({add(left, right, -1), false});
      else if (op == ">") {
        LinearExpr e = add(left, right, -1);
        e.constant -= 1;
        atoms.push_back({e, false});
      } else
        atoms.push_back({add(left, right, -1), true});
      left = right;
    }
  } while (lex.accept("and"));
  return atoms;
}

struct Disjunct {
  Tuple in, out;
  bool relation = false;
  std::vector<Atom> atoms;
};

}  // namespace

ParsedMap parse_map(Lexer& lex, const ParamSpace* global) {
  ParamSpace listed;
  if (lex.accept("[")) {
    if (!lex.accept("]")) {
      do listed.push_back(lex.expect_ident());
      while (lex.accept(","));
      lex.expect("]");
    }
    lex.expect("->");
  }
  ParamSpace params = global ? *global : listed;
  for (const auto& p : listed)
    if (std::find(params.begin(), params.end(), p) == params.end()) lex.error("undeclared parameter " + p);
  lex.expect("{");
  std::vector<Disjunct> ds;
  if (lex.peek().text != "}") {
    do {
      Disjunct d;
      d.in = parse_tuple(lex);
      if (lex.accept("->")) {
        d.relation = true;
        d.out = parse_tuple(lex);
      }
      if (lex.accept(":")) d.atoms = parse_conditions(lex);
      ds.push_back(std::move(d));
    } while (lex.accept(";"));
  }
  lex.expect("}");
  if (ds.empty()) lex.error("empty set notation needs at least one tuple");
  const Disjunct& first = ds.front();
  for (const auto& d : ds)
    if (d.relation != first.relation || d.in.tag != first.in.tag || d.in.entries.size() != first.in.entries.size() ||
        d.out.tag != first.out.tag || d.out.entries.size() != first.out.entries.size())
      lex.error("disjuncts disagree on tuple shape");

  const int in_dims = static_cast<int>(first.in.entries.size());
  const int out_dims = first.relation ? static_cast<int>(first.out.entries.size()) : 0;
  const int dims = in_dims + out_dims;
  const int np = static_cast<int>(params.size());
  std::vector<std::string> names(dims);
  std::vector<Polyhedron> pieces;
  for (size_t di = 0; di < ds.size(); ++di) {
    const Disjunct& d = ds[di];
    std::vector<const LinearExpr*> entries;
    for (const auto& e : d.in.entries) entries.push_back(&e);
    for (const auto& e : d.out.entries) entries.push_back(&e);
    std::map<std::string, int> bound;
    std::vector<bool> binds(dims, false);
    for (int k = 0; k < dims; ++k) {
      const LinearExpr& e = *entries[k];
      if (e.coeffs.size() == 1 && sgn(e.constant) == 0 && e.coeffs.begin()->second == 1) {
        const std::string& n = e.coeffs.begin()->first;
        if (std::find(params.begin(), params.end(), n) == params.end() && !bound.count(n)) {
          bound[n] = k;
          binds[k] = true;
          if (di == 0) names[k] = n;
        }
      }
    }
    for (int k = 0; k < dims; ++k)
      if (di == 0 && names[k].empty()) names[k] = (k < in_dims ? "i" : "o") + std::to_string(k < in_dims ? k : k - in_dims);
    auto lower = [&](const LinearExpr& e) {
      RatVec v(dims + np + 1, 0);
      for (const auto& [n, c] : e.coeffs) {
        if (sgn(c) == 0) continue;
        auto it = bound.find(n);
        if (it != bound.end()) {
          v[it->second] += c;
          continue;
        }
        auto pit = std::find(params.begin(), params.end(), n);
        if (pit == params.end()) lex.error("unknown identifier " + n);
        v[dims + (pit - params.begin())] += c;
      }
      v[dims + np] = e.constant;
      return v;
    };
    Polyhedron p(dims, np);
    for (int k = 0; k < dims; ++k) {
      if (binds[k]) continue;
      RatVec v = lower(*entries[k]);
      for (auto& x : v) x = -x;
      v[k] += 1;
      p.add_eq(v);
    }
    for (const auto& a : d.atoms) p.add({lower(a.expr), a.equality});
    pieces.push_back(std::move(p));
  }
  ParsedMap out;
  out.is_relation = first.relation;
  if (first.relation) {
    AffRelation& r = out.relation;
    r.in_tag = first.in.tag;
    r.out_tag = first.out.tag;
    r.in_dims = in_dims;
    r.out_dims = out_dims;
    r.params = params;
    r.in_names.assign(names.begin(), names.begin() + in_dims);
    r.out_names.assign(names.begin() + in_dims, names.end());
    r.pieces = std::move(pieces);
  } else {
    IntSet& s = out.set;
    s.tag = first.in.tag;
    s.dims = in_dims;
    s.params = params;
    s.names = names;
    s.pieces = std::move(pieces);
  }
  return out;
}

IntSet parse_set(std::string_view text, const ParamSpace* global) {
  Lexer lex(text);
  ParsedMap m = parse_map(lex, global);
  if (m.is_relation) lex.error("expected a set, found a relation");
  if (!lex.at_end()) lex.error("trailing input");
  IntSet s = m.set;
  s.pieces.clear();
  for (auto& p : m.set.pieces) s.add_piece(p);
  return s;
}

AffRelation parse_relation(std::string_view text, const ParamSpace* global) {
  Lexer lex(text);
  ParsedMap m = parse_map(lex, global);
  if (!m.is_relation) lex.error("expected a relation, found a set");
  if (!lex.at_end()) lex.error("trailing input");
  AffRelation r = m.relation;
  r.pieces.clear();
  for (auto& p : m.relation.pieces) r.add_piece(p);
  return r;
}

}  // namespace iolb::poly
