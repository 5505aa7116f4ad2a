#include "jacred/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "jacred/error.hpp"

namespace jacred {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t line, std::size_t column_offset)
      : src_(src), line_(line), offset_(column_offset) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
      const std::size_t col = offset_ + i + 1;
      if (i == src_.size()) {
        out.push_back({Tok::End, "", col});
        return out;
      }
      const char c = src_[i];
      if (is_digit(c)) {
        std::size_t j = i;
        while (j < src_.size() && is_digit(src_[j])) ++j;
        out.push_back({Tok::Number, std::string(src_.substr(i, j - i)), col});
        i = j;
      } else if (is_ident_start(c)) {
        std::size_t j = i;
        while (j < src_.size() && is_ident_char(src_[j])) ++j;
        out.push_back({Tok::Ident, std::string(src_.substr(i, j - i)), col});
        i = j;
      } else {
        Tok kind;
        switch (c) {
          case '+': kind = Tok::Plus; break;
          case '-': kind = Tok::Minus; break;
          case '*': kind = Tok::Star; break;
          case '^': kind = Tok::Caret; break;
          case '/': kind = Tok::Slash; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          default: throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
        }
        out.push_back({kind, std::string(1, c), col});
        ++i;
      }
    }
  }

 private:
  std::string_view src_;
  std::size_t line_;
  std::size_t offset_;
};

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' INT)?
// atom   := INT ('/' INT)? | IDENT | '(' expr ')'
class Parser {
 public:
  Parser(std::vector<Token> tokens, std::span<const std::string> vars, std::size_t line)
      : toks_(std::move(tokens)), line_(line), n_(vars.size()) {
    for (std::size_t k = 0; k < vars.size(); ++k) index_.emplace(vars[k], k);
  }

  Poly parse_all() {
    if (peek().kind == Tok::End) fail("empty expression", peek());
    Poly p = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what, const Token& at) const { throw ParseError(what, line_, at.column); }

  Poly expr() {
    Poly acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      Poly rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    while (peek().kind == Tok::Star) {
      next();
      acc = acc * unary();
    }
    return acc;
  }

  Poly unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (peek().kind != Tok::Caret) return base;
    next();
    const Token& e = peek();
    if (e.kind == Tok::Minus) fail("negative exponent", e);
    if (e.kind != Tok::Number) fail("exponent must be a nonnegative integer literal", e);
    next();
    if (e.text.size() > 6) fail("exponent too large", e);
    if (peek().kind == Tok::Caret) fail("chained exponents need parentheses", peek());
    return pow(base, static_cast<unsigned>(std::stoul(e.text)));
  }

  Poly atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        std::string lit = t.text;
        if (peek().kind == Tok::Slash) {
          next();
          const Token& d = peek();
          if (d.kind != Tok::Number) fail("'/' is only allowed inside a rational literal a/b", d);
          next();
          if (std::all_of(d.text.begin(), d.text.end(), [](char c) { return c == '0'; })) {
            fail("zero denominator", d);
          }
          lit += "/" + d.text;
        }
        return Poly::constant(n_, parse_rational(lit));
      }
      case Tok::Ident: {
        next();
        auto it = index_.find(t.text);
        if (it == index_.end()) fail("undeclared variable '" + t.text + "'", t);
        return Poly::variable(it->second, n_);
      }
      case Tok::LParen: {
        next();
        Poly inner = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'", peek());
        next();
        return inner;
      }
      case Tok::End: fail("unexpected end of expression", t);
      default: fail("unexpected '" + t.text + "'", t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t n_;
  std::unordered_map<std::string, std::size_t> index_;
};

Poly parse_expr_at(std::string_view expr, std::span<const std::string> vars, std::size_t line, std::size_t offset) {
  return Parser(Lexer(expr, line, offset).run(), vars, line).parse_all();
}

bool valid_identifier(std::string_view s) {
  return !s.empty() && is_ident_start(s[0]) && std::all_of(s.begin(), s.end(), is_ident_char);
}

// Splits at runs of spaces/tabs, reporting 1-based columns.
std::vector<std::pair<std::string, std::size_t>> words(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.emplace_back(std::string(line.substr(i, j - i)), i + 1);
    i = j;
  }
  return out;
}

}  // namespace

std::vector<Poly> MapDocument::polys() const {
  std::vector<Poly> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.second);
  return out;
}

std::string MapDocument::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

Poly parse_poly(std::string_view expr, std::span<const std::string> vars) { return parse_expr_at(expr, vars, 1, 0); }

MapDocument parse_map(std::string_view text) {
  MapDocument doc;
  bool have_vars = false;
  std::unordered_set<std::string> names;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    const auto w = words(line);
    if (w.empty() || w[0].first[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::string& kw = w[0].first;
    if (kw == "vars") {
      if (have_vars) throw ParseError("duplicate 'vars' line", line_no, w[0].second);
      have_vars = true;
      if (w.size() < 2) throw ParseError("'vars' needs at least one name", line_no, w[0].second);
      std::unordered_set<std::string> seen;
      for (std::size_t k = 1; k < w.size(); ++k) {
        if (!valid_identifier(w[k].first)) throw ParseError("invalid variable name '" + w[k].first + "'", line_no, w[k].second);
        if (!seen.insert(w[k].first).second) throw ParseError("duplicate variable '" + w[k].first + "'", line_no, w[k].second);
        doc.vars.push_back(w[k].first);
      }
    } else if (kw == "meta") {
      if (w.size() < 2) throw ParseError("'meta' needs a key", line_no, w[0].second);
      std::string value;
      if (w.size() > 2) value = std::string(line.substr(w[2].second - 1));
      while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
      doc.metadata.emplace_back(w[1].first, value);
    } else if (kw == "poly") {
      if (!have_vars) throw ParseError("'poly' before 'vars'", line_no, w[0].second);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected '=' in poly line", line_no, line.size() + 1);
      const auto head = words(line.substr(0, eq));
      if (head.size() != 2) throw ParseError("expected 'poly <name> = <expr>'", line_no, w[0].second);
      const std::string& name = head[1].first;
      if (!valid_identifier(name)) throw ParseError("invalid component name '" + name + "'", line_no, head[1].second);
      if (!names.insert(name).second) throw ParseError("duplicate component '" + name + "'", line_no, head[1].second);
      doc.components.emplace_back(name, parse_expr_at(line.substr(eq + 1), doc.vars, line_no, eq + 1));
    } else {
      throw ParseError("unknown directive '" + kw + "'", line_no, w[0].second);
    }
    if (end == text.size()) break;
  }
  if (!have_vars) throw ParseError("missing 'vars' line", line_no == 0 ? 1 : line_no, 1);
  return doc;
}

std::string print_poly(const Poly& p, std::span<const std::string> vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool need_star = false;
    if (m.is_unit() || mag != 1) {
      out += mag.get_str();
      need_star = true;
    }
    for (const auto& [v, e] : m.factors()) {
      if (need_star) out += "*";
      out += vars[v];
      if (e > 1) out += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return out;
}

std::string print_map(const MapDocument& doc) {
  std::ostringstream os;
  os << "vars";
  for (const auto& v : doc.vars) os << " " << v;
  os << "\n";
  for (const auto& [k, v] : doc.metadata) {
    os << "meta " << k;
    if (!v.empty()) os << " " << v;
    os << "\n";
  }
  for (const auto& [name, p] : doc.components) os << "poly " << name << " = " << print_poly(p, doc.vars) << "\n";
  return os.str();
}

std::vector<std::string> default_var_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back("x" + std::to_string(k));
  return out;
}

std::vector<std::string> extend_var_names(std::vector<std::string> names, std::size_t n, std::string_view stem) {
  std::unordered_set<std::string> used(names.begin(), names.end());
  std::size_t counter = 1;
  while (names.size() < n) {
    std::string candidate = std::string(stem) + std::to_string(counter++);
    if (used.insert(candidate).second) names.push_back(std::move(candidate));
  }
  return names;
}

MapDocument make_document(std::vector<std::string> vars, std::span<const Poly> polys) {
  MapDocument doc;
  doc.vars = std::move(vars);
  for (std::size_t k = 0; k < polys.size(); ++k) doc.components.emplace_back("f" + std::to_string(k + 1), polys[k]);
  return doc;
}

}  // namespace jacred
