#include "crgeo/spec_format.hpp"

#include <cctype>
#include <sstream>

namespace crgeo {

namespace {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind = End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
public:
  Lexer(const std::string& s, int line0 = 1) : s_(s), line_(line0) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = s_[pos_];
    auto single = [&](Token::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '+': single(Token::Plus); return;
      case '-': single(Token::Minus); return;
      case '*': single(Token::Star); return;
      case '/': single(Token::Slash); return;
      case '^': single(Token::Caret); return;
      case '(': single(Token::LParen); return;
      case ')': single(Token::RParen); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
        ++col_;
      }
      tok_.kind = Token::Number;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      tok_.kind = Token::Ident;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class ExprParser {
public:
  ExprParser(const std::string& text, int nz, int line0 = 1) : lex_(text, line0), nz_(nz) {}

  Poly parse() {
    Poly p = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End) throw ParseError("trailing input '" + t.text + "'", t.line, t.col);
    return p;
  }

private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Plus) {
        lex_.take();
        acc += term();
      } else if (t.kind == Token::Minus) {
        lex_.take();
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Star) {
        lex_.take();
        acc = acc * factor();
      } else if (t.kind == Token::Slash) {
        Token slash = lex_.take();
        Poly d = factor();
        if (d.degree() != 0)
          throw ParseError("division is only defined by nonzero constants", slash.line,
                           slash.col);
        GaussianRational c = d.constant_term();
        if (c.is_zero()) throw ParseError("division by zero", slash.line, slash.col);
        acc = acc * c.inverse();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = unary();
    const Token& t = lex_.peek();
    if (t.kind == Token::Caret) {
      Token caret = lex_.take();
      Token e = lex_.take();
      if (e.kind != Token::Number)
        throw ParseError("exponent must be a nonnegative integer", caret.line, caret.col);
      return base.pow(std::stoi(e.text));
    }
    return base;
  }

  Poly unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Minus) {
      lex_.take();
      return -unary();
    }
    return atom();
  }

  Poly atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Number:
        return Poly::constant(nz_, GaussianRational(mpq_class(t.text)));
      case Token::LParen: {
        Poly p = expr();
        Token r = lex_.take();
        if (r.kind != Token::RParen) throw ParseError("expected ')'", r.line, r.col);
        return p;
      }
      case Token::Ident: {
        if (t.text == "i") return Poly::constant(nz_, GaussianRational::i());
        if (t.text == "w") return Poly::var(nz_, VarId::w());
        if (t.text == "conj" || t.text == "Re" || t.text == "Im") {
          Token l = lex_.take();
          if (l.kind != Token::LParen)
            throw ParseError("expected '(' after " + t.text, l.line, l.col);
          Poly inner = expr();
          Token r = lex_.take();
          if (r.kind != Token::RParen) throw ParseError("expected ')'", r.line, r.col);
          if (t.text == "conj") return inner.conj();
          GaussianRational half = GaussianRational::rational(1, 2);
          if (t.text == "Re") return (inner + inner.conj()) * half;
          // Im(x) = (x - conj x) * (-i/2)
          return (inner - inner.conj()) * (half * (-GaussianRational::i()));
        }
        if (t.text.size() >= 2 && t.text[0] == 'z') {
          bool digits = true;
          for (size_t k = 1; k < t.text.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t.text[k]))) digits = false;
          if (digits) {
            int idx = std::stoi(t.text.substr(1));
            if (idx < 1 || idx > nz_)
              throw ParseError("variable " + t.text + " out of range (n = " +
                                   std::to_string(nz_ + 1) + ")",
                               t.line, t.col);
            return Poly::var(nz_, VarId::z(idx - 1));
          }
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
      }
      case Token::End:
        throw ParseError("unexpected end of expression", t.line, t.col);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  Lexer lex_;
  int nz_;
};

} // namespace

Poly parse_expression(const std::string& text, int nz) {
  return ExprParser(text, nz).parse();
}

GaussianRational parse_constant(const std::string& text) {
  Poly p = ExprParser(text, 0).parse();
  if (p.degree() > 0) throw ParseError("expected a constant", 1, 1);
  return p.constant_term();
}

HypersurfaceSpec parse_spec(const std::string& text) {
  HypersurfaceSpec spec;
  bool have_n = false, have_rho = false;
  std::string rho_text;
  int rho_line = 1;
  std::vector<std::pair<std::string, int>> point_lines;
  std::vector<std::pair<std::string, int>> weight_lines;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (key == "name") {
      size_t b = rest.find_first_not_of(" \t");
      spec.name = b == std::string::npos ? "" : rest.substr(b);
    } else if (key == "n") {
      spec.n = std::stoi(rest);
      have_n = true;
      if (spec.n < 2) throw ParseError("n must be at least 2", lineno, 1);
    } else if (key == "rho") {
      rho_text = rest;
      rho_line = lineno;
      have_rho = true;
    } else if (key == "point") {
      point_lines.emplace_back(rest, lineno);
    } else if (key == "weights") {
      weight_lines.emplace_back(rest, lineno);
    } else if (key == "order") {
      spec.order = std::stoi(rest);
      if (spec.order < 4 || spec.order > 16)
        throw ParseError("order must lie between 4 and 16", lineno, 1);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!have_n) throw ParseError("missing 'n' declaration", lineno, 1);
  if (!have_rho) throw ParseError("missing 'rho' declaration", lineno, 1);

  spec.rho = ExprParser(rho_text, spec.n - 1, rho_line).parse();
  if (!spec.rho.is_real())
    throw ParseError("defining expression is not real-valued", rho_line, 1);

  for (auto& [rest, ln] : point_lines) {
    std::istringstream ps(rest);
    std::vector<std::string> coords;
    std::string c;
    while (ps >> c) coords.push_back(c);
    if (static_cast<int>(coords.size()) != spec.n)
      throw ParseError("point needs " + std::to_string(spec.n) + " coordinates (z then w)", ln, 1);
    AmbientPoint p;
    for (int j = 0; j + 1 < spec.n; ++j) p.z.push_back(parse_constant(coords[j]));
    p.w = parse_constant(coords.back());
    spec.points.push_back(std::move(p));
  }
  if (spec.points.empty()) spec.points.push_back(AmbientPoint::origin(spec.n));

  for (auto& [rest, ln] : weight_lines) {
    std::istringstream ws(rest);
    std::vector<WeightVector::Entry> entries;
    std::string c;
    while (ws >> c) {
      if (c == "inf") {
        entries.emplace_back(std::nullopt);
        continue;
      }
      GaussianRational v = parse_constant(c);
      if (!v.is_real() || v.re() < 1) throw ParseError("weights must be rationals >= 1 or inf", ln, 1);
      entries.emplace_back(v.re());
    }
    if (static_cast<int>(entries.size()) != spec.n)
      throw ParseError("weight tuple needs n entries", ln, 1);
    spec.weights.emplace_back(std::move(entries));
  }

  // exact membership of the declared points
  for (const auto& p : spec.points) {
    std::vector<GaussianRational> slots(VarId::slot_count(spec.n - 1));
    slots[VarId::w().slot(spec.n - 1)] = p.w;
    slots[VarId::wb().slot(spec.n - 1)] = p.w.conj();
    for (int j = 0; j + 1 < spec.n; ++j) {
      slots[VarId::z(j).slot(spec.n - 1)] = p.z[j];
      slots[VarId::zb(j).slot(spec.n - 1)] = p.z[j].conj();
    }
    if (!spec.rho.eval(slots).is_zero())
      throw ParseError("declared point " + p.str() + " does not lie on the hypersurface", 1, 1);
  }
  return spec;
}

std::string print_spec(const HypersurfaceSpec& spec) {
  std::ostringstream os;
  if (!spec.name.empty()) os << "name " << spec.name << "\n";
  os << "n " << spec.n << "\n";
  os << "rho " << spec.rho.str() << "\n";
  for (const auto& p : spec.points) {
    os << "point";
    for (const auto& z : p.z) os << " " << z.str();
    os << " " << p.w.str() << "\n";
  }
  for (const auto& w : spec.weights) {
    os << "weights";
    for (int k = 0; k < w.size(); ++k)
      os << " " << (w.entry(k) ? w.entry(k)->get_str() : std::string("inf"));
    os << "\n";
  }
  os << "order " << spec.order << "\n";
  return os.str();
}

} // namespace crgeo
