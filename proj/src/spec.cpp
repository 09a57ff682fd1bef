#include "rcw/spec.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace rcw {

namespace {

// ---- exact polynomial arithmetic over Q ----

void trim(ExactPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ExactPoly add(const ExactPoly& a, const ExactPoly& b, int sign = 1) {
  ExactPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  trim(r);
  return r;
}

ExactPoly mul(const ExactPoly& a, const ExactPoly& b) {
  if (a.empty() || b.empty()) return {};
  ExactPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

ExactPoly scale(ExactPoly a, const Rational& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly rem = a;
  if (rem.size() < b.size()) return {{}, rem};
  ExactPoly quot(rem.size() - b.size() + 1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational f = rem[k + b.size() - 1] / b.back();
    quot[k] = f;
    for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= f * b[j];
  }
  trim(quot);
  trim(rem);
  return {quot, rem};
}

ExactPoly monic(const ExactPoly& p) { return scale(p, 1 / p.back()); }

ExactPoly gcd(ExactPoly a, ExactPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(a);
}

ExactPoly exact_div(const ExactPoly& a, const ExactPoly& b) { return divmod(a, b).first; }

struct RatFunc {
  ExactPoly num, den{Rational(1)};
};

// ---- lexer ----

enum class Tok { Number, Ident, String, Op, LParen, RParen, Equals, Sep, Fence, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Rational value;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    tok.column = column();
    if (pos_ >= src_.size()) return tok;
    const char ch = src_[pos_];
    if (ch == '\n') {
      advance();
      if (depth_ > 0) return next();
      tok.kind = Tok::Sep;
      return tok;
    }
    if (ch == ';') {
      advance();
      tok.kind = Tok::Sep;
      return tok;
    }
    if (src_.substr(pos_, 3) == "```") {
      tok.kind = Tok::Fence;
      pos_ += 3;
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number(tok);
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) ++end;
      tok.kind = Tok::Ident;
      tok.text = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return tok;
    }
    if (ch == '"') {
      std::size_t end = pos_ + 1;
      while (end < src_.size() && src_[end] != '"' && src_[end] != '\n') ++end;
      if (end >= src_.size() || src_[end] != '"') throw ParseError(tok.line, tok.column, "unterminated string");
      tok.kind = Tok::String;
      tok.text = std::string(src_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return tok;
    }
    advance();
    switch (ch) {
      case '(': ++depth_; tok.kind = Tok::LParen; return tok;
      case ')': depth_ = std::max(0, depth_ - 1); tok.kind = Tok::RParen; return tok;
      case '=': tok.kind = Tok::Equals; return tok;
      case '+': case '-': case '*': case '/': case '^': case ':': case ',':
        tok.kind = Tok::Op;
        tok.text = std::string(1, ch);
        return tok;
      default: break;
    }
    throw ParseError(tok.line, tok.column, std::string("unexpected character '") + ch + "'");
  }

  /// Rest of the current line, consumed (used after a fence marker).
  std::string rest_of_line() {
    const std::size_t end = src_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
    std::string out(src_.substr(pos_, stop - pos_));
    pos_ = stop;
    return out;
  }

  bool at_line_start() const {
    std::size_t p = pos_;
    while (p > 0 && (src_[p - 1] == ' ' || src_[p - 1] == '\t')) --p;
    return p == 0 || src_[p - 1] == '\n';
  }

  int line() const { return line_; }
  int column() const { return int(pos_ - line_start_) + 1; }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char ch = src_[pos_];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++pos_;
      } else if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token number(Token tok) {
    using boost::multiprecision::cpp_int;
    std::size_t p = pos_;
    cpp_int mant = 0;
    int frac_digits = 0;
    bool any = false;
    while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
      mant = mant * 10 + (src_[p++] - '0');
      any = true;
    }
    if (p < src_.size() && src_[p] == '.') {
      ++p;
      while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        mant = mant * 10 + (src_[p++] - '0');
        ++frac_digits;
        any = true;
      }
    }
    if (!any) throw ParseError(tok.line, tok.column, "malformed number");
    long exp10 = -frac_digits;
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      int sign = 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) sign = src_[q++] == '-' ? -1 : 1;
      long e = 0;
      bool digits = false;
      while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
        e = e * 10 + (src_[q++] - '0');
        digits = true;
        if (e > 4000) throw ParseError(tok.line, tok.column, "exponent out of range");
      }
      if (!digits) throw ParseError(tok.line, tok.column, "malformed exponent in number");
      exp10 += sign * e;
      p = q;
    }
    const cpp_int ten = boost::multiprecision::pow(cpp_int(10), int(std::abs(exp10)));
    tok.value = exp10 >= 0 ? Rational(mant * ten) : Rational(mant, ten);
    tok.kind = Tok::Number;
    tok.text = std::string(src_.substr(pos_, p - pos_));
    pos_ = p;
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_start_ = 0;
  int line_ = 1;
  int depth_ = 0;
};

// ---- parser ----

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { bump(); }

  CurveSpec run() {
    std::optional<RatFunc> x, y;
    Token x_tok, y_tok;
    std::optional<std::array<ExactPoly, 3>> block;
    CurveSpec spec;
    for (;;) {
      while (cur_.kind == Tok::Sep) bump();
      if (cur_.kind == Tok::End) break;
      if (cur_.kind == Tok::Fence) {
        if (block) error(cur_, "duplicate coefficient block");
        block = coeff_block();
        continue;
      }
      if (cur_.kind != Tok::Ident) error(cur_, "expected a statement such as 'x = ...'");
      const Token key = cur_;
      bump();
      expect(Tok::Equals, "expected '=' after '" + key.text + "'");
      if (key.text == "x" || key.text == "y") {
        auto& slot = key.text == "x" ? x : y;
        if (slot) error(key, "duplicate definition of " + key.text);
        slot = expr();
        (key.text == "x" ? x_tok : y_tok) = key;
      } else if (key.text == "name") {
        if (cur_.kind != Tok::String) error(cur_, "expected a quoted name");
        spec.name = cur_.text;
        bump();
      } else if (key.text == "tol_residual" || key.text == "tol_cluster" || key.text == "tol_real_snap") {
        const Rational v = signed_value();
        if (v <= 0) error(key, "tolerance must be positive");
        const double d = static_cast<double>(v);
        if (key.text == "tol_residual") spec.tol_residual = d;
        else if (key.text == "tol_cluster") spec.tol_cluster = d;
        else spec.tol_real_snap = d;
      } else {
        error(key, "unknown statement '" + key.text + "'");
      }
      if (cur_.kind != Tok::Sep && cur_.kind != Tok::End) error(cur_, "unexpected token after statement");
    }

    if (block && (x || y)) error(cur_, "inconsistent spec: both expressions and a coefficient block");
    if (block) {
      auto& [p1, p2, q] = *block;
      if (q.empty()) error(cur_, "inconsistent spec: zero denominator");
      const ExactPoly g = gcd(gcd(p1, p2), q);
      spec.q = exact_div(q, g);
      spec.p1 = exact_div(p1, g);
      spec.p2 = exact_div(p2, g);
      const Rational lead = spec.q.back();
      spec.q = scale(spec.q, 1 / lead);
      spec.p1 = scale(spec.p1, 1 / lead);
      spec.p2 = scale(spec.p2, 1 / lead);
      return spec;
    }
    if (!x) error(cur_, "inconsistent spec: missing x");
    if (!y) error(cur_, "inconsistent spec: missing y");
    reduce(*x);
    reduce(*y);
    const ExactPoly g = gcd(x->den, y->den);
    spec.q = monic(mul(exact_div(x->den, g), y->den));
    spec.p1 = mul(x->num, exact_div(spec.q, x->den));
    spec.p2 = mul(y->num, exact_div(spec.q, y->den));
    return spec;
  }

 private:
  [[noreturn]] static void error(const Token& at, const std::string& what) {
    throw ParseError(at.line, at.column, what);
  }

  void bump() { cur_ = lex_.next(); }

  void expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) error(cur_, what);
    bump();
  }

  bool is_op(char c) const { return cur_.kind == Tok::Op && cur_.text[0] == c; }

  static void reduce(RatFunc& f) {
    if (f.num.empty()) {
      f.den = {Rational(1)};
      return;
    }
    const ExactPoly g = gcd(f.num, f.den);
    f.num = exact_div(f.num, g);
    f.den = exact_div(f.den, g);
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (is_op('+') || is_op('-')) {
      const int sign = is_op('+') ? 1 : -1;
      bump();
      const RatFunc rhs = term();
      acc = {add(mul(acc.num, rhs.den), mul(rhs.num, acc.den), sign), mul(acc.den, rhs.den)};
    }
    return acc;
  }

  RatFunc term() {
    RatFunc acc = factor();
    while (is_op('*') || is_op('/')) {
      const Token op = cur_;
      bump();
      const RatFunc rhs = factor();
      if (op.text == "*") {
        acc = {mul(acc.num, rhs.num), mul(acc.den, rhs.den)};
      } else {
        if (rhs.num.empty()) error(op, "division by zero");
        acc = {mul(acc.num, rhs.den), mul(acc.den, rhs.num)};
      }
      reduce(acc);
    }
    return acc;
  }

  RatFunc factor() {
    const Token start = cur_;
    RatFunc base = primary();
    if (!is_op('^')) return base;
    bump();
    int sign = 1;
    if (is_op('-')) {
      sign = -1;
      bump();
    }
    if (cur_.kind == Tok::Ident && cur_.text == "t") error(cur_, "non-polynomial construct: t in an exponent");
    if (cur_.kind != Tok::Number) error(cur_, "expected an integer exponent after '^'");
    const Rational e = cur_.value;
    if (denominator(e) != 1 || e > 64) error(cur_, "exponent must be an integer between -64 and 64");
    const int k = static_cast<int>(numerator(e));
    bump();
    if (is_op('^')) error(cur_, "chained exponents are not supported; use parentheses");
    RatFunc out{{Rational(1)}, {Rational(1)}};
    for (int i = 0; i < k; ++i) out = {mul(out.num, base.num), mul(out.den, base.den)};
    if (sign < 0) {
      if (out.num.empty()) error(start, "division by zero");
      std::swap(out.num, out.den);
    }
    reduce(out);
    return out;
  }

  RatFunc primary() {
    if (cur_.kind == Tok::Number) {
      RatFunc f{{cur_.value}, {Rational(1)}};
      trim(f.num);
      bump();
      return f;
    }
    if (cur_.kind == Tok::Ident) {
      if (cur_.text != "t") error(cur_, "unknown symbol '" + cur_.text + "' (the variable is t)");
      bump();
      return {{Rational(0), Rational(1)}, {Rational(1)}};
    }
    if (cur_.kind == Tok::LParen) {
      bump();
      RatFunc inner = expr();
      expect(Tok::RParen, "expected ')'");
      return inner;
    }
    if (is_op('-') || is_op('+')) {
      const bool neg = is_op('-');
      bump();
      RatFunc f = factor();
      if (neg) f.num = scale(f.num, -1);
      return f;
    }
    if (cur_.kind == Tok::Sep || cur_.kind == Tok::End) error(cur_, "unexpected end of expression");
    error(cur_, "unexpected '" + (cur_.text.empty() ? std::string("token") : cur_.text) + "'");
  }

  Rational signed_value() {
    bool neg = false;
    if (is_op('-')) {
      neg = true;
      bump();
    }
    if (cur_.kind != Tok::Number) error(cur_, "expected a number");
    Rational v = cur_.value;
    bump();
    if (is_op('/')) {
      bump();
      if (cur_.kind != Tok::Number || denominator(cur_.value) != 1 || cur_.value == 0)
        error(cur_, "expected a nonzero integer denominator");
      v /= cur_.value;
      bump();
    }
    return neg ? -v : v;
  }

  std::array<ExactPoly, 3> coeff_block() {
    const Token fence = cur_;
    std::string tag = lex_.rest_of_line();
    while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.pop_back();
    if (tag != "coeffs") error(fence, "only ```coeffs blocks are supported");
    bump();
    std::array<ExactPoly, 3> out;
    std::array<bool, 3> seen{false, false, false};
    for (;;) {
      while (cur_.kind == Tok::Sep) bump();
      if (cur_.kind == Tok::Fence) {
        bump();
        break;
      }
      if (cur_.kind == Tok::End) error(fence, "unterminated coefficient block");
      if (cur_.kind != Tok::Ident || (cur_.text != "p1" && cur_.text != "p2" && cur_.text != "q"))
        error(cur_, "expected p1, p2 or q");
      const int slot = cur_.text == "p1" ? 0 : (cur_.text == "p2" ? 1 : 2);
      if (seen[slot]) error(cur_, "duplicate row " + cur_.text);
      seen[slot] = true;
      bump();
      if (!is_op(':')) error(cur_, "expected ':'");
      bump();
      while (cur_.kind != Tok::Sep && cur_.kind != Tok::End && cur_.kind != Tok::Fence) {
        out[slot].push_back(signed_value());
        if (is_op(',')) bump();
      }
      trim(out[slot]);
    }
    if (!seen[0] || !seen[1] || !seen[2]) error(fence, "coefficient block needs rows p1, p2 and q");
    return out;
  }

  Lexer lex_;
  Token cur_;
};

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::string format_poly(const ExactPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    const bool neg = p[k] < 0;
    const Rational mag = neg ? Rational(-p[k]) : p[k];
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (k == 0) out += format_rational(mag);
    else if (mag == 1) out += mono;
    else out += format_rational(mag) + "*" + mono;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : Error(ErrorKind::Parse,
            "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Tolerances CurveSpec::tolerances() const {
  Tolerances t;
  if (tol_residual) t.residual = *tol_residual;
  if (tol_cluster) t.cluster = *tol_cluster;
  if (tol_real_snap) t.real_snap = *tol_real_snap;
  return t;
}

CurveSpec parse_curve_spec(std::string_view text) { return Parser(text).run(); }

std::string print_curve_spec(const CurveSpec& spec) {
  std::string out;
  if (!spec.name.empty()) out += "name = \"" + spec.name + "\"\n";
  if (spec.tol_residual) out += "tol_residual = " + format_double(*spec.tol_residual) + "\n";
  if (spec.tol_cluster) out += "tol_cluster = " + format_double(*spec.tol_cluster) + "\n";
  if (spec.tol_real_snap) out += "tol_real_snap = " + format_double(*spec.tol_real_snap) + "\n";
  out += "x = (" + format_poly(spec.p1) + ") / (" + format_poly(spec.q) + ")\n";
  out += "y = (" + format_poly(spec.p2) + ") / (" + format_poly(spec.q) + ")\n";
  return out;
}

CurveSpec spec_from_curve(const RationalPlaneCurve& c, std::string name) {
  auto exact = [](const RealPoly& p) {
    ExactPoly out;
    for (int k = 0; k <= p.degree(); ++k) out.emplace_back(p[k]);
    trim(out);
    return out;
  };
  CurveSpec s;
  s.name = std::move(name);
  s.p1 = exact(c.p1());
  s.p2 = exact(c.p2());
  s.q = exact(c.q());
  return s;
}

std::vector<double> to_double(const ExactPoly& p) {
  std::vector<double> out;
  for (const auto& c : p) out.push_back(static_cast<double>(c));
  return out;
}

RationalPlaneCurve to_curve(const CurveSpec& spec) {
  return make_curve(RealPoly(to_double(spec.p1)), RealPoly(to_double(spec.p2)), RealPoly(to_double(spec.q)),
                    spec.tolerances());
}

}  // namespace rcw
