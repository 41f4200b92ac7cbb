#include "isoflect/expr.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "isoflect/types.hpp"

namespace isoflect {

DomainError::DomainError(const std::string& msg, Complex where)
    : Error([&] {
        char buf[96];
        std::snprintf(buf, sizeof buf, " at w = (%.17g, %.17g)", where.real(), where.imag());
        return msg + buf;
      }()),
      where_(where) {}

struct Expr::Node {
  Kind kind = Kind::Constant;
  Complex value{};
  std::int64_t num = 1, den = 1;
  std::vector<Expr> children;
  bool analytic = true;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_nonanalytic(Expr::Kind k) {
  using K = Expr::Kind;
  return k == K::Conj || k == K::Re || k == K::Im || k == K::Abs || k == K::Arg;
}

Complex int_power(Complex base, std::int64_t n, Complex w) {
  if (n < 0) {
    if (base == Complex{}) throw DomainError("pole of negative power", w);
    return Complex{1.0} / int_power(base, -n, w);
  }
  Complex result{1.0};
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// Nearest rational p/q with q <= 10000 within 1e-12, via continued fractions.
bool to_rational(double x, std::int64_t& num, std::int64_t& den) {
  if (!std::isfinite(x)) return false;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 40; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e12) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > 10000) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) < 1e-12) {
      num = h1;
      den = k1;
      return true;
    }
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return false;
}

}  // namespace

Expr::Expr() : Expr(constant(0.0)) {}
Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

std::size_t hash_node(Expr::Kind kind, Complex value, std::int64_t num, std::int64_t den,
                      const std::vector<Expr>& children) {
  std::size_t h = std::hash<int>{}(static_cast<int>(kind));
  if (kind == Expr::Kind::Constant) {
    h = mix(h, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(value.real())));
    h = mix(h, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(value.imag())));
  }
  if (kind == Expr::Kind::Pow) {
    h = mix(h, static_cast<std::size_t>(num));
    h = mix(h, static_cast<std::size_t>(den));
  }
  for (const auto& c : children) h = mix(h, c.hash());
  return h;
}

}  // namespace

Expr Expr::constant(Complex value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  n->hash = hash_node(n->kind, value, 1, 1, {});
  return Expr(std::move(n));
}

Expr Expr::variable() {
  static const Expr var = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->hash = hash_node(n->kind, {}, 1, 1, {});
    return Expr(std::move(n));
  }();
  return var;
}

struct ExprAccess {
  static Expr build(Expr::Kind kind, std::vector<Expr> children, std::int64_t num, std::int64_t den) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    n->num = num;
    n->den = den;
    n->analytic = !is_nonanalytic(kind);
    for (const auto& c : children) n->analytic = n->analytic && c.is_analytic();
    n->hash = hash_node(kind, {}, num, den, children);
    n->children = std::move(children);
    return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
  }
};


namespace {

// Builds a node; subtrees whose children are all constants are folded when
// the folded value is finite.
Expr make(Expr::Kind kind, std::vector<Expr> children, std::int64_t num, std::int64_t den) {
  bool all_const = !children.empty();
  for (const auto& c : children) all_const = all_const && c.is_constant();
  Expr e = ExprAccess::build(kind, std::move(children), num, den);
  if (all_const) {
    try {
      const Complex v = e.eval(0.0);
      if (std::isfinite(v.real()) && std::isfinite(v.imag())) return Expr::constant(v);
    } catch (const DomainError&) {
    }
  }
  return e;
}

}  // namespace

Expr Expr::add(Expr a, Expr b) { return make(Kind::Add, {std::move(a), std::move(b)}, 1, 1); }
Expr Expr::sub(Expr a, Expr b) { return make(Kind::Sub, {std::move(a), std::move(b)}, 1, 1); }
Expr Expr::mul(Expr a, Expr b) { return make(Kind::Mul, {std::move(a), std::move(b)}, 1, 1); }
Expr Expr::div(Expr a, Expr b) { return make(Kind::Div, {std::move(a), std::move(b)}, 1, 1); }
Expr Expr::neg(Expr a) { return make(Kind::Neg, {std::move(a)}, 1, 1); }

Expr Expr::pow(Expr base, std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("power exponent with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return make(Kind::Pow, {std::move(base)}, num, den);
}

Expr Expr::unary(Kind kind, Expr arg) {
  switch (kind) {
    case Kind::Neg:
    case Kind::Exp:
    case Kind::Log:
    case Kind::Conj:
    case Kind::Re:
    case Kind::Im:
    case Kind::Abs:
    case Kind::Arg:
      return make(kind, {std::move(arg)}, 1, 1);
    default:
      throw Error("Expr::unary called with a non-unary kind");
  }
}

Expr::Kind Expr::kind() const { return node_->kind; }
Complex Expr::value() const { return node_->value; }
std::int64_t Expr::exp_num() const { return node_->num; }
std::int64_t Expr::exp_den() const { return node_->den; }
std::size_t Expr::arity() const { return node_->children.size(); }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }
bool Expr::is_analytic() const { return node_->analytic; }
std::size_t Expr::hash() const { return node_->hash; }

Complex Expr::eval(Complex w) const {
  const Node& n = *node_;
  auto arg = [&](std::size_t i) { return n.children[i].eval(w); };
  Complex r;
  switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::Variable: return w;
    case Kind::Add: r = arg(0) + arg(1); break;
    case Kind::Sub: r = arg(0) - arg(1); break;
    case Kind::Mul: r = arg(0) * arg(1); break;
    case Kind::Div: {
      const Complex d = arg(1);
      if (d == Complex{}) throw DomainError("division by zero", w);
      r = arg(0) / d;
      break;
    }
    case Kind::Neg: r = -arg(0); break;
    case Kind::Pow: {
      const Complex b = arg(0);
      if (n.den == 1) {
        r = int_power(b, n.num, w);
      } else if (b == Complex{}) {
        if (n.num <= 0) throw DomainError("branch point of fractional power", w);
        r = 0.0;
      } else {
        r = std::exp(static_cast<double>(n.num) / static_cast<double>(n.den) * std::log(b));
      }
      break;
    }
    case Kind::Exp: r = std::exp(arg(0)); break;
    case Kind::Log: {
      const Complex a = arg(0);
      if (a == Complex{}) throw DomainError("logarithm of zero", w);
      r = std::log(a);
      break;
    }
    case Kind::Conj: r = std::conj(arg(0)); break;
    case Kind::Re: r = arg(0).real(); break;
    case Kind::Im: r = arg(0).imag(); break;
    case Kind::Abs: r = std::abs(arg(0)); break;
    case Kind::Arg: r = std::arg(arg(0)); break;
  }
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw DomainError("non-finite value", w);
  return r;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.children.size() != y.children.size()) return false;
  if (x.kind == Expr::Kind::Constant)
    return std::bit_cast<std::uint64_t>(x.value.real()) == std::bit_cast<std::uint64_t>(y.value.real()) &&
           std::bit_cast<std::uint64_t>(x.value.imag()) == std::bit_cast<std::uint64_t>(y.value.imag());
  if (x.kind == Expr::Kind::Pow && (x.num != y.num || x.den != y.den)) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr run() {
    Expr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = Expr::add(lhs, term());
      else if (accept('-')) lhs = Expr::sub(lhs, term());
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = Expr::mul(lhs, unary());
      else if (accept('/')) lhs = Expr::div(lhs, unary());
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    Expr exponent = unary();
    if (!exponent.is_constant() || exponent.value().imag() != 0.0) {
      pos_ = at;
      fail("exponent must be a real rational constant");
    }
    std::int64_t num = 0, den = 1;
    if (!to_rational(exponent.value().real(), num, den)) {
      pos_ = at;
      fail("exponent is not a rational number with denominator <= 10000");
    }
    return Expr::pow(base, num, den);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    const char* begin = s_.data() + pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "w") return Expr::variable();
    if (name == "i") return Expr::constant(Complex{0.0, 1.0});
    if (name == "pi") return Expr::constant(kPi);

    using K = Expr::Kind;
    K kind;
    bool is_sqrt = false;
    if (name == "exp") kind = K::Exp;
    else if (name == "log") kind = K::Log;
    else if (name == "sqrt") { kind = K::Pow; is_sqrt = true; }
    else if (name == "conj") kind = K::Conj;
    else if (name == "re") kind = K::Re;
    else if (name == "im") kind = K::Im;
    else if (name == "abs") kind = K::Abs;
    else if (name == "arg") kind = K::Arg;
    else {
      pos_ = start;
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
    expect('(');
    Expr a = expression();
    expect(')');
    return is_sqrt ? Expr::pow(a, 1, 2) : Expr::unary(kind, a);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant: {
      const Complex v = e.value();
      if (v.imag() == 0.0 && !std::signbit(v.imag())) {
        const std::string r = format_real(v.real());
        return std::signbit(v.real()) ? "(" + r + ")" : r;
      }
      return "(" + format_real(v.real()) + "+" + format_real(v.imag()) + "*i)";
    }
    case K::Variable: return "w";
    case K::Add: return "(" + print(e.child(0)) + " + " + print(e.child(1)) + ")";
    case K::Sub: return "(" + print(e.child(0)) + " - " + print(e.child(1)) + ")";
    case K::Mul: return "(" + print(e.child(0)) + " * " + print(e.child(1)) + ")";
    case K::Div: return "(" + print(e.child(0)) + " / " + print(e.child(1)) + ")";
    case K::Neg: return "(-" + print(e.child(0)) + ")";
    case K::Pow: {
      const std::string exponent =
          e.exp_den() == 1 ? "(" + std::to_string(e.exp_num()) + ")"
                           : "(" + std::to_string(e.exp_num()) + "/" + std::to_string(e.exp_den()) + ")";
      return "(" + print(e.child(0)) + "^" + exponent + ")";
    }
    case K::Exp: return "exp(" + print(e.child(0)) + ")";
    case K::Log: return "log(" + print(e.child(0)) + ")";
    case K::Conj: return "conj(" + print(e.child(0)) + ")";
    case K::Re: return "re(" + print(e.child(0)) + ")";
    case K::Im: return "im(" + print(e.child(0)) + ")";
    case K::Abs: return "abs(" + print(e.child(0)) + ")";
    case K::Arg: return "arg(" + print(e.child(0)) + ")";
  }
  return {};
}

// ------------------------------------------------------- differentiation

namespace {

bool is_value(const Expr& e, double v) { return e.is_constant() && e.value() == Complex{v}; }

Expr s_add(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return Expr::add(a, b);
}

Expr s_sub(const Expr& a, const Expr& b) {
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return Expr::neg(b);
  return Expr::sub(a, b);
}

Expr s_mul(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0) || is_value(b, 0.0)) return Expr::constant(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  return Expr::mul(a, b);
}

}  // namespace

Expr differentiate(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant: return Expr::constant(0.0);
    case K::Variable: return Expr::constant(1.0);
    case K::Add: return s_add(differentiate(e.child(0)), differentiate(e.child(1)));
    case K::Sub: return s_sub(differentiate(e.child(0)), differentiate(e.child(1)));
    case K::Mul: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      return s_add(s_mul(differentiate(a), b), s_mul(a, differentiate(b)));
    }
    case K::Div: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      const Expr da = differentiate(a);
      const Expr db = differentiate(b);
      if (is_value(db, 0.0)) return Expr::div(da, b);
      return Expr::div(s_sub(s_mul(da, b), s_mul(a, db)), Expr::pow(b, 2));
    }
    case K::Neg: {
      const Expr d = differentiate(e.child(0));
      return is_value(d, 0.0) ? d : Expr::neg(d);
    }
    case K::Pow: {
      const Expr& b = e.child(0);
      const std::int64_t p = e.exp_num();
      const std::int64_t q = e.exp_den();
      if (p == 0) return Expr::constant(0.0);
      const Expr coeff = Expr::constant(static_cast<double>(p) / static_cast<double>(q));
      const Expr lowered = (p - q == 0) ? Expr::constant(1.0) : Expr::pow(b, p - q, q);
      return s_mul(s_mul(coeff, lowered), differentiate(b));
    }
    case K::Exp: return s_mul(e, differentiate(e.child(0)));
    case K::Log: return Expr::div(differentiate(e.child(0)), e.child(0));
    default:
      throw Error("cannot differentiate non-analytic expression node in " + print(e));
  }
}

}  // namespace isoflect
