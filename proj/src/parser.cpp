#include "folkit/parser.hpp"

#include <cctype>
#include <map>

#include "folkit/errors.hpp"

namespace folkit {

namespace {

enum class Tok { Num, Ident, Op, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s, std::size_t offset) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    char c = s[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    std::size_t start = k;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      out.push_back({Tok::Num, s.substr(start, k - start), start + offset});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) ++k;
      out.push_back({Tok::Ident, s.substr(start, k - start), start + offset});
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Tok::Op, std::string(1, c), start + offset});
      ++k;
    } else {
      fail("SyntaxError", "at " + std::to_string(start + offset) + ": unexpected character '" +
                              std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, "", s.size() + offset});
  return out;
}

enum class Mode { Poly, Field, Form };

class Parser {
 public:
  Parser(const std::string& src, std::size_t offset, int n, TowerPtr tower, Mode mode,
         std::map<std::string, int> vars)
      : toks_(lex(src, offset)), n_(n), tower_(std::move(tower)), mode_(mode), vars_(std::move(vars)) {}

  MultiPoly expr_only() {
    MultiPoly p = expr();
    expect_end();
    return p;
  }

  std::vector<MultiPoly> germ() {
    std::vector<MultiPoly> comps(n_, MultiPoly(n_, tower_));
    bool first = true;
    for (;;) {
      bool neg = false;
      if (peek_op("+") || peek_op("-")) {
        neg = cur().text == "-";
        ++k_;
      } else if (!first) {
        break;
      }
      first = false;
      if (marker_index(cur()) >= 0)
        error("expected coefficient before basis marker '" + cur().text + "'");
      MultiPoly coef = power();
      int idx = -1;
      for (;;) {
        if (peek_op("*")) {
          ++k_;
          int m = marker_index(cur());
          if (m >= 0) {
            idx = m;
            ++k_;
            break;
          }
          coef = coef * power();
        } else if (peek_op("/")) {
          ++k_;
          coef = divide(coef, power());
        } else {
          break;
        }
      }
      if (idx < 0) error("expected '*' followed by a basis marker");
      comps[idx] += neg ? -coef : coef;
    }
    expect_end();
    return comps;
  }

 private:
  const Token& cur() const { return toks_[k_]; }
  bool peek_op(const char* op) const { return cur().kind == Tok::Op && cur().text == op; }

  [[noreturn]] void error(const std::string& what) const {
    fail("SyntaxError", "at " + std::to_string(cur().pos) + ": " + what);
  }

  void expect_end() {
    if (cur().kind == Tok::End) return;
    if (cur().kind == Tok::Num || cur().kind == Tok::Ident || peek_op("("))
      error("expected operator (implicit multiplication is not allowed)");
    error("unexpected '" + cur().text + "'");
  }

  int marker_index(const Token& t) const {
    if (t.kind != Tok::Ident) return -1;
    std::string prefix = mode_ == Mode::Field ? "dd" : mode_ == Mode::Form ? "d" : "";
    if (prefix.empty() || t.text.rfind(prefix, 0) != 0) return -1;
    std::string v = t.text.substr(prefix.size());
    auto it = vars_.find(v);
    if (it != vars_.end()) return it->second;
    if (mode_ == Mode::Field || (mode_ == Mode::Form && !v.empty() && v[0] == 'x')) {
      if (v == "x" || v == "y" || v == "z" || (v.size() > 1 && v[0] == 'x' && std::isdigit(static_cast<unsigned char>(v[1]))))
        fail("DimensionMismatch", "basis marker '" + t.text + "' outside dimension " + std::to_string(n_));
    }
    return -1;
  }

  MultiPoly divide(const MultiPoly& a, const MultiPoly& b) {
    if (b.degree() > 0) error("division only by a nonzero constant");
    if (b.is_zero()) fail("DivisionByZero", "division by 0 in expression");
    return b.constant_term().inverse() * a;
  }

  MultiPoly expr() {
    MultiPoly acc(n_, tower_);
    bool first = true;
    for (;;) {
      bool neg = false;
      if (peek_op("+") || peek_op("-")) {
        neg = cur().text == "-";
        ++k_;
      } else if (!first) {
        break;
      }
      first = false;
      MultiPoly t = term();
      acc += neg ? -t : t;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = power();
    for (;;) {
      if (peek_op("*")) {
        ++k_;
        acc = acc * power();
      } else if (peek_op("/")) {
        ++k_;
        acc = divide(acc, power());
      } else {
        return acc;
      }
    }
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (peek_op("^")) {
      ++k_;
      if (cur().kind != Tok::Num) error("expected non-negative integer exponent");
      int e = std::stoi(cur().text);
      ++k_;
      base = base.pow(e);
    }
    return base;
  }

  MultiPoly atom() {
    const Token& t = cur();
    if (t.kind == Tok::Num) {
      ++k_;
      return MultiPoly::constant(n_, FieldElement(Rational(Integer(t.text)))).embed(tower_);
    }
    if (t.kind == Tok::Op && t.text == "(") {
      ++k_;
      MultiPoly e = expr();
      if (marker_index(cur()) >= 0) error("basis marker inside parentheses");
      if (!peek_op(")")) error("expected ')'");
      ++k_;
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (marker_index(t) >= 0) error("basis marker must follow '*' at the end of a term");
      ++k_;
      if (t.text == "i")
        return MultiPoly::constant(n_, FieldElement::i()).embed(common_tower(tower_, Tower::gaussian()));
      auto it = vars_.find(t.text);
      if (it != vars_.end()) return MultiPoly::var(n_, it->second, tower_);
      for (const Tower* L : tower_->chain())
        if (!L->is_base_q() && L->name() == t.text) {
          for (TowerPtr p = tower_; p; p = p->parent())
            if (p.get() == L) return MultiPoly::constant(n_, FieldElement::generator(p)).embed(tower_);
        }
      fail("UnknownVariable", "'" + t.text + "' at " + std::to_string(t.pos));
    }
    if (t.kind == Tok::End) error("unexpected end of input");
    error("unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  int n_;
  TowerPtr tower_;
  Mode mode_;
  std::map<std::string, int> vars_;
};

std::map<std::string, int> var_map(int n) {
  std::map<std::string, int> m;
  auto names = default_var_names(n);
  for (int k = 0; k < n; ++k) m[names[k]] = k;
  return m;
}

// Splits "expr @ g1: poly = 0; g2: poly = 0" and builds the tower.
TowerPtr split_annotation(const std::string& src, std::string* body) {
  auto at = src.find('@');
  *body = src.substr(0, at);
  TowerPtr t = Tower::rationals();
  if (at == std::string::npos) return t;
  std::string rest = src.substr(at + 1);
  std::size_t start = 0;
  while (start < rest.size()) {
    auto semi = rest.find(';', start);
    std::string part = rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    start = semi == std::string::npos ? rest.size() : semi + 1;
    auto colon = part.find(':');
    if (colon == std::string::npos) fail("SyntaxError", "tower annotation needs 'name: poly = 0'");
    std::string name = part.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    std::string poly = part.substr(colon + 1);
    auto eq = poly.find('=');
    if (eq != std::string::npos) poly = poly.substr(0, eq);
    if (name == "i") {
      t = common_tower(t, Tower::gaussian());
      continue;
    }
    TowerCaps caps;
    caps.max_depth = 16;
    caps.max_degree = 64;
    t = adjoin_root(t, parse_upoly(poly, t), caps, name);
  }
  return t;
}

std::string term_string(const FieldElement& c, const std::string& mono, bool* neg) {
  std::string body;
  *neg = false;
  if (c.is_gaussian()) {
    Rational re = c.re(), im = c.im();
    if (sgn(im) == 0) {
      *neg = sgn(re) < 0;
      body = to_string(abs(re));
    } else if (sgn(re) == 0) {
      *neg = sgn(im) < 0;
      body = abs(im) == 1 ? "i" : to_string(abs(im)) + "*i";
    } else {
      body = "(" + gaussian_string(re, im) + ")";
    }
  } else {
    std::string s = c.str();
    if (s.find(' ') != std::string::npos)
      body = "(" + s + ")";
    else if (s[0] == '-') {
      *neg = true;
      body = s.substr(1);
    } else {
      body = s;
    }
  }
  if (mono.empty()) return body;
  if (body == "1") return mono;
  return body + "*" + mono;
}

std::string annotation(const TowerPtr& t) {
  if (t->is_base_q() || t == Tower::gaussian()) return "";
  return " @ " + t->describe();
}

std::string render_body(const MultiPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    bool neg;
    std::string t = term_string(c, mono, &neg);
    if (out.empty())
      out = (neg ? "-" : "") + t;
    else
      out += (neg ? " - " : " + ") + t;
  }
  return out;
}

std::string render_germ(const std::vector<MultiPoly>& comps, const std::string& prefix, TowerPtr t) {
  const int n = static_cast<int>(comps.size());
  auto names = default_var_names(n);
  std::string out;
  for (int i = 0; i < n; ++i) {
    const MultiPoly& p = comps[i];
    if (p.is_zero()) continue;
    std::string marker = prefix + names[i];
    std::string body = render_body(p, names);
    bool neg = false;
    if (p.terms().size() == 1) {
      if (body[0] == '-') {
        neg = true;
        body = body.substr(1);
      }
    } else {
      body = "(" + body + ")";
    }
    std::string term = body + "*" + marker;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  if (out.empty()) out = "0*" + prefix + names[0];
  return out + annotation(t);
}

}  // namespace

int infer_dimension(const std::string& src) {
  std::string body = src.substr(0, src.find('@'));
  int n = 2;
  for (const auto& t : lex(body, 0)) {
    if (t.kind != Tok::Ident) continue;
    std::string v = t.text;
    if (v.rfind("dd", 0) == 0)
      v = v.substr(2);
    else if (v.size() > 1 && v[0] == 'd')
      v = v.substr(1);
    if (v == "z") n = std::max(n, 3);
    if (v.size() > 1 && v[0] == 'x' && std::all_of(v.begin() + 1, v.end(), ::isdigit))
      n = std::max(n, std::stoi(v.substr(1)));
  }
  return n;
}

MultiPoly parse_poly(const std::string& src, int n) {
  std::string body;
  TowerPtr t = split_annotation(src, &body);
  return Parser(body, 0, n, t, Mode::Poly, var_map(n)).expr_only();
}

FieldElement parse_scalar(const std::string& src) {
  MultiPoly p = parse_poly(src, 0);
  return p.is_zero() ? FieldElement::zero(p.tower()) : p.constant_term();
}

VectorFieldGerm parse_vector_field(const std::string& src, int n) {
  std::string body;
  TowerPtr t = split_annotation(src, &body);
  return VectorFieldGerm(Parser(body, 0, n, t, Mode::Field, var_map(n)).germ());
}

OneFormGerm parse_one_form(const std::string& src, int n) {
  std::string body;
  TowerPtr t = split_annotation(src, &body);
  return OneFormGerm(Parser(body, 0, n, t, Mode::Form, var_map(n)).germ());
}

UPoly parse_upoly(const std::string& src, const TowerPtr& tower, const std::string& var) {
  MultiPoly p = Parser(src, 0, 1, tower, Mode::Poly, {{var, 0}}).expr_only();
  return p.to_upoly(0);
}

std::string render(const FieldElement& c) {
  bool neg;
  std::string s = term_string(c, "", &neg);
  return (neg ? "-" : "") + s + annotation(c.tower());
}

std::string render(const MultiPoly& p, const std::vector<std::string>& names) {
  auto nm = names.empty() ? default_var_names(p.nvars()) : names;
  return render_body(p, nm) + annotation(p.tower());
}

std::string MultiPoly::str(const std::vector<std::string>& names) const { return render(*this, names); }

std::string render(const VectorFieldGerm& X) { return render_germ(X.components(), "dd", X.tower()); }

std::string render(const OneFormGerm& w) { return render_germ(w.components(), "d", w.tower()); }

}  // namespace folkit
