#include "amal/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace amal {

namespace {

const std::vector<std::string> kKeywords = {"let",    "check",  "zsets",
                                            "spec",   "verify", "search",
                                            "infer"};

bool is_keyword(const std::string& s) {
  return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

struct Token {
  enum class Kind { Ident, Number, Punct, Flag, End } kind;
  std::string text;
  long num = 0;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      size_t j = i + 2;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '-'))
        ++j;
      Token t{Token::Kind::Flag, src.substr(i, j - i), 0, tl, tc};
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      Token t{Token::Kind::Number, src.substr(i, j - i), 0, tl, tc};
      t.num = std::stol(t.text);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '-' || src[j] == '.'))
        ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), 0, tl, tc});
      advance(j - i);
      continue;
    }
    if (std::string("()[],=^+*!").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), 0, tl, tc});
      advance(1);
      continue;
    }
    throw parse_error("unexpected character '" + std::string(1, c) + "'", line,
                      col);
  }
  out.push_back({Token::Kind::End, "", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse() {
    Program prog;
    while (peek().kind != Token::Kind::End) prog.push_back(parse_stmt());
    return prog;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    throw parse_error(what, t.line, t.col);
  }
  Token expect_punct(const std::string& p) {
    const Token& t = next();
    if (t.kind != Token::Kind::Punct || t.text != p)
      fail("expected '" + p + "'", t);
    return t;
  }
  Token expect_ident() {
    const Token& t = next();
    if (t.kind != Token::Kind::Ident) fail("expected a name", t);
    return t;
  }
  Token expect_number() {
    const Token& t = next();
    if (t.kind != Token::Kind::Number) fail("expected an integer", t);
    return t;
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }

  Stmt parse_stmt() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident)
      fail("expected 'let' or a command", t);
    if (t.text == "let") {
      next();
      Stmt s;
      s.kind = Stmt::Kind::Let;
      s.name = expect_ident().text;
      expect_punct("=");
      s.expr = parse_expr();
      return s;
    }
    if (!is_keyword(t.text)) fail("unknown command '" + t.text + "'", t);
    return parse_command();
  }

  bool starts_expr() const {
    const Token& t = peek();
    return (t.kind == Token::Kind::Ident && !is_keyword(t.text)) ||
           t.kind == Token::Kind::Number;
  }

  Stmt parse_command() {
    Stmt s;
    s.kind = Stmt::Kind::Command;
    const Token& cmd = next();
    s.name = cmd.text;
    if (s.name == "check") {
      s.args.push_back(name_expr(expect_ident()));
      s.args.push_back(parse_expr());
    } else if (s.name == "zsets" || s.name == "spec") {
      s.args.push_back(parse_expr());
    } else if (s.name == "verify") {
      s.args.push_back(name_expr(expect_ident()));
      if (!starts_expr()) fail("verify needs at least one target", peek());
      while (starts_expr()) s.args.push_back(parse_expr());
    } else if (s.name == "search") {
      s.args.push_back(parse_profile());
      while (peek().kind == Token::Kind::Flag) {
        s.args.push_back(name_expr(next()));
        s.args.push_back(number_expr(expect_number()));
      }
    } else if (s.name == "infer") {
      int n = 0;
      while (n < 2 && peek().kind == Token::Kind::Ident &&
             !is_keyword(peek().text)) {
        s.args.push_back(name_expr(next()));
        ++n;
      }
    }
    return s;
  }

  static Expr name_expr(const Token& t) {
    Expr e;
    e.kind = Expr::Kind::Name;
    e.head = t.text;
    e.line = t.line;
    e.col = t.col;
    return e;
  }
  static Expr number_expr(const Token& t) {
    Expr e;
    e.kind = Expr::Kind::Number;
    e.number = t.num;
    e.line = t.line;
    e.col = t.col;
    return e;
  }

  Expr parse_profile() {
    Expr e;
    e.kind = Expr::Kind::Name;
    e.line = peek().line;
    e.col = peek().col;
    std::string text;
    bool expect_term = true;
    while (true) {
      if (at_punct("!")) {
        text += next().text;
        expect_term = true;
        continue;
      }
      if (expect_term) {
        const Token& t = next();
        if (t.kind != Token::Kind::Ident || is_keyword(t.text))
          fail("expected a predicate name in the profile", t);
        text += t.text;
        expect_term = false;
        continue;
      }
      if (at_punct(",")) {
        text += next().text;
        expect_term = true;
        continue;
      }
      break;
    }
    e.head = text;
    return e;
  }

  Expr parse_expr() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) return number_expr(next());
    if (t.kind != Token::Kind::Ident || is_keyword(t.text))
      fail("expected an expression", t);
    Token head = next();
    if (!at_punct("(")) return name_expr(head);
    static const std::vector<std::string> constructors = {
        "zmod",    "gf",      "polyquot", "product", "quot",
        "ideal",   "canon",   "hom",      "amalgam", "dup",
        "trivext", "asmod",   "modquot",  "modprod", "modideal"};
    if (std::find(constructors.begin(), constructors.end(), head.text) ==
        constructors.end())
      fail("unknown constructor '" + head.text + "'", head);
    Expr e;
    e.kind = Expr::Kind::Call;
    e.head = head.text;
    e.line = head.line;
    e.col = head.col;
    expect_punct("(");
    if (e.head == "polyquot") {
      e.args.push_back(parse_expr());
      expect_punct(",");
      e.args.push_back(parse_poly());
    } else if (e.head == "ideal") {
      e.args.push_back(parse_expr());
      expect_punct(",");
      e.args.push_back(parse_elem_list());
    } else if (e.head == "hom") {
      e.args.push_back(parse_expr());
      expect_punct(",");
      e.args.push_back(parse_expr());
      expect_punct(",");
      if (at_punct("["))
        e.args.push_back(parse_number_list());
      else
        e.args.push_back(name_expr(expect_ident()));
    } else {
      e.args.push_back(parse_expr());
      while (at_punct(",")) {
        next();
        e.args.push_back(parse_expr());
      }
    }
    expect_punct(")");
    return e;
  }

  Expr parse_poly() {
    Expr e;
    e.kind = Expr::Kind::PolyLit;
    e.line = peek().line;
    e.col = peek().col;
    while (true) {
      long coeff = 1;
      int exp = 0;
      bool have_coeff = false;
      if (peek().kind == Token::Kind::Number) {
        coeff = next().num;
        have_coeff = true;
        if (at_punct("*")) {
          next();
          if (peek().kind != Token::Kind::Ident || peek().text != "X")
            fail("expected X after '*'", peek());
        }
      }
      if (peek().kind == Token::Kind::Ident && peek().text == "X") {
        next();
        exp = 1;
        if (at_punct("^")) {
          next();
          exp = static_cast<int>(expect_number().num);
        }
      } else if (!have_coeff) {
        fail("expected a polynomial term", peek());
      }
      e.terms.emplace_back(coeff, exp);
      if (at_punct("+"))
        next();
      else
        break;
    }
    return e;
  }

  Expr parse_elem_list() {
    Expr e;
    e.kind = Expr::Kind::List;
    e.line = peek().line;
    e.col = peek().col;
    expect_punct("[");
    if (!at_punct("]")) {
      e.args.push_back(parse_poly());
      while (at_punct(",")) {
        next();
        e.args.push_back(parse_poly());
      }
    }
    expect_punct("]");
    return e;
  }

  Expr parse_number_list() {
    Expr e;
    e.kind = Expr::Kind::List;
    e.line = peek().line;
    e.col = peek().col;
    expect_punct("[");
    if (!at_punct("]")) {
      e.args.push_back(number_expr(expect_number()));
      while (at_punct(",")) {
        next();
        e.args.push_back(number_expr(expect_number()));
      }
    }
    expect_punct("]");
    return e;
  }
};

std::string poly_str(const Expr& e) {
  std::string out;
  for (size_t i = 0; i < e.terms.size(); ++i) {
    auto [c, k] = e.terms[i];
    if (i) out += "+";
    if (k == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += k == 1 ? "X" : "X^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace

std::string Expr::str() const {
  switch (kind) {
    case Kind::Name: return head;
    case Kind::Number: return std::to_string(number);
    case Kind::PolyLit: return poly_str(*this);
    case Kind::List: {
      std::string out = "[";
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i].str();
      }
      return out + "]";
    }
    case Kind::Call: {
      std::string out = head + "(";
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i].str();
      }
      return out + ")";
    }
  }
  return "";
}

std::string Stmt::str() const {
  if (kind == Kind::Let) return "let " + name + " = " + expr.str();
  std::string out = name;
  for (const Expr& a : args) out += " " + a.str();
  return out;
}

Program parse_program(const std::string& source) {
  return Parser(lex(source)).parse();
}

std::string print_program(const Program& prog) {
  std::string out;
  for (const Stmt& s : prog) out += s.str() + "\n";
  return out;
}

namespace {

struct Value {
  enum class Kind { Ring, IdealV, HomV, ModuleV, InstanceV } kind;
  RingPtr ring;
  std::optional<Ideal> ideal;
  std::optional<Hom> hom;
  ModulePtr module;
  std::shared_ptr<Instance> inst;
};

class Session {
 public:
  Session(const CliOptions& opts, std::ostream& out) : opts_(opts), out_(out) {}

  // true if every asserted property held and nothing was falsified
  bool clean() const { return clean_; }

  void run_stmt(const Stmt& s) {
    if (s.kind == Stmt::Kind::Let) {
      env_.insert_or_assign(s.name, eval(s.expr));
      return;
    }
    if (s.name == "check") cmd_check(s);
    else if (s.name == "zsets") cmd_zsets(s);
    else if (s.name == "spec") cmd_spec(s);
    else if (s.name == "verify") cmd_verify(s);
    else if (s.name == "search") cmd_search(s);
    else cmd_infer(s);
  }

 private:
  const CliOptions& opts_;
  std::ostream& out_;
  std::map<std::string, Value> env_;
  bool clean_ = true;

  [[noreturn]] void type_fail(const std::string& what, const Expr& e) const {
    throw parse_error(what, e.line, e.col);
  }
  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Name: {
        auto it = env_.find(e.head);
        if (it == env_.end()) type_fail("unbound name '" + e.head + "'", e);
        return it->second;
      }
      case Expr::Kind::Number:
        type_fail("integer literal used where a value is required", e);
      case Expr::Kind::PolyLit:
      case Expr::Kind::List:
        type_fail("literal used where a value is required", e);
      case Expr::Kind::Call: break;
    }
    return eval_call(e);
  }

  RingPtr ring_arg(const Expr& e) {
    Value v = eval(e);
    if (v.kind == Value::Kind::Ring) return v.ring;
    if (v.kind == Value::Kind::InstanceV) return instance_ring(*v.inst);
    type_fail("expected a ring here", e);
  }
  Ideal ideal_arg(const Expr& e, const RingPtr& ring) {
    Value v = eval(e);
    if (v.kind != Value::Kind::IdealV)
      type_fail("expected an ideal here", e);
    if (ring && v.ideal->ring.get() != ring.get())
      type_fail("ideal belongs to a different ring", e);
    return *v.ideal;
  }
  ModulePtr module_arg(const Expr& e) {
    Value v = eval(e);
    if (v.kind != Value::Kind::ModuleV)
      type_fail("expected a module here", e);
    return v.module;
  }
  std::shared_ptr<Instance> instance_arg(const Expr& e) {
    Value v = eval(e);
    if (v.kind != Value::Kind::InstanceV)
      type_fail("expected an amalgamation, duplication, or trivial extension",
                e);
    return v.inst;
  }

  static RingPtr instance_ring(const Instance& inst) {
    return inst.kind == Instance::Kind::TrivialExtension ? inst.trivext_ring
                                                         : inst.am.A;
  }

  long number_arg(const Expr& e) {
    if (e.kind != Expr::Kind::Number) type_fail("expected an integer", e);
    return e.number;
  }

  Elem literal_elem(const RingPtr& r, const Expr& lit) {
    bool constant_only = true;
    for (auto [c, k] : lit.terms)
      if (k > 0) constant_only = false;
    if (constant_only) {
      long sum = 0;
      for (auto [c, k] : lit.terms) sum += c;
      return nat_embed(*r, sum);
    }
    const auto& info = r->polyquot_info();
    if (!info)
      type_fail("polynomial literal needs a polynomial quotient ring", lit);
    const RingPtr& base = info->base;
    int deg = static_cast<int>(info->modulus.size()) - 1;
    std::vector<Elem> digits(deg, base->zero());
    for (auto [c, k] : lit.terms) {
      if (k >= deg)
        type_fail("literal degree " + std::to_string(k) +
                      " is not reduced modulo the defining polynomial",
                  lit);
      digits[k] = base->add(digits[k], nat_embed(*base, c));
    }
    Elem idx = 0;
    for (int k = deg - 1; k >= 0; --k)
      idx = idx * base->size() + digits[k];
    return idx;
  }

  Value eval_call(const Expr& e) {
    const std::string& h = e.head;
    auto ring_value = [](RingPtr r) {
      Value v;
      v.kind = Value::Kind::Ring;
      v.ring = std::move(r);
      return v;
    };
    if (h == "zmod") return ring_value(make_zmod(number_arg(e.args[0])));
    if (h == "gf") {
      long p = number_arg(e.args[0]);
      for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) type_fail("gf needs a prime", e.args[0]);
      if (p < 2) type_fail("gf needs a prime", e.args[0]);
      return ring_value(make_zmod(p));
    }
    if (h == "polyquot") {
      auto base = ring_arg(e.args[0]);
      const Expr& lit = e.args[1];
      int deg = 0;
      for (auto [c, k] : lit.terms) deg = std::max(deg, k);
      std::vector<Elem> coeffs(deg + 1, base->zero());
      for (auto [c, k] : lit.terms)
        coeffs[k] = base->add(coeffs[k], nat_embed(*base, c));
      return ring_value(
          make_poly_quotient(base, make_polynomial(base, coeffs)));
    }
    if (h == "product")
      return ring_value(make_product(ring_arg(e.args[0]), ring_arg(e.args[1])));
    if (h == "quot") {
      auto r = ring_arg(e.args[0]);
      auto [q, pi] = make_quotient(r, ideal_arg(e.args[1], r));
      return ring_value(q);
    }
    if (h == "ideal") {
      auto r = ring_arg(e.args[0]);
      std::vector<Elem> gens;
      for (const Expr& lit : e.args[1].args)
        gens.push_back(literal_elem(r, lit));
      Value v;
      v.kind = Value::Kind::IdealV;
      v.ideal = ideal_generated(r, gens);
      return v;
    }
    if (h == "canon") {
      auto a = ring_arg(e.args[0]);
      auto b = ring_arg(e.args[1]);
      Value v;
      v.kind = Value::Kind::HomV;
      if (b->quotient_info() && b->quotient_info()->base.get() == a.get()) {
        v.hom = make_hom(a, b, b->quotient_info()->class_of);
        return v;
      }
      if (b->polyquot_info() && b->polyquot_info()->base.get() == a.get()) {
        std::vector<Elem> map(a->size());
        for (Elem x = 0; x < a->size(); ++x) map[x] = x;  // constants
        v.hom = make_hom(a, b, std::move(map));
        return v;
      }
      type_fail("no canonical homomorphism between these rings", e);
    }
    if (h == "hom") {
      auto a = ring_arg(e.args[0]);
      auto b = ring_arg(e.args[1]);
      std::vector<Elem> map;
      if (e.args[2].kind == Expr::Kind::List) {
        for (const Expr& n : e.args[2].args)
          map.push_back(static_cast<Elem>(number_arg(n)));
        if (static_cast<int>(map.size()) != a->size())
          type_fail("map length differs from the domain size", e.args[2]);
      } else if (e.args[2].head == "mod") {
        map.resize(a->size());
        for (Elem x = 0; x < a->size(); ++x) map[x] = x % b->size();
      } else {
        type_fail("expected a bracketed image list or 'mod'", e.args[2]);
      }
      Value v;
      v.kind = Value::Kind::HomV;
      v.hom = make_hom(a, b, std::move(map));
      return v;
    }
    if (h == "amalgam") {
      Value f = eval(e.args[0]);
      if (f.kind != Value::Kind::HomV)
        type_fail("expected a homomorphism here", e.args[0]);
      Ideal j = ideal_arg(e.args[1], f.hom->cod);
      Value v;
      v.kind = Value::Kind::InstanceV;
      v.inst = std::make_shared<Instance>(make_instance(amalgamation(*f.hom, j)));
      return v;
    }
    if (h == "dup") {
      auto r = ring_arg(e.args[0]);
      Ideal i = ideal_arg(e.args[1], r);
      Value v;
      v.kind = Value::Kind::InstanceV;
      v.inst = std::make_shared<Instance>(make_instance(duplication(r, i)));
      return v;
    }
    if (h == "trivext") {
      auto r = ring_arg(e.args[0]);
      auto m = module_arg(e.args[1]);
      Value v;
      v.kind = Value::Kind::InstanceV;
      v.inst = std::make_shared<Instance>(make_trivext_instance(r, m));
      return v;
    }
    auto module_value = [](ModulePtr m) {
      Value v;
      v.kind = Value::Kind::ModuleV;
      v.module = std::move(m);
      return v;
    };
    if (h == "asmod") return module_value(ring_as_module(ring_arg(e.args[0])));
    if (h == "modquot") {
      auto r = ring_arg(e.args[0]);
      return module_value(module_quotient(r, ideal_arg(e.args[1], r)));
    }
    if (h == "modideal") {
      auto r = ring_arg(e.args[0]);
      return module_value(module_from_ideal(r, ideal_arg(e.args[1], r)));
    }
    if (h == "modprod")
      return module_value(
          module_product(module_arg(e.args[0]), module_arg(e.args[1])));
    type_fail("unknown constructor '" + h + "'", e);
  }

  void emit(const nlohmann::ordered_json& j, const std::string& text) {
    if (opts_.structured)
      out_ << j.dump() << "\n";
    else
      out_ << text << "\n";
  }

  void cmd_check(const Stmt& s) {
    const std::string& pred = s.args[0].head;
    Value v = eval(s.args[1]);
    bool val;
    std::string target;
    if (pred == "star") {
      if (v.kind != Value::Kind::InstanceV)
        type_fail("expected an amalgamation, duplication, or trivial extension",
                  s.args[1]);
      target = instance_ring(*v.inst)->name();
      val = has_condition_star(v.inst->am);
    } else {
      RingPtr r = v.kind == Value::Kind::Ring ? v.ring
                  : v.kind == Value::Kind::InstanceV
                      ? instance_ring(*v.inst)
                      : nullptr;
      if (!r) type_fail("expected a ring here", s.args[1]);
      target = r->name();
      if (pred == "prufer") val = is_prufer(r);
      else if (pred == "gaussian") val = is_gaussian(r);
      else if (pred == "arithmetical") val = is_arithmetical(r);
      else if (pred == "chain") val = is_chain_ring(r);
      else if (pred == "total-quotient") val = is_total_quotient_ring(r);
      else if (pred == "local") val = is_local(r);
      else if (pred == "valuation-domain") val = is_valuation_domain(r);
      else if (pred == "gaussian-direct")
        val = !gaussian_direct_check(r, opts_.degree, opts_.samples, opts_.seed)
                   .has_value();
      else
        type_fail("unknown predicate '" + pred + "'", s.args[0]);
    }
    if (!val && opts_.assert_mode) clean_ = false;
    nlohmann::ordered_json j;
    j["command"] = "check";
    j["predicate"] = pred;
    j["target"] = target;
    j["value"] = val;
    emit(j, "check " + pred + " " + target + ": " + (val ? "true" : "false"));
  }

  void cmd_zsets(const Stmt& s) {
    auto inst = instance_arg(s.args[0]);
    const auto& am = inst->am;
    auto [s1, s2] = star_sets(am);
    auto z = ring_zero_divisors(am.A);
    std::vector<Elem> un;
    std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(),
                   std::back_inserter(un));
    bool exact = z == un;
    auto labels = [&](const std::vector<Elem>& xs) {
      std::vector<std::string> out;
      for (Elem x : xs) out.push_back(am.A->label(x));
      return out;
    };
    nlohmann::ordered_json j;
    j["command"] = "zsets";
    j["target"] = am.A->name();
    j["Z"] = labels(z);
    j["S1"] = labels(s1);
    j["S2"] = labels(s2);
    j["exact"] = exact;
    std::string text = "zsets " + am.A->name() + ": |Z|=" +
                       std::to_string(z.size()) + " |S1|=" +
                       std::to_string(s1.size()) + " |S2|=" +
                       std::to_string(s2.size()) +
                       (exact ? " (Z = S1 u S2)" : " (Z strictly inside S1 u S2)");
    emit(j, text);
  }

  void cmd_spec(const Stmt& s) {
    auto r = ring_arg(s.args[0]);
    nlohmann::ordered_json j;
    j["command"] = "spec";
    j["target"] = r->name();
    std::string text = "spec " + r->name() + ":";
    j["primes"] = nlohmann::ordered_json::array();
    auto maxes = max_spec(r);
    auto is_max = [&](const Ideal& p) {
      for (const auto& m : maxes)
        if (m.members == p.members) return true;
      return false;
    };
    for (const Ideal& p : spec(r)) {
      j["primes"].push_back(
          {{"ideal", p.str()}, {"maximal", is_max(p)}});
      text += "\n  " + p.str() + (is_max(p) ? " (maximal)" : "");
    }
    emit(j, text);
  }

  void cmd_verify(const Stmt& s) {
    const std::string& claim = s.args[0].head;
    for (size_t i = 1; i < s.args.size(); ++i) {
      auto inst = instance_arg(s.args[i]);
      ClaimReport rep = verify(claim, *inst);
      if (rep.status == ClaimReport::Status::Falsified) clean_ = false;
      if (opts_.structured)
        out_ << report_json(rep) << "\n";
      else
        out_ << rep.str() << "\n";
    }
  }

  void cmd_search(const Stmt& s) {
    Profile profile = parse_profile(s.args[0].head);
    CorpusBounds bounds;
    bounds.amalgam_size_max = opts_.search_max_size;
    for (size_t i = 1; i + 1 < s.args.size(); i += 2) {
      const std::string& flag = s.args[i].head;
      int val = static_cast<int>(s.args[i + 1].number);
      if (flag == "--max-size") bounds.amalgam_size_max = val;
      else if (flag == "--zmod-max") bounds.zmod_max = val;
      else if (flag == "--poly-max") bounds.poly_max = val;
      else type_fail("unknown search flag '" + flag + "'", s.args[i]);
    }
    auto hits = search(profile, generate_corpus(bounds));
    for (const Instance& inst : hits) {
      int size = instance_ring(inst)->size();
      nlohmann::ordered_json j;
      j["command"] = "search";
      j["instance"] = inst.digest;
      j["size"] = size;
      emit(j, "found [" + std::to_string(size) + "] " + inst.digest);
    }
    if (hits.empty()) {
      nlohmann::ordered_json j;
      j["command"] = "search";
      j["hits"] = 0;
      emit(j, "no instances match");
    }
  }

  void cmd_infer(const Stmt& s) {
    KnowledgeBase kb = opts_.kb_path.empty() ? shipped_kb()
                                             : load_kb_file(opts_.kb_path);
    kb = apply_rules(std::move(kb));
    try {
      if (s.args.size() == 2) {
        auto d = explain(kb, s.args[0].head, s.args[1].head);
        nlohmann::ordered_json j;
        j["command"] = "infer";
        j["entity"] = s.args[0].head;
        j["attribute"] = s.args[1].head;
        j["value"] = d.value;
        j["derivation"] = d.str();
        emit(j, d.str());
      } else if (s.args.size() == 1) {
        const auto& rec = kb.entities.at(s.args[0].head);
        nlohmann::ordered_json j;
        j["command"] = "infer";
        j["entity"] = rec.entity;
        std::string text = rec.entity + ":";
        for (const auto& [attr, v] : rec.attrs) {
          bool val = v.value == TriState::True;
          j[attr] = val;
          text += "\n  " + attr + " = " + (val ? "true" : "false") + " [" +
                  v.prov.label + "]";
        }
        emit(j, text);
      } else {
        emit({{"command", "infer"}, {"kb", dump_kb(kb)}}, dump_kb(kb));
      }
    } catch (const query_error& e) {
      throw input_error(e.what());
    } catch (const std::out_of_range&) {
      throw input_error("unknown entity '" + s.args[0].head + "'");
    }
  }
};

}  // namespace

int run_program(const std::string& source, const CliOptions& opts,
                std::ostream& out, std::ostream& err) {
  try {
    Program prog = parse_program(source);
    Session session(opts, out);
    for (const Stmt& s : prog) session.run_stmt(s);
    return session.clean() ? 0 : 1;
  } catch (const resource_cap_error& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const inconsistency_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace amal
