#include "qprobe/parser.hpp"

#include <cctype>
#include <optional>

namespace qprobe {

namespace {

struct Token {
  enum class Kind { Ident, Int, Float, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  long long int_value = 0;
  double float_value = 0.0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space_and_comments();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        s += get();
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::move(s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      bool is_float = false;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        s += get();
      // Disambiguate a decimal point from the `..` range symbol.
      if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        is_float = true;
        s += get();
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          s += get();
      }
      if (is_float) {
        tok_.kind = Token::Kind::Float;
        tok_.float_value = std::stod(s);
      } else {
        tok_.kind = Token::Kind::Int;
        tok_.int_value = std::stoll(s);
      }
      tok_.text = std::move(s);
      return;
    }
    // Multi-char symbols first.
    static const char* two[] = {"..", "==", "!=", "<=", ">=", "&&", "||"};
    for (const char* t : two) {
      if (src_.substr(pos_, 2) == t) {
        tok_.kind = Token::Kind::Sym;
        tok_.text = t;
        get();
        get();
        return;
      }
    }
    tok_.kind = Token::Kind::Sym;
    tok_.text = std::string(1, get());
  }

  char get() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') get();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Program parse(std::string entry) {
    Program prog;
    std::string first;
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Ident) fail("expected 'sub' or 'oracle'");
      SubroutineDef def;
      if (t.text == "sub") {
        def = parse_sub();
      } else if (t.text == "oracle") {
        def = parse_oracle();
      } else {
        fail("expected 'sub' or 'oracle', found '" + t.text + "'");
      }
      if (prog.subs.count(def.name))
        fail("duplicate subroutine: " + def.name);
      if (first.empty() && !def.is_oracle) first = def.name;
      prog.subs[def.name] = std::move(def);
    }
    prog.entry = entry.empty() ? first : std::move(entry);
    validate(prog);
    return prog;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, lex_.peek().line, lex_.peek().col);
  }

  bool at_sym(const std::string& s) const {
    return lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == s;
  }

  bool at_ident(const std::string& s) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s;
  }

  void expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("expected '" + s + "'");
    lex_.take();
  }

  std::string expect_ident() {
    if (lex_.peek().kind != Token::Kind::Ident) fail("expected identifier");
    return lex_.take().text;
  }

  void expect_keyword(const std::string& s) {
    if (!at_ident(s)) fail("expected '" + s + "'");
    lex_.take();
  }

  std::vector<Param> parse_params() {
    std::vector<Param> params;
    expect_sym("(");
    if (at_sym(")")) {
      lex_.take();
      return params;
    }
    while (true) {
      Param p;
      const std::string kind = expect_ident();
      if (kind == "int") {
        p.kind = ParamKind::Int;
        p.name = expect_ident();
      } else if (kind == "qubits") {
        p.kind = ParamKind::QubitArray;
        p.name = expect_ident();
        expect_sym("[");
        if (!at_sym("]")) p.length = parse_expr();
        expect_sym("]");
      } else if (kind == "sub") {
        p.kind = ParamKind::Subroutine;
        p.name = expect_ident();
        while (at_ident("adj") || at_ident("ctl")) {
          if (lex_.take().text == "adj")
            p.slot_adjoint = true;
          else
            p.slot_controlled = true;
        }
      } else {
        fail("expected parameter kind (int/qubits/sub), found '" + kind + "'");
      }
      params.push_back(std::move(p));
      if (at_sym(")")) {
        lex_.take();
        return params;
      }
      expect_sym(",");
    }
  }

  SubroutineDef parse_sub() {
    expect_keyword("sub");
    SubroutineDef def;
    def.name = expect_ident();
    def.params = parse_params();
    def.body = parse_block();
    return def;
  }

  SubroutineDef parse_oracle() {
    expect_keyword("oracle");
    SubroutineDef def;
    def.is_oracle = true;
    def.name = expect_ident();
    def.params = parse_params();
    while (at_ident("adj") || at_ident("ctl")) {
      if (lex_.take().text == "adj")
        def.oracle_adjoint = true;
      else
        def.oracle_controlled = true;
    }
    expect_sym(";");
    return def;
  }

  Block parse_block() {
    expect_sym("{");
    Block body;
    while (!at_sym("}")) {
      if (lex_.peek().kind == Token::Kind::End) fail("unterminated block");
      body.push_back(parse_stmt());
    }
    lex_.take();
    return body;
  }

  StmtPtr parse_stmt() {
    const int line = lex_.peek().line;
    if (lex_.peek().kind != Token::Kind::Ident)
      fail("expected a statement");
    const std::string head = lex_.peek().text;

    Statement st;
    st.line = line;
    if (head == "for") {
      st.node = parse_for();
    } else if (head == "if") {
      st.node = parse_if();
    } else if (head == "call") {
      st.node = parse_call();
    } else if (head == "reset") {
      lex_.take();
      ResetStmt r;
      r.qubits = parse_qref_list();
      expect_sym(";");
      st.node = std::move(r);
    } else if (head == "ctrl") {
      lex_.take();
      GateApp g;
      expect_sym("(");
      g.controls = parse_qref_list();
      expect_sym(")");
      parse_gate_tail(g);
      st.node = std::move(g);
    } else {
      // NAME '=' ... is an assignment or measurement; anything else is a
      // gate application.
      lex_.take();
      if (at_sym("=")) {
        lex_.take();
        if (at_ident("measure")) {
          lex_.take();
          MeasureStmt m;
          m.result = head;
          m.qubits = parse_qref_list();
          expect_sym(";");
          st.node = std::move(m);
        } else {
          AssignStmt a;
          a.name = head;
          a.value = parse_expr();
          expect_sym(";");
          st.node = std::move(a);
        }
      } else {
        GateApp g;
        g.gate = head;
        parse_gate_args_and_targets(g);
        st.node = std::move(g);
      }
    }
    return make_stmt(std::move(st));
  }

  void parse_gate_tail(GateApp& g) {
    g.gate = expect_ident();
    parse_gate_args_and_targets(g);
  }

  void parse_gate_args_and_targets(GateApp& g) {
    if (at_sym("(")) {
      lex_.take();
      g.angle = parse_angle_expr();
      expect_sym(")");
    }
    g.targets = parse_qref_list();
    expect_sym(";");
  }

  CallStmt parse_call() {
    expect_keyword("call");
    CallStmt c;
    c.callee = expect_ident();
    if (at_sym("[")) {
      lex_.take();
      while (!at_sym("]")) {
        const std::string tag = expect_ident();
        if (tag == "inv")
          c.tag.inverse = !c.tag.inverse;
        else if (tag == "ctl")
          ++c.tag.controlled;
        else
          fail("unknown variant tag: " + tag);
        if (at_sym(",")) lex_.take();
      }
      lex_.take();
    }
    expect_sym("(");
    if (!at_sym(")")) {
      while (true) {
        c.args.push_back(parse_expr());
        if (at_sym(")")) break;
        expect_sym(",");
      }
    }
    lex_.take();
    expect_sym("(");
    if (!at_sym(")")) c.qubit_args = parse_qref_list();
    expect_sym(")");
    expect_sym(";");
    return c;
  }

  ForLoop parse_for() {
    expect_keyword("for");
    ForLoop f;
    f.index = expect_ident();
    expect_keyword("in");
    if (at_ident("rev")) {
      lex_.take();
      f.descending = true;
    }
    f.lo = parse_expr();
    expect_sym("..");
    f.hi = parse_expr();
    f.body = parse_block();
    return f;
  }

  IfStmt parse_if() {
    expect_keyword("if");
    IfStmt i;
    expect_sym("(");
    i.cond = parse_expr();
    expect_sym(")");
    i.then_body = parse_block();
    if (at_ident("else")) {
      lex_.take();
      i.else_body = parse_block();
    }
    return i;
  }

  std::vector<QubitRef> parse_qref_list() {
    std::vector<QubitRef> refs;
    refs.push_back(parse_qref());
    while (at_sym(",")) {
      lex_.take();
      // Allow a trailing comma before ')' in control lists.
      if (at_sym(")")) break;
      refs.push_back(parse_qref());
    }
    return refs;
  }

  QubitRef parse_qref() {
    const std::string array = expect_ident();
    if (!at_sym("[")) return QubitRef::all(array);
    lex_.take();
    IntExprPtr lo = parse_expr();
    if (at_sym("..")) {
      lex_.take();
      IntExprPtr hi = parse_expr();
      expect_sym("]");
      return QubitRef::range(array, std::move(lo), std::move(hi));
    }
    expect_sym("]");
    return QubitRef::single(array, std::move(lo));
  }

  // ---- integer expressions ----

  IntExprPtr parse_expr() { return parse_or(); }

  IntExprPtr parse_or() {
    IntExprPtr e = parse_and();
    while (at_sym("||")) {
      lex_.take();
      e = IntExpr::binary(IntExpr::Op::Or, e, parse_and());
    }
    return e;
  }

  IntExprPtr parse_and() {
    IntExprPtr e = parse_cmp();
    while (at_sym("&&")) {
      lex_.take();
      e = IntExpr::binary(IntExpr::Op::And, e, parse_cmp());
    }
    return e;
  }

  IntExprPtr parse_cmp() {
    IntExprPtr e = parse_add();
    static const std::pair<const char*, IntExpr::Op> ops[] = {
        {"<=", IntExpr::Op::Le}, {">=", IntExpr::Op::Ge},
        {"==", IntExpr::Op::Eq}, {"!=", IntExpr::Op::Ne},
        {"<", IntExpr::Op::Lt},  {">", IntExpr::Op::Gt},
    };
    for (const auto& [sym, op] : ops) {
      if (at_sym(sym)) {
        lex_.take();
        return IntExpr::binary(op, e, parse_add());
      }
    }
    return e;
  }

  IntExprPtr parse_add() {
    IntExprPtr e = parse_mul();
    while (at_sym("+") || at_sym("-")) {
      const auto op =
          lex_.take().text == "+" ? IntExpr::Op::Add : IntExpr::Op::Sub;
      e = IntExpr::binary(op, e, parse_mul());
    }
    return e;
  }

  IntExprPtr parse_mul() {
    IntExprPtr e = parse_unary();
    while (at_sym("*") || at_sym("/") || at_sym("%")) {
      const std::string sym = lex_.take().text;
      const auto op = sym == "*"   ? IntExpr::Op::Mul
                      : sym == "/" ? IntExpr::Op::Div
                                   : IntExpr::Op::Mod;
      e = IntExpr::binary(op, e, parse_unary());
    }
    return e;
  }

  IntExprPtr parse_unary() {
    if (at_sym("-")) {
      lex_.take();
      return IntExpr::unary(IntExpr::Op::Neg, parse_unary());
    }
    if (at_sym("!")) {
      lex_.take();
      return IntExpr::unary(IntExpr::Op::Not, parse_unary());
    }
    return parse_primary();
  }

  IntExprPtr parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Int) return IntExpr::lit(lex_.take().int_value);
    if (t.kind == Token::Kind::Ident) return IntExpr::param(lex_.take().text);
    if (at_sym("(")) {
      lex_.take();
      IntExprPtr e = parse_expr();
      expect_sym(")");
      return e;
    }
    fail("expected an expression");
  }

  // ---- angle expressions ----

  AngleExprPtr parse_angle_expr() { return parse_angle_add(); }

  AngleExprPtr parse_angle_add() {
    AngleExprPtr e = parse_angle_mul();
    while (at_sym("+") || at_sym("-")) {
      const auto op = lex_.take().text == "+" ? AngleExpr::Op::Add
                                              : AngleExpr::Op::Sub;
      e = AngleExpr::binary(op, e, parse_angle_mul());
    }
    return e;
  }

  AngleExprPtr parse_angle_mul() {
    AngleExprPtr e = parse_angle_pow();
    while (at_sym("*") || at_sym("/")) {
      const auto op = lex_.take().text == "*" ? AngleExpr::Op::Mul
                                              : AngleExpr::Op::Div;
      e = AngleExpr::binary(op, e, parse_angle_pow());
    }
    return e;
  }

  AngleExprPtr parse_angle_pow() {
    AngleExprPtr e = parse_angle_unary();
    if (at_sym("^")) {
      lex_.take();
      e = AngleExpr::binary(AngleExpr::Op::Pow, e, parse_angle_pow());
    }
    return e;
  }

  AngleExprPtr parse_angle_unary() {
    if (at_sym("-")) {
      lex_.take();
      return AngleExpr::neg(parse_angle_unary());
    }
    return parse_angle_primary();
  }

  AngleExprPtr parse_angle_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Int)
      return AngleExpr::lit(double(lex_.take().int_value));
    if (t.kind == Token::Kind::Float)
      return AngleExpr::lit(lex_.take().float_value);
    if (t.kind == Token::Kind::Ident) {
      const std::string name = lex_.take().text;
      if (name == "pi") return AngleExpr::pi();
      return AngleExpr::param(name);
    }
    if (at_sym("(")) {
      lex_.take();
      AngleExprPtr e = parse_angle_expr();
      expect_sym(")");
      return e;
    }
    fail("expected an angle expression");
  }

  Lexer lex_;
};

}  // namespace

Program parse_program(std::string_view source, std::string entry) {
  Parser p(source);
  return p.parse(std::move(entry));
}

}  // namespace qprobe
