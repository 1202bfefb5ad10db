#include "sqz/text.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace sqz {

namespace {

enum class Tok {
  End, Ident, Int, CharLit,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Colon, Semi, Comma, Assign,
  Plus, Minus,
  Eq, Ne, Le, Lt, Ge, Gt,
  AndAnd, OrOr, Not, Arrow, Iff,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Value value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  std::string src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(std::string s) : src(std::move(s)) { next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur.line, cur.col); }

  void advance(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (pos < src.size() && src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws() {
    for (;;) {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance(1);
      if (pos + 1 < src.size() && src[pos] == '/' && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      break;
    }
  }

  void next() {
    skip_ws();
    cur = Token{};
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur.kind = Tok::End;
      return;
    }
    char c = src[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        advance(1);
      cur.kind = Tok::Ident;
      cur.text = src.substr(start, pos - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance(1);
      cur.kind = Tok::Int;
      cur.value = std::stoll(src.substr(start, pos - start));
      return;
    }
    if (c == '\'') {
      if (pos + 2 >= src.size() || src[pos + 2] != '\'')
        throw ParseError("malformed character literal", line, col);
      cur.kind = Tok::CharLit;
      cur.value = static_cast<unsigned char>(src[pos + 1]);
      advance(3);
      return;
    }
    if (two('<', '-') && pos + 2 < src.size() && src[pos + 2] == '>') {
      cur.kind = Tok::Iff;
      advance(3);
      return;
    }
    struct Pair { const char* s; Tok t; };
    static const Pair pairs[] = {
        {"==", Tok::Eq}, {"!=", Tok::Ne}, {"<=", Tok::Le}, {">=", Tok::Ge},
        {"&&", Tok::AndAnd}, {"||", Tok::OrOr}, {"->", Tok::Arrow},
    };
    for (const auto& pr : pairs) {
      if (two(pr.s[0], pr.s[1])) {
        cur.kind = pr.t;
        advance(2);
        return;
      }
    }
    switch (c) {
      case '(': cur.kind = Tok::LParen; break;
      case ')': cur.kind = Tok::RParen; break;
      case '[': cur.kind = Tok::LBracket; break;
      case ']': cur.kind = Tok::RBracket; break;
      case '{': cur.kind = Tok::LBrace; break;
      case '}': cur.kind = Tok::RBrace; break;
      case ':': cur.kind = Tok::Colon; break;
      case ';': cur.kind = Tok::Semi; break;
      case ',': cur.kind = Tok::Comma; break;
      case '=': cur.kind = Tok::Assign; break;
      case '+': cur.kind = Tok::Plus; break;
      case '-': cur.kind = Tok::Minus; break;
      case '<': cur.kind = Tok::Lt; break;
      case '>': cur.kind = Tok::Gt; break;
      case '!': cur.kind = Tok::Not; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(1);
  }

  bool at_ident(const char* kw) const { return cur.kind == Tok::Ident && cur.text == kw; }

  bool accept(Tok k) {
    if (cur.kind != k) return false;
    next();
    return true;
  }

  void expect(Tok k, const char* what) {
    if (cur.kind != k) fail(std::string("expected ") + what);
    next();
  }

  std::string expect_ident(const char* what) {
    if (cur.kind != Tok::Ident) fail(std::string("expected ") + what);
    std::string s = cur.text;
    next();
    return s;
  }

  struct Mark { std::size_t pos; int line, col; Token cur; };
  Mark mark() const { return {pos, line, col, cur}; }
  void reset(const Mark& m) { pos = m.pos; line = m.line; col = m.col; cur = m.cur; }
};

std::optional<CmpOp> cmp_of(Tok t) {
  switch (t) {
    case Tok::Eq: return CmpOp::Eq;
    case Tok::Ne: return CmpOp::Ne;
    case Tok::Le: return CmpOp::Le;
    case Tok::Lt: return CmpOp::Lt;
    case Tok::Ge: return CmpOp::Ge;
    case Tok::Gt: return CmpOp::Gt;
    default: return std::nullopt;
  }
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Program text.

struct ProgParser {
  Lexer lx;
  Program prog;
  bool in_forall = false;
  std::string forall_var;

  explicit ProgParser(std::string text) : lx(std::move(text)) {}

  int resolve_array(const std::string& name) {
    int a = prog.array_index(name);
    if (a < 0) lx.fail("unknown array '" + name + "'");
    return a;
  }

  ExprPtr name_ref(const std::string& name) {
    if (in_forall && name == forall_var) return Expr::bound();
    int s = prog.scalar_index(name);
    if (s >= 0) return Expr::scalar(s);
    if (name == "n" && !prog.arrays.empty()) return Expr::len(0);
    int a = prog.array_index(name);
    if (a >= 0) lx.fail("array '" + name + "' used without an index");
    lx.fail("unknown identifier '" + name + "'");
  }

  ExprPtr parse_primary() {
    if (lx.cur.kind == Tok::Int) {
      Value v = lx.cur.value;
      lx.next();
      return Expr::lit_of(v);
    }
    if (lx.cur.kind == Tok::CharLit) {
      Value v = lx.cur.value;
      lx.next();
      return Expr::lit_of(v);
    }
    if (lx.accept(Tok::Minus)) return Expr::sub(Expr::lit_of(0), parse_primary());
    if (lx.accept(Tok::LParen)) {
      ExprPtr e = parse_arith();
      lx.expect(Tok::RParen, "')'");
      return e;
    }
    if (lx.cur.kind == Tok::Ident) {
      if (lx.cur.text == "len") {
        lx.next();
        lx.expect(Tok::LParen, "'('");
        int a = resolve_array(lx.expect_ident("array name"));
        lx.expect(Tok::RParen, "')'");
        return Expr::len(a);
      }
      std::string name = lx.cur.text;
      lx.next();
      if (lx.accept(Tok::LBracket)) {
        int a = resolve_array(name);
        ExprPtr ix = parse_arith();
        lx.expect(Tok::RBracket, "']'");
        return Expr::elem(a, std::move(ix));
      }
      return name_ref(name);
    }
    lx.fail("expected expression");
  }

  ExprPtr parse_arith() {
    ExprPtr e = parse_primary();
    for (;;) {
      if (lx.accept(Tok::Plus)) e = Expr::add(std::move(e), parse_primary());
      else if (lx.accept(Tok::Minus)) e = Expr::sub(std::move(e), parse_primary());
      else return e;
    }
  }

  // Comparison chains a <= b <= c become conjunctions.
  CondPtr parse_rel() {
    ExprPtr a = parse_arith();
    auto op = cmp_of(lx.cur.kind);
    if (!op) lx.fail("expected comparison operator");
    CondPtr out;
    while (auto o = cmp_of(lx.cur.kind)) {
      lx.next();
      ExprPtr b = parse_arith();
      CondPtr link = Cond::cmp(*o, a, b);
      out = out ? Cond::logical_and(std::move(out), std::move(link)) : std::move(link);
      a = std::move(b);
    }
    return out;
  }

  CondPtr parse_bool_primary() {
    if (lx.at_ident("done")) {
      lx.next();
      return Cond::at_done();
    }
    if (lx.at_ident("true")) {
      lx.next();
      return Cond::lit_of(true);
    }
    if (lx.at_ident("false")) {
      lx.next();
      return Cond::lit_of(false);
    }
    if (lx.at_ident("forall")) {
      lx.next();
      std::string var = lx.expect_ident("bound variable");
      if (!lx.at_ident("in")) lx.fail("expected 'in'");
      lx.next();
      lx.expect(Tok::LBracket, "'['");
      ExprPtr lo = parse_arith();
      lx.expect(Tok::Comma, "','");
      ExprPtr hi = parse_arith();
      lx.expect(Tok::RParen, "')' (half-open range)");
      lx.expect(Tok::Colon, "':'");
      if (in_forall) lx.fail("nested forall is not supported");
      in_forall = true;
      forall_var = var;
      CondPtr body = parse_rel();
      in_forall = false;
      return Cond::forall(std::move(lo), std::move(hi), std::move(body));
    }
    if (lx.accept(Tok::Not)) return Cond::logical_not(parse_bool_primary());
    if (lx.cur.kind == Tok::LParen) {
      // Either a parenthesized boolean or a parenthesized arithmetic operand.
      auto m = lx.mark();
      lx.next();
      try {
        CondPtr c = parse_bool();
        lx.expect(Tok::RParen, "')'");
        if (cmp_of(lx.cur.kind)) throw ParseError("relational continuation", 0, 0);
        return c;
      } catch (const ParseError&) {
        lx.reset(m);
        return parse_rel();
      }
    }
    return parse_rel();
  }

  CondPtr parse_and() {
    CondPtr c = parse_bool_primary();
    while (lx.accept(Tok::AndAnd)) c = Cond::logical_and(std::move(c), parse_bool_primary());
    return c;
  }

  CondPtr parse_or() {
    CondPtr c = parse_and();
    while (lx.accept(Tok::OrOr)) c = Cond::logical_or(std::move(c), parse_and());
    return c;
  }

  CondPtr parse_impl() {
    CondPtr c = parse_or();
    if (lx.accept(Tok::Arrow)) return Cond::implies(std::move(c), parse_impl());
    return c;
  }

  CondPtr parse_bool() {
    CondPtr c = parse_impl();
    while (lx.accept(Tok::Iff)) c = Cond::iff(std::move(c), parse_impl());
    return c;
  }

  ElemSort parse_sort() {
    std::string s = lx.expect_ident("sort (int or char)");
    if (s == "int") return ElemSort::Int;
    if (s == "char") return ElemSort::Char;
    lx.fail("unknown sort '" + s + "'");
  }

  std::vector<StmtPtr> parse_block() {
    lx.expect(Tok::LBrace, "'{'");
    std::vector<StmtPtr> out;
    while (!lx.accept(Tok::RBrace)) out.push_back(parse_stmt());
    return out;
  }

  StmtPtr parse_stmt() {
    if (lx.at_ident("if")) {
      lx.next();
      lx.expect(Tok::LParen, "'('");
      CondPtr c = parse_bool();
      lx.expect(Tok::RParen, "')'");
      std::vector<StmtPtr> t = parse_block();
      std::vector<StmtPtr> e;
      if (lx.at_ident("else")) {
        lx.next();
        e = parse_block();
      }
      return Stmt::if_stmt(std::move(c), std::move(t), std::move(e));
    }
    if (lx.at_ident("return")) {
      lx.next();
      ExprPtr v;
      if (lx.cur.kind != Tok::Semi) v = parse_arith();
      lx.expect(Tok::Semi, "';'");
      return Stmt::ret(std::move(v));
    }
    std::string name = lx.expect_ident("statement");
    int s = prog.scalar_index(name);
    if (s < 0) lx.fail("assignment to unknown scalar '" + name + "'");
    lx.expect(Tok::Assign, "'='");
    ExprPtr e = parse_arith();
    lx.expect(Tok::Semi, "';'");
    return Stmt::assign(s, std::move(e));
  }

  void declare_scalar(ScalarKind kind) {
    lx.next();
    std::string name = lx.expect_ident("scalar name");
    ElemSort sort = ElemSort::Int;
    if (kind == ScalarKind::Data) {
      lx.expect(Tok::Colon, "':'");
      sort = parse_sort();
    }
    std::optional<Value> init;
    if (lx.accept(Tok::Assign)) {
      bool neg = lx.accept(Tok::Minus);
      if (lx.cur.kind == Tok::Int || lx.cur.kind == Tok::CharLit) {
        init = neg ? -lx.cur.value : lx.cur.value;
        lx.next();
      } else {
        lx.fail("expected constant initializer");
      }
    }
    if (prog.scalar_index(name) >= 0 || prog.array_index(name) >= 0)
      lx.fail("duplicate declaration '" + name + "'");
    prog.scalars.push_back({name, kind, sort});
    prog.init.push_back(init);
  }

  Program run() {
    if (!lx.at_ident("program")) lx.fail("expected 'program'");
    lx.next();
    prog.name = lx.expect_ident("program name");
    int next_group = 0;
    for (;;) {
      if (lx.at_ident("array")) {
        lx.next();
        std::vector<std::string> names;
        names.push_back(lx.expect_ident("array name"));
        while (lx.cur.kind == Tok::Ident && lx.cur.text != "int" && lx.cur.text != "char")
          names.push_back(lx.expect_ident("array name"));
        lx.expect(Tok::Colon, "':'");
        ElemSort sort = parse_sort();
        for (const auto& nm : names) {
          if (prog.array_index(nm) >= 0 || prog.scalar_index(nm) >= 0)
            lx.fail("duplicate declaration '" + nm + "'");
          prog.arrays.push_back({nm, sort, next_group});
        }
        ++next_group;
        continue;
      }
      if (lx.at_ident("index")) {
        declare_scalar(ScalarKind::Index);
        continue;
      }
      if (lx.at_ident("data")) {
        declare_scalar(ScalarKind::Data);
        continue;
      }
      break;
    }
    while (lx.at_ident("assume")) {
      lx.next();
      prog.assumptions.push_back(parse_bool());
    }
    if (!lx.at_ident("loop")) lx.fail("expected 'loop'");
    lx.next();
    lx.expect(Tok::LParen, "'('");
    prog.guard = parse_bool();
    lx.expect(Tok::RParen, "')'");
    prog.body = parse_block();
    while (lx.at_ident("assume")) {
      lx.next();
      prog.assumptions.push_back(parse_bool());
    }
    if (!lx.at_ident("assert")) lx.fail("expected 'assert'");
    lx.next();
    prog.spec = parse_bool();
    if (lx.cur.kind != Tok::End) lx.fail("trailing input after assert");
    bool has_ret_value = false;
    std::function<void(const Stmt&)> scan = [&](const Stmt& st) {
      if (st.kind == Stmt::Kind::Return && st.expr) has_ret_value = true;
      for (const auto& c : st.then_stmts) scan(*c);
      for (const auto& c : st.else_stmts) scan(*c);
    };
    for (const auto& st : prog.body) scan(*st);
    if (has_ret_value && prog.scalar_index("ret") < 0)
      lx.fail("'return <expr>' requires a data variable named ret");
    prog.finalize();
    return std::move(prog);
  }
};

// ---------------------------------------------------------------------------
// Squeezer text.

struct SqzParser {
  Lexer lx;
  const Program& prog;

  SqzParser(const Program& p, std::string text) : lx(std::move(text)), prog(p) {}

  SIndexExpr parse_index_expr() {
    if (lx.cur.kind == Tok::Int) {
      Value v = lx.cur.value;
      lx.next();
      return SIndexExpr::constant(v);
    }
    std::string name = lx.expect_ident("index expression");
    bool is_len = false;
    if (name == "len") {
      lx.expect(Tok::LParen, "'('");
      lx.expect_ident("array name");
      lx.expect(Tok::RParen, "')'");
      is_len = true;
    } else if (name == "n" && prog.scalar_index("n") < 0) {
      is_len = true;
    }
    if (is_len) {
      if (!lx.accept(Tok::Minus)) lx.fail("length may only appear as n-<const> or n-<var>");
      if (lx.cur.kind == Tok::Int) {
        Value v = lx.cur.value;
        lx.next();
        return SIndexExpr::len_minus(v);
      }
      std::string vn = lx.expect_ident("index variable");
      int s = prog.scalar_index(vn);
      if (s < 0) lx.fail("unknown variable '" + vn + "'");
      return SIndexExpr::len_minus_var(s);
    }
    int s = prog.scalar_index(name);
    if (s < 0) lx.fail("unknown variable '" + name + "'");
    return SIndexExpr::var_of(s);
  }

  // One comparison side: arr[ix], variable, or constant.
  struct Side {
    SAtom::Side kind;
    SElemRef elem;
    int var = -1;
    Value cst = 0;
  };

  Side parse_side() {
    if (lx.cur.kind == Tok::Int || lx.cur.kind == Tok::CharLit) {
      Value v = lx.cur.value;
      lx.next();
      return {SAtom::Side::Const, {}, -1, v};
    }
    if (lx.accept(Tok::Minus)) {
      if (lx.cur.kind != Tok::Int) lx.fail("expected number");
      Value v = -lx.cur.value;
      lx.next();
      return {SAtom::Side::Const, {}, -1, v};
    }
    std::string name = lx.expect_ident("comparison operand");
    int a = prog.array_index(name);
    if (a >= 0) {
      lx.expect(Tok::LBracket, "'['");
      SIndexExpr ix = parse_index_expr();
      lx.expect(Tok::RBracket, "']'");
      return {SAtom::Side::Elem, {a, ix}, -1, 0};
    }
    int s = prog.scalar_index(name);
    if (s < 0) lx.fail("unknown identifier '" + name + "'");
    return {SAtom::Side::Var, {}, s, 0};
  }

  SAtom make_atom(CmpOp op, const Side& l, const Side& r) {
    SAtom a;
    a.op = op;
    if (l.kind == SAtom::Side::Const) lx.fail("constant on the left of a comparison");
    a.lhs_kind = l.kind;
    a.lhs_elem = l.elem;
    a.lhs_var = l.var;
    a.rhs_kind = r.kind;
    a.rhs_elem = r.elem;
    a.rhs_var = r.var;
    a.rhs_const = r.cst;
    return a;
  }

  // Comparison chains (a <= b <= c) desugar to conjunctions.
  SCondPtr parse_atom_chain() {
    Side l = parse_side();
    auto op = cmp_of(lx.cur.kind);
    if (!op) lx.fail("expected comparison operator");
    SCondPtr out;
    Side prev = l;
    while (auto o = cmp_of(lx.cur.kind)) {
      lx.next();
      Side r = parse_side();
      SCondPtr link = SCond::atom_of(make_atom(*o, prev, r));
      out = out ? SCond::conj(std::move(out), std::move(link)) : std::move(link);
      prev = r;
    }
    return out;
  }

  SCondPtr parse_cond_primary() {
    if (lx.cur.kind == Tok::LParen) {
      auto m = lx.mark();
      lx.next();
      try {
        SCondPtr c = parse_cond();
        lx.expect(Tok::RParen, "')'");
        if (cmp_of(lx.cur.kind)) throw ParseError("relational continuation", 0, 0);
        return c;
      } catch (const ParseError&) {
        lx.reset(m);
        return parse_atom_chain();
      }
    }
    return parse_atom_chain();
  }

  SCondPtr parse_cond_and() {
    SCondPtr c = parse_cond_primary();
    while (lx.accept(Tok::AndAnd)) c = SCond::conj(std::move(c), parse_cond_primary());
    return c;
  }

  SCondPtr parse_cond() {
    SCondPtr c = parse_cond_and();
    while (lx.accept(Tok::OrOr)) c = SCond::disj(std::move(c), parse_cond_and());
    return c;
  }

  SBranch parse_branch(int& group) {
    SBranch br;
    std::vector<int> removed;
    bool first = true;
    for (;;) {
      if (lx.at_ident("remove")) {
        lx.next();
        lx.expect(Tok::LParen, "'('");
        int a = prog.array_index(lx.expect_ident("array name"));
        if (a < 0) lx.fail("remove of unknown array");
        lx.expect(Tok::Comma, "','");
        SIndexExpr pos = parse_index_expr();
        lx.expect(Tok::RParen, "')'");
        if (first) {
          group = prog.arrays[a].group;
          br.pos = pos;
          first = false;
        } else {
          if (prog.arrays[a].group != group)
            lx.fail("removals must target arrays of one lockstep group");
          if (!(pos == br.pos)) lx.fail("removals must share one position expression");
        }
        removed.push_back(a);
      } else if (lx.cur.kind == Tok::Ident && prog.scalar_index(lx.cur.text) >= 0) {
        if (first) lx.fail("branch must start with remove(...)");
        SAssign as;
        as.target = prog.scalar_index(lx.expect_ident("variable"));
        lx.expect(Tok::Assign, "'='");
        as.src = prog.scalar_index(lx.expect_ident("variable"));
        if (as.src < 0) lx.fail("assignment source must be a variable");
        if (lx.accept(Tok::Plus)) as.add = true;
        else if (lx.accept(Tok::Minus)) as.add = false;
        else lx.fail("expected '+' or '-'");
        int a = prog.array_index(lx.expect_ident("array name"));
        if (a < 0) lx.fail("unknown array in assignment");
        lx.expect(Tok::LBracket, "'['");
        as.elem.array = a;
        as.elem.index = parse_index_expr();
        lx.expect(Tok::RBracket, "']'");
        br.assigns.push_back(as);
      } else {
        break;
      }
      if (!lx.accept(Tok::Semi)) break;
    }
    if (first) lx.fail("branch must contain remove(...)");
    // Every array of the group must be removed from, exactly once.
    auto members = prog.group_members(group);
    if (removed.size() != members.size())
      lx.fail("branch must remove from every array of the group exactly once");
    for (int m : members)
      if (std::count(removed.begin(), removed.end(), m) != 1)
        lx.fail("branch must remove from every array of the group exactly once");
    return br;
  }

  Squeezer run() {
    if (!lx.at_ident("if")) lx.fail("expected 'if'");
    lx.next();
    lx.expect(Tok::LParen, "'('");
    Squeezer q;
    q.cond = parse_cond();
    lx.expect(Tok::RParen, "')'");
    int g_then = -1, g_else = -1;
    q.then_branch = parse_branch(g_then);
    if (!lx.at_ident("else")) lx.fail("expected 'else'");
    lx.next();
    q.else_branch = parse_branch(g_else);
    if (g_then != g_else) lx.fail("both branches must squeeze the same group");
    q.group = g_then;
    if (lx.cur.kind != Tok::End) lx.fail("trailing input after else branch");
    return q;
  }
};

std::string render_atom(const Program& p, const SAtom& a);

std::string render_cond_rec(const Program& p, const SCond& c) {
  if (c.kind == SCond::Kind::Atom) return render_atom(p, c.atom);
  const char* op = c.kind == SCond::Kind::And ? " && " : " || ";
  return "(" + render_cond_rec(p, *c.c1) + ")" + op + "(" + render_cond_rec(p, *c.c2) + ")";
}

std::string render_side(const Program& p, SAtom::Side kind, const SElemRef& elem, int var,
                        Value cst) {
  switch (kind) {
    case SAtom::Side::Elem:
      return p.arrays[elem.array].name + "[" + render_index_expr(p, elem.index) + "]";
    case SAtom::Side::Var: return p.scalars[var].name;
    case SAtom::Side::Const: return std::to_string(cst);
  }
  return {};
}

std::string render_atom(const Program& p, const SAtom& a) {
  return render_side(p, a.lhs_kind, a.lhs_elem, a.lhs_var, 0) + " " + cmp_text(a.op) + " " +
         render_side(p, a.rhs_kind, a.rhs_elem, a.rhs_var, a.rhs_const);
}

std::string render_branch(const Program& p, const Squeezer& q, const SBranch& br) {
  std::ostringstream os;
  bool first = true;
  for (int a : p.group_members(q.group)) {
    if (!first) os << "; ";
    os << "remove(" << p.arrays[a].name << "," << render_index_expr(p, br.pos) << ")";
    first = false;
  }
  for (const auto& as : br.assigns) {
    os << "; " << p.scalars[as.target].name << " = " << p.scalars[as.src].name
       << (as.add ? " + " : " - ") << p.arrays[as.elem.array].name << "["
       << render_index_expr(p, as.elem.index) << "]";
  }
  return os.str();
}

}  // namespace

Program parse_program(const std::string& text) { return ProgParser(text).run(); }

Squeezer parse_squeezer(const Program& p, const std::string& text) {
  return SqzParser(p, text).run();
}

SCondPtr parse_squeezer_cond(const Program& p, const std::string& text) {
  SqzParser sp(p, text);
  SCondPtr c = sp.parse_cond();
  if (sp.lx.cur.kind != Tok::End) sp.lx.fail("trailing input after condition");
  return c;
}

std::string render_squeezer_cond(const Program& p, const SCond& c) {
  if (c.kind == SCond::Kind::Atom) return render_atom(p, c.atom);
  return render_cond_rec(p, c);
}

std::string render_index_expr(const Program& p, const SIndexExpr& e) {
  switch (e.kind) {
    case SIndexExpr::Kind::Const: return std::to_string(e.c);
    case SIndexExpr::Kind::Var: return p.scalars[e.var].name;
    case SIndexExpr::Kind::LenMinusConst: return "n-" + std::to_string(e.c);
    case SIndexExpr::Kind::LenMinusVar: return "n-" + p.scalars[e.var].name;
  }
  return {};
}

std::string render_squeezer(const Program& p, const Squeezer& q) {
  std::ostringstream os;
  os << "if (" << render_squeezer_cond(p, *q.cond) << ") " << render_branch(p, q, q.then_branch)
     << " else " << render_branch(p, q, q.else_branch);
  return os.str();
}

}  // namespace sqz
