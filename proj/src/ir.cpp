#include "sqz/ir.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace sqz {

ExprPtr Expr::lit_of(Value v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Lit;
  e->lit = v;
  return e;
}
ExprPtr Expr::scalar(int id) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::ScalarRef;
  e->id = id;
  return e;
}
ExprPtr Expr::bound() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::BoundRef;
  return e;
}
ExprPtr Expr::len(int array) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Len;
  e->id = array;
  return e;
}
ExprPtr Expr::add(ExprPtr x, ExprPtr y) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Add;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}
ExprPtr Expr::sub(ExprPtr x, ExprPtr y) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Sub;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}
ExprPtr Expr::elem(int array, ExprPtr index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Elem;
  e->id = array;
  e->a = std::move(index);
  return e;
}

CondPtr Cond::lit_of(bool v) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Lit;
  c->b = v;
  return c;
}
CondPtr Cond::cmp(CmpOp op, ExprPtr a, ExprPtr b) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Cmp;
  c->op = op;
  c->e1 = std::move(a);
  c->e2 = std::move(b);
  return c;
}
CondPtr Cond::logical_not(CondPtr x) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Not;
  c->c1 = std::move(x);
  return c;
}
static CondPtr binary(Cond::Kind k, CondPtr a, CondPtr b) {
  auto c = std::make_shared<Cond>();
  c->kind = k;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  return c;
}
CondPtr Cond::logical_and(CondPtr a, CondPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
CondPtr Cond::logical_or(CondPtr a, CondPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
CondPtr Cond::implies(CondPtr a, CondPtr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
CondPtr Cond::iff(CondPtr a, CondPtr b) { return binary(Kind::Iff, std::move(a), std::move(b)); }
CondPtr Cond::forall(ExprPtr lo, ExprPtr hi, CondPtr body) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Forall;
  c->e1 = std::move(lo);
  c->e2 = std::move(hi);
  c->c1 = std::move(body);
  return c;
}
CondPtr Cond::at_done() {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::AtDone;
  return c;
}

StmtPtr Stmt::assign(int target, ExprPtr e) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::Assign;
  s->target = target;
  s->expr = std::move(e);
  return s;
}
StmtPtr Stmt::if_stmt(CondPtr c, std::vector<StmtPtr> t, std::vector<StmtPtr> e) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::If;
  s->cond = std::move(c);
  s->then_stmts = std::move(t);
  s->else_stmts = std::move(e);
  return s;
}
StmtPtr Stmt::ret(ExprPtr value) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::Return;
  s->expr = std::move(value);
  return s;
}

int Program::num_groups() const {
  int g = -1;
  for (const auto& a : arrays) g = std::max(g, a.group);
  return g + 1;
}

std::vector<int> Program::group_members(int group) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(arrays.size()); ++i)
    if (arrays[i].group == group) out.push_back(i);
  return out;
}

int Program::array_index(const std::string& n) const {
  for (int i = 0; i < static_cast<int>(arrays.size()); ++i)
    if (arrays[i].name == n) return i;
  return -1;
}

int Program::scalar_index(const std::string& n) const {
  for (int i = 0; i < static_cast<int>(scalars.size()); ++i)
    if (scalars[i].name == n) return i;
  return -1;
}

int Program::index_var_group(int scalar) const {
  if (scalar < 0 || scalar >= static_cast<int>(index_group_.size())) return -1;
  return index_group_[scalar];
}

namespace {

void collect_constants(const Expr& e, std::set<Value>& out) {
  if (e.kind == Expr::Kind::Lit) out.insert(e.lit);
  if (e.a) collect_constants(*e.a, out);
  if (e.b) collect_constants(*e.b, out);
}

void collect_constants(const Cond& c, std::set<Value>& out) {
  if (c.e1) collect_constants(*c.e1, out);
  if (c.e2) collect_constants(*c.e2, out);
  if (c.c1) collect_constants(*c.c1, out);
  if (c.c2) collect_constants(*c.c2, out);
}

void collect_constants(const Stmt& s, std::set<Value>& out) {
  if (s.expr) collect_constants(*s.expr, out);
  if (s.cond) collect_constants(*s.cond, out);
  for (const auto& t : s.then_stmts) collect_constants(*t, out);
  for (const auto& t : s.else_stmts) collect_constants(*t, out);
}

// Records "scalar k indexes into array a" pairs from a[... k ...] reads.
void match_index_vars(const Expr& e, const Program& p, std::vector<int>& groups) {
  if (e.kind == Expr::Kind::Elem && e.a) {
    std::function<void(const Expr&)> scan = [&](const Expr& ix) {
      if (ix.kind == Expr::Kind::ScalarRef && p.scalars[ix.id].kind == ScalarKind::Index)
        groups[ix.id] = p.arrays[e.id].group;
      if (ix.a) scan(*ix.a);
      if (ix.b) scan(*ix.b);
    };
    scan(*e.a);
  }
  if (e.a) match_index_vars(*e.a, p, groups);
  if (e.b) match_index_vars(*e.b, p, groups);
}

void match_index_vars(const Cond& c, const Program& p, std::vector<int>& groups) {
  if (c.e1) match_index_vars(*c.e1, p, groups);
  if (c.e2) match_index_vars(*c.e2, p, groups);
  if (c.c1) match_index_vars(*c.c1, p, groups);
  if (c.c2) match_index_vars(*c.c2, p, groups);
}

void match_index_vars(const Stmt& s, const Program& p, std::vector<int>& groups) {
  if (s.expr) match_index_vars(*s.expr, p, groups);
  if (s.cond) match_index_vars(*s.cond, p, groups);
  for (const auto& t : s.then_stmts) match_index_vars(*t, p, groups);
  for (const auto& t : s.else_stmts) match_index_vars(*t, p, groups);
}

}  // namespace

void Program::finalize() {
  std::set<Value> consts;
  for (const auto& s : body) collect_constants(*s, consts);
  if (guard) collect_constants(*guard, consts);
  if (spec) collect_constants(*spec, consts);
  for (const auto& v : init)
    if (v) consts.insert(*v);
  constants.assign(consts.begin(), consts.end());

  ret_scalar = scalar_index("ret");

  index_group_.assign(scalars.size(), -1);
  for (const auto& s : body) match_index_vars(*s, *this, index_group_);
  if (guard) match_index_vars(*guard, *this, index_group_);
  if (spec) match_index_vars(*spec, *this, index_group_);
}

namespace {

struct EvalCtx {
  const Program& p;
  const State& s;
  Value bound_val = 0;
  bool bound_set = false;
};

Value eval(const EvalCtx& ctx, const Expr& e);

Value read_elem(const EvalCtx& ctx, const Expr& e) {
  Value ix = eval(ctx, *e.a);
  const auto& arr = ctx.s.arrays[e.id];
  if (ix < 0 || ix >= static_cast<Value>(arr.size()))
    throw OutOfBounds(ctx.p.arrays[e.id].name, ix, arr.size());
  return arr[static_cast<std::size_t>(ix)];
}

Value eval(const EvalCtx& ctx, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Lit: return e.lit;
    case Expr::Kind::ScalarRef: return ctx.s.scalars[e.id];
    case Expr::Kind::BoundRef: return ctx.bound_val;
    case Expr::Kind::Len: return static_cast<Value>(ctx.s.arrays[e.id].size());
    case Expr::Kind::Add: return eval(ctx, *e.a) + eval(ctx, *e.b);
    case Expr::Kind::Sub: return eval(ctx, *e.a) - eval(ctx, *e.b);
    case Expr::Kind::Elem: return read_elem(ctx, e);
  }
  return 0;
}

bool compare(CmpOp op, Value a, Value b) {
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Gt: return a > b;
  }
  return false;
}

// Short-circuit evaluation: guarded subformulas with out-of-range reads are
// never touched when the guard already decides the value.
bool eval(EvalCtx& ctx, const Cond& c) {
  switch (c.kind) {
    case Cond::Kind::Lit: return c.b;
    case Cond::Kind::Cmp: return compare(c.op, eval(ctx, *c.e1), eval(ctx, *c.e2));
    case Cond::Kind::Not: return !eval(ctx, *c.c1);
    case Cond::Kind::And: return eval(ctx, *c.c1) && eval(ctx, *c.c2);
    case Cond::Kind::Or: return eval(ctx, *c.c1) || eval(ctx, *c.c2);
    case Cond::Kind::Implies: return !eval(ctx, *c.c1) || eval(ctx, *c.c2);
    case Cond::Kind::Iff: return eval(ctx, *c.c1) == eval(ctx, *c.c2);
    case Cond::Kind::AtDone: return ctx.s.loc == Loc::Done;
    case Cond::Kind::Forall: {
      Value lo = eval(ctx, *c.e1);
      Value hi = eval(ctx, *c.e2);
      for (Value j = lo; j < hi; ++j) {
        EvalCtx inner{ctx.p, ctx.s, j, true};
        if (!eval(inner, *c.c1)) return false;
      }
      return true;
    }
  }
  return false;
}

// Returns true if a Return statement fired.
bool exec_stmts(const Program& p, State& s, const std::vector<StmtPtr>& stmts) {
  for (const auto& st : stmts) {
    switch (st->kind) {
      case Stmt::Kind::Assign: {
        EvalCtx ctx{p, s};
        s.scalars[st->target] = eval(ctx, *st->expr);
        break;
      }
      case Stmt::Kind::If: {
        EvalCtx ctx{p, s};
        bool taken = eval(ctx, *st->cond);
        if (exec_stmts(p, s, taken ? st->then_stmts : st->else_stmts)) return true;
        break;
      }
      case Stmt::Kind::Return: {
        if (st->expr) {
          EvalCtx ctx{p, s};
          Value v = eval(ctx, *st->expr);
          if (p.ret_scalar >= 0) s.scalars[p.ret_scalar] = v;
        }
        s.loc = Loc::Done;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

Value eval_expr(const Program& p, const State& s, const Expr& e) {
  EvalCtx ctx{p, s};
  return eval(ctx, e);
}

bool holds(const Program& p, const State& s, const Cond& c) {
  EvalCtx ctx{p, s};
  return eval(ctx, c);
}

bool is_initial(const Program& p, const State& s) {
  if (s.loc != Loc::Loop) return false;
  for (std::size_t k = 0; k < p.scalars.size(); ++k)
    if (p.init[k] && s.scalars[k] != *p.init[k]) return false;
  for (const auto& a : p.assumptions)
    if (!holds(p, s, *a)) return false;
  return true;
}

State step(const Program& p, State s) {
  if (s.loc == Loc::Done) return s;
  if (!holds(p, s, *p.spec)) return s;  // unsafe states repeat forever
  if (!holds(p, s, *p.guard)) {
    s.loc = Loc::Done;
    return s;
  }
  exec_stmts(p, s, p.body);
  return s;
}

State step_n(const Program& p, State s, int n) {
  for (int k = 0; k < n; ++k) s = step(p, std::move(s));
  return s;
}

std::size_t rank(const State& s) {
  std::size_t r = 0;
  for (const auto& a : s.arrays) r += a.size();
  return r;
}

bool lengths_consistent(const Program& p, const State& s) {
  for (int g = 0; g < p.num_groups(); ++g) {
    auto members = p.group_members(g);
    for (std::size_t k = 1; k < members.size(); ++k)
      if (s.arrays[members[k]].size() != s.arrays[members[0]].size()) return false;
  }
  return true;
}

std::size_t state_hash(const State& s) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(s.loc == Loc::Done ? 2 : 1);
  for (const auto& a : s.arrays) {
    mix(a.size() + 0x51ull);
    for (Value v : a) mix(static_cast<std::size_t>(v) * 0x100000001b3ull);
  }
  for (Value v : s.scalars) mix(static_cast<std::size_t>(v) * 0xc2b2ae3d27d4eb4full);
  return h;
}

std::string show_state(const Program& p, const State& s) {
  std::ostringstream os;
  os << (s.loc == Loc::Done ? "<done" : "<loop");
  for (std::size_t i = 0; i < p.arrays.size(); ++i) {
    os << " " << p.arrays[i].name << "=[";
    for (std::size_t j = 0; j < s.arrays[i].size(); ++j)
      os << (j ? "," : "") << s.arrays[i][j];
    os << "]";
  }
  for (std::size_t i = 0; i < p.scalars.size(); ++i)
    os << " " << p.scalars[i].name << "=" << s.scalars[i];
  os << ">";
  return os.str();
}

}  // namespace sqz
