#include "sqz/squeezer.hpp"

#include <algorithm>

namespace sqz {

SCondPtr SCond::atom_of(SAtom a) {
  auto c = std::make_shared<SCond>();
  c->kind = Kind::Atom;
  c->atom = std::move(a);
  return c;
}
SCondPtr SCond::conj(SCondPtr a, SCondPtr b) {
  auto c = std::make_shared<SCond>();
  c->kind = Kind::And;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  return c;
}
SCondPtr SCond::disj(SCondPtr a, SCondPtr b) {
  auto c = std::make_shared<SCond>();
  c->kind = Kind::Or;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  return c;
}

int cond_depth(const SCond& c) {
  if (c.kind == SCond::Kind::Atom) return 1;
  return 1 + std::max(cond_depth(*c.c1), cond_depth(*c.c2));
}

bool cond_equal(const SCond& a, const SCond& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == SCond::Kind::Atom) return a.atom == b.atom;
  return cond_equal(*a.c1, *b.c1) && cond_equal(*a.c2, *b.c2);
}

State remove_at(const Program& p, State s, int group, Value pos) {
  for (int ai : p.group_members(group)) {
    auto& arr = s.arrays[ai];
    if (pos < 0 || pos >= static_cast<Value>(arr.size()))
      throw OutOfBounds(p.arrays[ai].name, pos, arr.size());
    arr.erase(arr.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  for (std::size_t k = 0; k < p.scalars.size(); ++k)
    if (p.scalars[k].kind == ScalarKind::Index && s.scalars[k] > pos) s.scalars[k] -= 1;
  return s;
}

Value eval_index_expr(const Program& p, const State& s, int group, const SIndexExpr& e) {
  auto members = p.group_members(group);
  Value n = members.empty() ? 0 : static_cast<Value>(s.arrays[members[0]].size());
  switch (e.kind) {
    case SIndexExpr::Kind::Const: return e.c;
    case SIndexExpr::Kind::Var: return s.scalars[e.var];
    case SIndexExpr::Kind::LenMinusConst: return n - e.c;
    case SIndexExpr::Kind::LenMinusVar: return n - s.scalars[e.var];
  }
  return 0;
}

Value eval_elem(const Program& p, const State& s, const SElemRef& ref) {
  Value ix = eval_index_expr(p, s, p.arrays[ref.array].group, ref.index);
  const auto& arr = s.arrays[ref.array];
  if (ix < 0 || ix >= static_cast<Value>(arr.size()))
    throw OutOfBounds(p.arrays[ref.array].name, ix, arr.size());
  return arr[static_cast<std::size_t>(ix)];
}

namespace {

bool compare_values(CmpOp op, Value a, Value b) {
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

Value atom_side(const Program& p, const State& s, SAtom::Side kind, const SElemRef& elem,
                int var, Value cst) {
  switch (kind) {
    case SAtom::Side::Elem: return eval_elem(p, s, elem);
    case SAtom::Side::Var: return s.scalars[var];
    case SAtom::Side::Const: return cst;
  }
  return 0;
}

}  // namespace

bool eval_scond(const Program& p, const State& s, const SCond& c) {
  switch (c.kind) {
    case SCond::Kind::Atom: {
      const SAtom& a = c.atom;
      Value l = atom_side(p, s, a.lhs_kind, a.lhs_elem, a.lhs_var, 0);
      Value r = atom_side(p, s, a.rhs_kind, a.rhs_elem, a.rhs_var, a.rhs_const);
      return compare_values(a.op, l, r);
    }
    case SCond::Kind::And: return eval_scond(p, s, *c.c1) && eval_scond(p, s, *c.c2);
    case SCond::Kind::Or: return eval_scond(p, s, *c.c1) || eval_scond(p, s, *c.c2);
  }
  return false;
}

State apply(const Squeezer& q, const Program& p, const State& s,
            std::optional<bool> forced_branch) {
  if (rank(s) <= q.base_bound) return s;
  bool take_then = forced_branch ? *forced_branch : eval_scond(p, s, *q.cond);
  const SBranch& br = take_then ? q.then_branch : q.else_branch;
  Value pos = eval_index_expr(p, s, q.group, br.pos);
  std::vector<Value> vals;
  vals.reserve(br.assigns.size());
  for (const auto& as : br.assigns) {
    Value e = eval_elem(p, s, as.elem);
    Value v = s.scalars[as.src];
    vals.push_back(as.add ? v + e : v - e);
  }
  State out = remove_at(p, std::move(s), q.group, pos);
  for (std::size_t k = 0; k < br.assigns.size(); ++k)
    out.scalars[br.assigns[k].target] = vals[k];
  return out;
}

std::size_t min_nonbase_len(const Squeezer& q, const Program& p) {
  std::size_t g = p.group_members(q.group).size();
  if (g == 0) return 0;
  return q.base_bound / g + 1;
}

namespace {

struct WfCheck {
  const Program& p;
  const Squeezer& q;
  Value m;
  std::string err;

  bool index_expr_ok(const SIndexExpr& e, const char* where) {
    switch (e.kind) {
      case SIndexExpr::Kind::Const:
        if (e.c < 0 || e.c >= m) {
          err = std::string(where) + ": constant index " + std::to_string(e.c) +
                " not below minimal non-base length " + std::to_string(m);
          return false;
        }
        return true;
      case SIndexExpr::Kind::LenMinusConst:
        if (e.c < 1 || e.c > m) {
          err = std::string(where) + ": n-" + std::to_string(e.c) +
                " outside [n-" + std::to_string(m) + ", n-1]";
          return false;
        }
        return true;
      case SIndexExpr::Kind::Var:
      case SIndexExpr::Kind::LenMinusVar: {
        int v = e.var;
        if (v < 0 || v >= static_cast<int>(p.scalars.size()) ||
            p.scalars[v].kind != ScalarKind::Index) {
          err = std::string(where) + ": variable index is not an index variable";
          return false;
        }
        return true;  // in-range behaviour policed dynamically and by bounds obligations
      }
    }
    return true;
  }

  bool elem_ok(const SElemRef& r, const char* where) {
    if (r.array < 0 || r.array >= static_cast<int>(p.arrays.size())) {
      err = std::string(where) + ": unknown array";
      return false;
    }
    return index_expr_ok(r.index, where);
  }

  bool atom_ok(const SAtom& a) {
    if (a.lhs_kind == SAtom::Side::Elem) {
      if (!elem_ok(a.lhs_elem, "condition")) return false;
      if (a.rhs_kind == SAtom::Side::Elem) {
        if (!elem_ok(a.rhs_elem, "condition")) return false;
        if (p.arrays[a.lhs_elem.array].sort != p.arrays[a.rhs_elem.array].sort) {
          err = "condition compares elements of different sorts";
          return false;
        }
      } else if (a.rhs_kind == SAtom::Side::Var) {
        if (p.scalars[a.rhs_var].kind != ScalarKind::Data ||
            p.scalars[a.rhs_var].sort != p.arrays[a.lhs_elem.array].sort) {
          err = "condition compares an element with a variable of another sort";
          return false;
        }
      }
    } else if (a.lhs_kind == SAtom::Side::Var) {
      if (p.scalars[a.lhs_var].kind != ScalarKind::Index) {
        err = "condition: left variable is not an index variable";
        return false;
      }
      if (a.rhs_kind == SAtom::Side::Elem) {
        err = "condition compares an index variable with an element";
        return false;
      }
      if (a.rhs_kind == SAtom::Side::Var && p.scalars[a.rhs_var].kind != ScalarKind::Index) {
        err = "condition: right variable is not an index variable";
        return false;
      }
    }
    if (a.rhs_kind == SAtom::Side::Elem && !elem_ok(a.rhs_elem, "condition")) return false;
    return true;
  }

  bool cond_ok(const SCond& c) {
    if (c.kind == SCond::Kind::Atom) return atom_ok(c.atom);
    return cond_ok(*c.c1) && cond_ok(*c.c2);
  }

  bool branch_ok(const SBranch& b, const char* where) {
    if (!index_expr_ok(b.pos, where)) return false;
    for (const auto& as : b.assigns) {
      if (as.target < 0 || as.target >= static_cast<int>(p.scalars.size()) ||
          p.scalars[as.target].kind != ScalarKind::Data) {
        err = std::string(where) + ": assignment target must be a data variable";
        return false;
      }
      if (as.src < 0 || p.scalars[as.src].kind != ScalarKind::Data) {
        err = std::string(where) + ": assignment source must be a data variable";
        return false;
      }
      if (!elem_ok(as.elem, where)) return false;
    }
    return true;
  }
};

}  // namespace

WellFormed well_formed(const Squeezer& q, const Program& p) {
  if (q.group < 0 || q.group >= p.num_groups() || p.group_members(q.group).empty())
    return {false, "unknown array group"};
  WfCheck chk{p, q, static_cast<Value>(min_nonbase_len(q, p)), {}};
  if (!q.cond) return {false, "missing condition"};
  if (!chk.cond_ok(*q.cond)) return {false, chk.err};
  if (!chk.branch_ok(q.then_branch, "then branch")) return {false, chk.err};
  if (!chk.branch_ok(q.else_branch, "else branch")) return {false, chk.err};
  return {true, {}};
}

}  // namespace sqz
