#include "sqz/encode.hpp"

namespace sqz {

SymState Encoder::declare_state(const std::string& prefix, bool fixed_loop,
                                const SymState* share_arrays_of, std::vector<Decl>& decls,
                                std::vector<TermId>& hyp, SymBinding& binding) {
  SymState s;
  binding.label = prefix;
  if (share_arrays_of) {
    s.arrays = share_arrays_of->arrays;
    binding.array_vars.clear();  // shared with the base state
  } else {
    for (const auto& a : p_.arrays) {
      std::string nm = prefix + "_" + a.name;
      decls.push_back({nm, VarSort::Seq});
      s.arrays.push_back(A.var(nm));
      binding.array_vars.push_back(nm);
    }
    // Lockstep groups share one length.
    for (int g = 0; g < p_.num_groups(); ++g) {
      auto members = p_.group_members(g);
      for (std::size_t k = 1; k < members.size(); ++k)
        hyp.push_back(A.eq(A.seq_len(s.arrays[members[k]]), A.seq_len(s.arrays[members[0]])));
    }
  }
  if (fixed_loop) {
    s.done = A.boolc(false);
  } else {
    std::string nm = prefix + "_done";
    decls.push_back({nm, VarSort::Bool});
    s.done = A.var(nm);
    binding.done_var = nm;
  }
  for (const auto& sc : p_.scalars) {
    std::string nm = prefix + "_" + sc.name;
    decls.push_back({nm, VarSort::Int});
    TermId v = A.var(nm);
    s.scalars.push_back(v);
    binding.scalar_vars.push_back(nm);
    if (sc.kind == ScalarKind::Index) {
      hyp.push_back(A.cmp(CmpOp::Ge, v, A.intc(0)));
    } else if (sc.sort == ElemSort::Char) {
      hyp.push_back(A.cmp(CmpOp::Ge, v, A.intc(0)));
      hyp.push_back(A.cmp(CmpOp::Le, v, A.intc(255)));
    }
  }
  return s;
}

TermId Encoder::expr(const Expr& e, const SymState& s, TermId bound_var) {
  switch (e.kind) {
    case Expr::Kind::Lit: return A.intc(e.lit);
    case Expr::Kind::ScalarRef: return s.scalars[e.id];
    case Expr::Kind::BoundRef: return bound_var;
    case Expr::Kind::Len: return A.seq_len(s.arrays[e.id]);
    case Expr::Kind::Add: return A.add(expr(*e.a, s, bound_var), expr(*e.b, s, bound_var));
    case Expr::Kind::Sub: return A.sub(expr(*e.a, s, bound_var), expr(*e.b, s, bound_var));
    case Expr::Kind::Elem:
      return A.seq_nth(s.arrays[e.id], expr(*e.a, s, bound_var));
  }
  return A.intc(0);
}

TermId Encoder::pred(const Cond& c, const SymState& s) {
  switch (c.kind) {
    case Cond::Kind::Lit: return A.boolc(c.b);
    case Cond::Kind::Cmp: return A.cmp(c.op, expr(*c.e1, s, -1), expr(*c.e2, s, -1));
    case Cond::Kind::Not: return A.lnot(pred(*c.c1, s));
    case Cond::Kind::And: return A.land(pred(*c.c1, s), pred(*c.c2, s));
    case Cond::Kind::Or: return A.lor(pred(*c.c1, s), pred(*c.c2, s));
    case Cond::Kind::Implies: return A.implies(pred(*c.c1, s), pred(*c.c2, s));
    case Cond::Kind::Iff: return A.eq(pred(*c.c1, s), pred(*c.c2, s));
    case Cond::Kind::AtDone: return s.done;
    case Cond::Kind::Forall: {
      TermId lo = expr(*c.e1, s, -1);
      TermId hi = expr(*c.e2, s, -1);
      TermId bv = A.bound();
      const Cond& body = *c.c1;
      TermId bt = A.cmp(body.op, expr(*body.e1, s, bv), expr(*body.e2, s, bv));
      return A.forall_range(lo, hi, bt);
    }
  }
  return A.boolc(false);
}

TermId Encoder::assumptions(const SymState& s) {
  std::vector<TermId> xs;
  for (const auto& a : p_.assumptions) xs.push_back(pred(*a, s));
  return A.conj(std::move(xs));
}

TermId Encoder::initial(const SymState& s) {
  std::vector<TermId> xs;
  xs.push_back(A.lnot(s.done));
  for (std::size_t k = 0; k < p_.scalars.size(); ++k)
    if (p_.init[k]) xs.push_back(A.eq(s.scalars[k], A.intc(*p_.init[k])));
  xs.push_back(assumptions(s));
  return A.conj(std::move(xs));
}

TermId Encoder::bad(const SymState& s) { return A.lnot(pred(*p_.spec, s)); }
TermId Encoder::guard(const SymState& s) { return pred(*p_.guard, s); }

void Encoder::run_stmts(const std::vector<StmtPtr>& stmts, const SymState& base,
                        std::vector<Path>& active, std::vector<Path>& finished) {
  for (const auto& st : stmts) {
    std::vector<Path> next;
    for (auto& path : active) {
      SymState view{base.done, path.scalars, base.arrays};
      switch (st->kind) {
        case Stmt::Kind::Assign: {
          Path np = path;
          np.scalars[st->target] = expr(*st->expr, view, -1);
          next.push_back(std::move(np));
          break;
        }
        case Stmt::Kind::If: {
          TermId c = pred(*st->cond, view);
          std::vector<Path> tb{Path{A.land(path.cond, c), path.scalars, false}};
          std::vector<Path> eb{Path{A.land(path.cond, A.lnot(c)), path.scalars, false}};
          run_stmts(st->then_stmts, base, tb, finished);
          run_stmts(st->else_stmts, base, eb, finished);
          for (auto& x : tb) next.push_back(std::move(x));
          for (auto& x : eb) next.push_back(std::move(x));
          break;
        }
        case Stmt::Kind::Return: {
          Path np = path;
          if (st->expr && p_.ret_scalar >= 0)
            np.scalars[p_.ret_scalar] = expr(*st->expr, view, -1);
          np.returned = true;
          finished.push_back(std::move(np));
          break;
        }
      }
    }
    if (st->kind != Stmt::Kind::Return) {
      active = std::move(next);
    } else {
      active.clear();
    }
  }
}

SymState Encoder::step(const SymState& s) {
  std::vector<Path> active{Path{A.boolc(true), s.scalars, false}};
  std::vector<Path> finished;
  run_stmts(p_.body, s, active, finished);
  // Fall-through paths stay in the loop; returned paths are done.
  std::vector<Path> all;
  for (auto& x : finished) all.push_back(std::move(x));
  for (auto& x : active) all.push_back(std::move(x));

  SymState iter;
  iter.arrays = s.arrays;
  if (all.empty()) {
    iter = s;
  } else {
    iter.done = all.back().returned ? A.boolc(true) : A.boolc(false);
    iter.scalars = all.back().scalars;
    for (std::size_t i = all.size() - 1; i-- > 0;) {
      const Path& path = all[i];
      iter.done = A.ite(path.cond, A.boolc(path.returned), iter.done);
      for (std::size_t k = 0; k < iter.scalars.size(); ++k)
        iter.scalars[k] = A.ite(path.cond, path.scalars[k], iter.scalars[k]);
    }
  }

  TermId stutter = A.lor(s.done, bad(s));
  TermId g = guard(s);
  SymState out;
  out.arrays = s.arrays;
  out.done = A.ite(stutter, s.done, A.ite(g, iter.done, A.boolc(true)));
  out.scalars.resize(s.scalars.size());
  for (std::size_t k = 0; k < s.scalars.size(); ++k)
    out.scalars[k] = A.ite(stutter, s.scalars[k], A.ite(g, iter.scalars[k], s.scalars[k]));
  return out;
}

TermId Encoder::index_expr(int group, const SIndexExpr& e, const SymState& s) {
  switch (e.kind) {
    case SIndexExpr::Kind::Const: return A.intc(e.c);
    case SIndexExpr::Kind::Var: return s.scalars[e.var];
    case SIndexExpr::Kind::LenMinusConst: return A.sub(group_len(group, s), A.intc(e.c));
    case SIndexExpr::Kind::LenMinusVar: return A.sub(group_len(group, s), s.scalars[e.var]);
  }
  return A.intc(0);
}

TermId Encoder::scond(const SCond& c, const SymState& s) {
  if (c.kind == SCond::Kind::And) return A.land(scond(*c.c1, s), scond(*c.c2, s));
  if (c.kind == SCond::Kind::Or) return A.lor(scond(*c.c1, s), scond(*c.c2, s));
  const SAtom& a = c.atom;
  auto side = [&](SAtom::Side kind, const SElemRef& el, int var, Value cst) -> TermId {
    switch (kind) {
      case SAtom::Side::Elem:
        return A.seq_nth(s.arrays[el.array],
                         index_expr(p_.arrays[el.array].group, el.index, s));
      case SAtom::Side::Var: return s.scalars[var];
      case SAtom::Side::Const: return A.intc(cst);
    }
    return A.intc(0);
  };
  TermId l = side(a.lhs_kind, a.lhs_elem, a.lhs_var, 0);
  TermId r = side(a.rhs_kind, a.rhs_elem, a.rhs_var, a.rhs_const);
  return A.cmp(a.op, l, r);
}

TermId Encoder::removal_pos(const Squeezer& q, bool branch, const SymState& s) {
  return index_expr(q.group, (branch ? q.then_branch : q.else_branch).pos, s);
}

SymState Encoder::apply(const Squeezer& q, const SymState& s, std::optional<bool> forced) {
  TermId c = forced ? A.boolc(*forced) : scond(*q.cond, s);
  auto branch_state = [&](const SBranch& br) {
    SymState out;
    out.done = s.done;
    TermId pos = index_expr(q.group, br.pos, s);
    out.arrays = s.arrays;
    for (int ai : p_.group_members(q.group))
      out.arrays[ai] = A.seq_remove(s.arrays[ai], pos);
    out.scalars.resize(s.scalars.size());
    for (std::size_t k = 0; k < s.scalars.size(); ++k) {
      if (p_.scalars[k].kind == ScalarKind::Index) {
        out.scalars[k] = A.ite(A.cmp(CmpOp::Gt, s.scalars[k], pos),
                               A.sub(s.scalars[k], A.intc(1)), s.scalars[k]);
      } else {
        out.scalars[k] = s.scalars[k];
      }
    }
    for (const auto& as : br.assigns) {
      TermId e = A.seq_nth(s.arrays[as.elem.array],
                           index_expr(p_.arrays[as.elem.array].group, as.elem.index, s));
      TermId v = s.scalars[as.src];
      out.scalars[as.target] = as.add ? A.add(v, e) : A.sub(v, e);
    }
    return out;
  };
  SymState t = branch_state(q.then_branch);
  SymState e = branch_state(q.else_branch);
  TermId base = A.cmp(CmpOp::Le, rank(s), A.intc(static_cast<Value>(q.base_bound)));
  SymState out;
  out.done = s.done;
  out.arrays.resize(s.arrays.size());
  for (std::size_t i = 0; i < s.arrays.size(); ++i)
    out.arrays[i] = A.ite(base, s.arrays[i], A.ite(c, t.arrays[i], e.arrays[i]));
  out.scalars.resize(s.scalars.size());
  for (std::size_t k = 0; k < s.scalars.size(); ++k)
    out.scalars[k] = A.ite(base, s.scalars[k], A.ite(c, t.scalars[k], e.scalars[k]));
  return out;
}

TermId Encoder::rank(const SymState& s) {
  TermId r = A.intc(0);
  for (TermId a : s.arrays) r = A.add(r, A.seq_len(a));
  return r;
}

TermId Encoder::group_len(int group, const SymState& s) {
  auto members = p_.group_members(group);
  return members.empty() ? A.intc(0) : A.seq_len(s.arrays[members[0]]);
}

TermId Encoder::state_eq(const SymState& a, const SymState& b) {
  std::vector<TermId> xs;
  xs.push_back(A.eq(a.done, b.done));
  for (std::size_t k = 0; k < a.scalars.size(); ++k) xs.push_back(A.eq(a.scalars[k], b.scalars[k]));
  for (std::size_t i = 0; i < a.arrays.size(); ++i)
    if (a.arrays[i] != b.arrays[i]) xs.push_back(A.eq(a.arrays[i], b.arrays[i]));
  return A.conj(std::move(xs));
}

TermId Encoder::closure(const SymState& s, const std::string& prefix0, std::vector<Decl>& decls,
                        std::vector<TermId>& hyp, SymBinding& binding0) {
  SymState s0 = declare_state(prefix0, /*fixed_loop=*/true, &s, decls, hyp, binding0);
  SymState s1 = step(s0);
  SymState s2 = step(s1);
  TermId from_init = A.land(initial(s0), state_eq(s1, s));
  TermId two_step = A.conj({assumptions(s0), A.lnot(s1.done), assumptions(s1), state_eq(s2, s)});
  return A.disj({initial(s), from_init, two_step});
}

TermId Encoder::length_bound(const SymState& s, int bound) {
  std::vector<TermId> xs;
  for (int g = 0; g < p_.num_groups(); ++g)
    xs.push_back(A.cmp(CmpOp::Le, group_len(g, s), A.intc(bound)));
  return A.conj(std::move(xs));
}

TermId Encoder::domain_restrict(const SymState& s, int len_bound,
                                const std::vector<Value>& elem_domain,
                                const std::vector<Value>& data_domain) {
  std::vector<TermId> xs;
  auto member = [&](TermId t, const std::vector<Value>& dom) {
    std::vector<TermId> alts;
    for (Value v : dom) alts.push_back(A.eq(t, A.intc(v)));
    return A.disj(std::move(alts));
  };
  for (std::size_t i = 0; i < s.arrays.size(); ++i) {
    TermId len = A.seq_len(s.arrays[i]);
    for (int pos = 0; pos < len_bound; ++pos) {
      TermId in_range = A.cmp(CmpOp::Lt, A.intc(pos), len);
      xs.push_back(A.implies(in_range, member(A.seq_nth(s.arrays[i], A.intc(pos)), elem_domain)));
    }
  }
  for (std::size_t k = 0; k < p_.scalars.size(); ++k)
    if (p_.scalars[k].kind == ScalarKind::Data) xs.push_back(member(s.scalars[k], data_domain));
  return A.conj(std::move(xs));
}

TermId Encoder::index_range(const SymState& s, int slack) {
  std::vector<TermId> xs;
  for (std::size_t k = 0; k < p_.scalars.size(); ++k) {
    if (p_.scalars[k].kind != ScalarKind::Index) continue;
    int g = p_.index_var_group(static_cast<int>(k));
    TermId len = group_len(g < 0 ? 0 : g, s);
    xs.push_back(A.cmp(CmpOp::Ge, s.scalars[k], A.intc(0)));
    xs.push_back(A.cmp(CmpOp::Le, s.scalars[k], A.add(len, A.intc(slack))));
  }
  return A.conj(std::move(xs));
}

}  // namespace sqz
