#include "sqz/term.hpp"

#include <sstream>

namespace sqz {

TermId TermArena::push(TermNode n) {
  nodes_.push_back(std::move(n));
  return static_cast<TermId>(nodes_.size() - 1);
}

TermId TermArena::intc(Value v) { return push({TOp::IntConst, v, CmpOp::Eq, {}, {}}); }
TermId TermArena::boolc(bool v) { return push({TOp::BoolConst, v ? 1 : 0, CmpOp::Eq, {}, {}}); }
TermId TermArena::var(std::string name) {
  return push({TOp::Var, 0, CmpOp::Eq, std::move(name), {}});
}
TermId TermArena::bound() { return push({TOp::Bound, 0, CmpOp::Eq, {}, {}}); }
TermId TermArena::add(TermId a, TermId b) { return push({TOp::Add, 0, CmpOp::Eq, {}, {a, b}}); }
TermId TermArena::sub(TermId a, TermId b) { return push({TOp::Sub, 0, CmpOp::Eq, {}, {a, b}}); }
TermId TermArena::cmp(CmpOp op, TermId a, TermId b) {
  return push({TOp::Cmp, 0, op, {}, {a, b}});
}
TermId TermArena::eq(TermId a, TermId b) { return push({TOp::Eq, 0, CmpOp::Eq, {}, {a, b}}); }

bool TermArena::is_true(TermId id) const {
  return node(id).op == TOp::BoolConst && node(id).k == 1;
}
bool TermArena::is_false(TermId id) const {
  return node(id).op == TOp::BoolConst && node(id).k == 0;
}

TermId TermArena::conj(std::vector<TermId> xs) {
  std::vector<TermId> kept;
  for (TermId x : xs) {
    if (is_true(x)) continue;
    if (is_false(x)) return boolc(false);
    kept.push_back(x);
  }
  if (kept.empty()) return boolc(true);
  if (kept.size() == 1) return kept[0];
  return push({TOp::And, 0, CmpOp::Eq, {}, std::move(kept)});
}

TermId TermArena::disj(std::vector<TermId> xs) {
  std::vector<TermId> kept;
  for (TermId x : xs) {
    if (is_false(x)) continue;
    if (is_true(x)) return boolc(true);
    kept.push_back(x);
  }
  if (kept.empty()) return boolc(false);
  if (kept.size() == 1) return kept[0];
  return push({TOp::Or, 0, CmpOp::Eq, {}, std::move(kept)});
}

TermId TermArena::lnot(TermId a) {
  if (is_true(a)) return boolc(false);
  if (is_false(a)) return boolc(true);
  return push({TOp::Not, 0, CmpOp::Eq, {}, {a}});
}

TermId TermArena::implies(TermId a, TermId b) {
  if (is_true(a)) return b;
  if (is_false(a)) return boolc(true);
  return push({TOp::Implies, 0, CmpOp::Eq, {}, {a, b}});
}

TermId TermArena::ite(TermId c, TermId a, TermId b) {
  if (is_true(c)) return a;
  if (is_false(c)) return b;
  if (a == b) return a;
  return push({TOp::Ite, 0, CmpOp::Eq, {}, {c, a, b}});
}

TermId TermArena::seq_len(TermId s) { return push({TOp::SeqLen, 0, CmpOp::Eq, {}, {s}}); }
TermId TermArena::seq_nth(TermId s, TermId i) {
  return push({TOp::SeqNth, 0, CmpOp::Eq, {}, {s, i}});
}
TermId TermArena::seq_remove(TermId s, TermId pos) {
  return push({TOp::SeqRemove, 0, CmpOp::Eq, {}, {s, pos}});
}
TermId TermArena::forall_range(TermId lo, TermId hi, TermId body) {
  return push({TOp::Forall, 0, CmpOp::Eq, {}, {lo, hi, body}});
}

namespace {

const char* cmp_smt(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "distinct";
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

}  // namespace

std::string TermArena::print(TermId id) const {
  const TermNode& n = node(id);
  std::ostringstream os;
  auto args = [&](const char* head) {
    os << "(" << head;
    for (TermId a : n.args) os << " " << print(a);
    os << ")";
  };
  switch (n.op) {
    case TOp::IntConst:
      if (n.k < 0) os << "(- " << -n.k << ")";
      else os << n.k;
      break;
    case TOp::BoolConst: os << (n.k ? "true" : "false"); break;
    case TOp::Var: os << n.name; break;
    case TOp::Bound: os << "|!j|"; break;
    case TOp::Add: args("+"); break;
    case TOp::Sub: args("-"); break;
    case TOp::Cmp: args(cmp_smt(n.cmp)); break;
    case TOp::Eq: args("="); break;
    case TOp::And: args("and"); break;
    case TOp::Or: args("or"); break;
    case TOp::Not: args("not"); break;
    case TOp::Implies: args("=>"); break;
    case TOp::Ite: args("ite"); break;
    case TOp::SeqLen: os << "(seq.len " << print(n.args[0]) << ")"; break;
    case TOp::SeqNth: os << "(seq.nth " << print(n.args[0]) << " " << print(n.args[1]) << ")"; break;
    case TOp::SeqRemove: {
      std::string s = print(n.args[0]);
      std::string p = print(n.args[1]);
      os << "(seq.++ (seq.extract " << s << " 0 " << p << ") (seq.extract " << s << " (+ " << p
         << " 1) (- (seq.len " << s << ") (+ " << p << " 1))))";
      break;
    }
    case TOp::Forall:
      os << "(forall ((|!j| Int)) (=> (and (<= " << print(n.args[0]) << " |!j|) (< |!j| "
         << print(n.args[1]) << ")) " << print(n.args[2]) << "))";
      break;
  }
  return os.str();
}

bool TermArena::has_quantifier(TermId id) const {
  const TermNode& n = node(id);
  if (n.op == TOp::Forall) return true;
  for (TermId a : n.args)
    if (has_quantifier(a)) return true;
  return false;
}

}  // namespace sqz
