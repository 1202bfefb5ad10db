#pragma once

// Small term language for the logical obligations: integers, booleans and
// integer sequences, with a bounded-range universal quantifier and a
// sequence-element-removal primitive that prints as extract/concat.

#include <cstdint>
#include <string>
#include <vector>

#include "sqz/ir.hpp"

namespace sqz {

using TermId = int;

enum class TOp {
  IntConst, BoolConst, Var, Bound,
  Add, Sub,
  Cmp,           // op field holds the comparison
  Eq,            // any-sort equality
  And, Or, Not, Implies, Ite,
  SeqLen, SeqNth, SeqRemove,
  Forall,        // args: lo, hi, body; binds the single Bound variable
};

enum class VarSort { Int, Bool, Seq };

struct TermNode {
  TOp op = TOp::IntConst;
  Value k = 0;           // IntConst value / BoolConst (0/1)
  CmpOp cmp = CmpOp::Eq; // Cmp
  std::string name;      // Var
  std::vector<TermId> args;
};

struct Decl {
  std::string name;
  VarSort sort = VarSort::Int;
};

class TermArena {
 public:
  TermId intc(Value v);
  TermId boolc(bool v);
  TermId var(std::string name);
  TermId bound();
  TermId add(TermId a, TermId b);
  TermId sub(TermId a, TermId b);
  TermId cmp(CmpOp op, TermId a, TermId b);
  TermId eq(TermId a, TermId b);
  TermId conj(std::vector<TermId> xs);  // true for empty
  TermId disj(std::vector<TermId> xs);  // false for empty
  TermId land(TermId a, TermId b) { return conj({a, b}); }
  TermId lor(TermId a, TermId b) { return disj({a, b}); }
  TermId lnot(TermId a);
  TermId implies(TermId a, TermId b);
  TermId ite(TermId c, TermId a, TermId b);
  TermId seq_len(TermId s);
  TermId seq_nth(TermId s, TermId i);
  TermId seq_remove(TermId s, TermId pos);
  TermId forall_range(TermId lo, TermId hi, TermId body);

  const TermNode& node(TermId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  bool is_true(TermId id) const;
  bool is_false(TermId id) const;

  std::string print(TermId id) const;
  bool has_quantifier(TermId id) const;

 private:
  TermId push(TermNode n);
  std::vector<TermNode> nodes_;
};

}  // namespace sqz
