#pragma once

// State-to-state reduction functions ("squeezers"): a single conditional
// whose branches each delete one element (at one position) from every array
// of a lockstep group and optionally rewrite data variables. Index variables
// larger than the removal position are decremented automatically. On states
// of rank <= base_bound the function is the identity.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqz/ir.hpp"

namespace sqz {

// Index expressions of the reduction language, relative to one group whose
// common length is written n.
struct SIndexExpr {
  enum class Kind { Const, Var, LenMinusConst, LenMinusVar };
  Kind kind = Kind::Const;
  Value c = 0;   // Const / LenMinusConst
  int var = -1;  // Var / LenMinusVar: scalar index (Index kind)

  static SIndexExpr constant(Value v) { return {Kind::Const, v, -1}; }
  static SIndexExpr var_of(int scalar) { return {Kind::Var, 0, scalar}; }
  static SIndexExpr len_minus(Value v) { return {Kind::LenMinusConst, v, -1}; }
  static SIndexExpr len_minus_var(int scalar) { return {Kind::LenMinusVar, 0, scalar}; }
  bool operator==(const SIndexExpr&) const = default;
};

struct SElemRef {
  int array = -1;
  SIndexExpr index;
  bool operator==(const SElemRef&) const = default;
};

// One comparison: element vs element/data-variable/constant, or index var vs
// index var/constant.
struct SAtom {
  enum class Side { Elem, Var, Const };
  CmpOp op = CmpOp::Eq;
  Side lhs_kind = Side::Elem;
  Side rhs_kind = Side::Const;
  SElemRef lhs_elem, rhs_elem;
  int lhs_var = -1, rhs_var = -1;  // rhs_var: index var, or a data var when lhs is an element
  Value rhs_const = 0;
  bool operator==(const SAtom&) const = default;
};

struct SCond;
using SCondPtr = std::shared_ptr<const SCond>;

struct SCond {
  enum class Kind { Atom, And, Or };
  Kind kind = Kind::Atom;
  SAtom atom;
  SCondPtr c1, c2;

  static SCondPtr atom_of(SAtom a);
  static SCondPtr conj(SCondPtr a, SCondPtr b);
  static SCondPtr disj(SCondPtr a, SCondPtr b);
};

int cond_depth(const SCond& c);
bool cond_equal(const SCond& a, const SCond& b);

// target := src (+|-) element, all evaluated over the pre-reduction state.
struct SAssign {
  int target = -1;  // data var
  int src = -1;     // data var
  bool add = true;  // false: subtract
  SElemRef elem;
  bool operator==(const SAssign&) const = default;
};

struct SBranch {
  SIndexExpr pos;
  std::vector<SAssign> assigns;
  bool operator==(const SBranch&) const = default;
};

struct Squeezer {
  int group = 0;
  SCondPtr cond;
  SBranch then_branch, else_branch;
  std::size_t base_bound = 0;  // identity on states with rank <= base_bound
};

struct WellFormed {
  bool ok = true;
  std::string diagnostic;
};

// Deletes the element at pos from every array of the group; index variables
// greater than pos drop by one, everything else is untouched.
State remove_at(const Program& p, State s, int group, Value pos);

Value eval_index_expr(const Program& p, const State& s, int group, const SIndexExpr& e);
Value eval_elem(const Program& p, const State& s, const SElemRef& ref);
bool eval_scond(const Program& p, const State& s, const SCond& c);

// Applies the squeezer. Identity on rank <= base_bound; otherwise evaluates
// the condition, the branch position and every assignment right-hand side on
// the incoming state, removes, then writes the assignment values.
// When forced_branch is given the condition is not consulted.
State apply(const Squeezer& q, const Program& p, const State& s,
            std::optional<bool> forced_branch = std::nullopt);

// Static shape check. With g arrays in the group, non-base states have
// per-array length at least m = base_bound / g + 1; constant indices must
// satisfy c < m, length-relative constants 1 <= c <= m. Variable-based
// indices are admitted here and policed dynamically plus by the bounds
// obligations.
WellFormed well_formed(const Squeezer& q, const Program& p);

std::size_t min_nonbase_len(const Squeezer& q, const Program& p);

}  // namespace sqz
