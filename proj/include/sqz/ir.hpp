#pragma once

// Single-loop array program IR and its transition-system semantics.
//
// A program is one loop with straight-line body (nested conditionals and
// early returns allowed), a safety predicate, and declared assumptions.
// States are (location, array contents, scalar values). The transition
// relation is total and deterministic: one step is one full loop iteration
// (or the exit step); terminal and unsafe states repeat forever, so every
// unsafe state has only unsafe successors.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqz {

using Value = std::int64_t;

enum class ElemSort { Int, Char };
enum class ScalarKind { Index, Data };
enum class Loc { Loop, Done };

struct Scalar {
  std::string name;
  ScalarKind kind = ScalarKind::Data;
  ElemSort sort = ElemSort::Int;  // meaningful for Data vars; Index vars are naturals
};

struct ArrayDecl {
  std::string name;
  ElemSort sort = ElemSort::Int;
  int group = 0;  // arrays in one group always have equal length
};

struct OutOfBounds : std::runtime_error {
  OutOfBounds(std::string array, Value index, std::size_t len)
      : std::runtime_error("out-of-bounds read: " + array + "[" + std::to_string(index) +
                           "], length " + std::to_string(len)),
        array_name(std::move(array)), index(index), length(len) {}
  std::string array_name;
  Value index = 0;
  std::size_t length = 0;
};

enum class CmpOp { Eq, Ne, Le, Lt, Ge, Gt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Lit, ScalarRef, BoundRef, Len, Add, Sub, Elem };
  Kind kind = Kind::Lit;
  Value lit = 0;  // Lit
  int id = -1;    // ScalarRef: scalar index; Len/Elem: array index
  ExprPtr a, b;   // Add/Sub operands; Elem index in a

  static ExprPtr lit_of(Value v);
  static ExprPtr scalar(int id);
  static ExprPtr bound();  // the (single) bound variable of an enclosing forall
  static ExprPtr len(int array);
  static ExprPtr add(ExprPtr x, ExprPtr y);
  static ExprPtr sub(ExprPtr x, ExprPtr y);
  static ExprPtr elem(int array, ExprPtr index);
};

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

// Boolean state predicates: comparisons over scalars, elements and lengths,
// closed under !, &&, ||, ->, <->, plus `done` (location test) and bounded
// universal quantification  forall j in [lo, hi): <comparison>.
struct Cond {
  enum class Kind { Lit, Cmp, Not, And, Or, Implies, Iff, Forall, AtDone };
  Kind kind = Kind::Lit;
  bool b = true;           // Lit
  CmpOp op = CmpOp::Eq;    // Cmp
  ExprPtr e1, e2;          // Cmp; Forall lo/hi
  CondPtr c1, c2;          // children; Forall body in c1

  static CondPtr lit_of(bool v);
  static CondPtr cmp(CmpOp op, ExprPtr a, ExprPtr b);
  static CondPtr logical_not(CondPtr c);
  static CondPtr logical_and(CondPtr a, CondPtr b);
  static CondPtr logical_or(CondPtr a, CondPtr b);
  static CondPtr implies(CondPtr a, CondPtr b);
  static CondPtr iff(CondPtr a, CondPtr b);
  static CondPtr forall(ExprPtr lo, ExprPtr hi, CondPtr body);
  static CondPtr at_done();
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  enum class Kind { Assign, If, Return };
  Kind kind = Kind::Assign;
  int target = -1;  // Assign
  ExprPtr expr;     // Assign rhs; Return value (may be null)
  CondPtr cond;     // If
  std::vector<StmtPtr> then_stmts, else_stmts;

  static StmtPtr assign(int target, ExprPtr e);
  static StmtPtr if_stmt(CondPtr c, std::vector<StmtPtr> t, std::vector<StmtPtr> e);
  static StmtPtr ret(ExprPtr value);  // value may be null
};

struct Program {
  std::string name;
  std::vector<ArrayDecl> arrays;
  std::vector<Scalar> scalars;
  // Initial-state constraint per scalar: fixed constant or free input.
  std::vector<std::optional<Value>> init;
  CondPtr guard;
  std::vector<StmtPtr> body;
  CondPtr spec;                      // the safety predicate
  std::vector<CondPtr> assumptions;  // declared reachable-state ranges
  std::vector<Value> constants;      // literals occurring in the program (sorted, unique)
  int ret_scalar = -1;               // data var receiving `return <expr>` values

  int num_groups() const;
  std::vector<int> group_members(int group) const;
  int array_index(const std::string& n) const;   // -1 if absent
  int scalar_index(const std::string& n) const;  // -1 if absent
  // Group an index variable walks over, inferred from element reads; -1 if none.
  int index_var_group(int scalar) const;
  void finalize();  // recompute constants, ret_scalar, index-var matching

 private:
  std::vector<int> index_group_;  // per scalar, filled by finalize()
};

struct State {
  Loc loc = Loc::Loop;
  std::vector<std::vector<Value>> arrays;  // by array index
  std::vector<Value> scalars;              // by scalar index

  bool operator==(const State&) const = default;
};

std::size_t state_hash(const State& s);

struct StateHash {
  std::size_t operator()(const State& s) const { return state_hash(s); }
};

std::string show_state(const Program& p, const State& s);

// Interpreter. All functions are pure; OutOfBounds propagates from element
// reads with an index outside [0, len).
Value eval_expr(const Program& p, const State& s, const Expr& e);
bool holds(const Program& p, const State& s, const Cond& c);
bool is_initial(const Program& p, const State& s);
State step(const Program& p, State s);
State step_n(const Program& p, State s, int n);
std::size_t rank(const State& s);

// Group lengths must agree within every group; State constructors in the
// tool maintain this, external callers can check.
bool lengths_consistent(const Program& p, const State& s);

}  // namespace sqz
