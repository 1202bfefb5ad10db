#pragma once

// Symbolic encoding of program semantics and squeezer application over the
// term language. Transition steps are encoded functionally (per-component
// ite over the body's paths), so step chains need no auxiliary relations.

#include <optional>
#include <vector>

#include "sqz/ir.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/term.hpp"

namespace sqz {

struct SymState {
  TermId done = -1;               // Bool
  std::vector<TermId> scalars;    // Int
  std::vector<TermId> arrays;     // Seq Int
};

// Names backing a symbolic state, for model extraction.
struct SymBinding {
  std::string label;
  std::string done_var;                  // empty: location fixed to Loop
  std::vector<std::string> scalar_vars;
  std::vector<std::string> array_vars;
};

class Encoder {
 public:
  Encoder(TermArena& arena, const Program& p) : A(arena), p_(p) {}

  // Declares done/scalar variables (arrays shared_from if given, else fresh)
  // and returns the state plus its binding. Implicit constraints (group
  // length equality, index vars >= 0, char ranges on data vars) go to `hyp`.
  SymState declare_state(const std::string& prefix, bool fixed_loop,
                         const SymState* share_arrays_of, std::vector<Decl>& decls,
                         std::vector<TermId>& hyp, SymBinding& binding);

  TermId pred(const Cond& c, const SymState& s);
  TermId assumptions(const SymState& s);
  TermId initial(const SymState& s);
  TermId bad(const SymState& s);
  TermId guard(const SymState& s);
  SymState step(const SymState& s);

  TermId scond(const SCond& c, const SymState& s);
  TermId index_expr(int group, const SIndexExpr& e, const SymState& s);
  SymState apply(const Squeezer& q, const SymState& s, std::optional<bool> forced);
  TermId removal_pos(const Squeezer& q, bool branch, const SymState& s);

  TermId rank(const SymState& s);
  TermId state_eq(const SymState& a, const SymState& b);
  TermId group_len(int group, const SymState& s);

  // Reachability closure: s is initial, or one step from an initial state,
  // or two steps from an assumption-satisfying loop state through an
  // assumption-satisfying loop state. Declares the upstream state.
  TermId closure(const SymState& s, const std::string& prefix0, std::vector<Decl>& decls,
                 std::vector<TermId>& hyp, SymBinding& binding0);

  TermId length_bound(const SymState& s, int bound);
  // Restricts elements and data variables to finite domains (agreement mode);
  // needs a length bound to stay quantifier-free.
  TermId domain_restrict(const SymState& s, int len_bound, const std::vector<Value>& elem_domain,
                         const std::vector<Value>& data_domain);
  TermId index_range(const SymState& s, int slack);  // 0 <= v <= len(group)+slack

 private:
  TermId expr(const Expr& e, const SymState& s, TermId bound_var);
  struct Path {
    TermId cond;
    std::vector<TermId> scalars;
    bool returned = false;
  };
  void run_stmts(const std::vector<StmtPtr>& stmts, const SymState& base,
                 std::vector<Path>& active, std::vector<Path>& finished);

  TermArena& A;
  const Program& p_;
};

}  // namespace sqz
