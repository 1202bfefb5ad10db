#pragma once

// Textual formats: the line-oriented program IR and the one-line squeezer
// syntax (`if (cond) remove(arr,pos); var = var op arr[ix]; ... else ...`).
// Within both, `n` denotes the common length of the program's first array
// group unless a scalar of that name exists.

#include <stdexcept>
#include <string>

#include "sqz/ir.hpp"
#include "sqz/squeezer.hpp"

namespace sqz {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ")"),
        line(line), col(col) {}
  int line = 0, col = 0;
};

Program parse_program(const std::string& text);

// The squeezer's base bound is not part of the text; callers set it from
// their configuration (default 0 here).
Squeezer parse_squeezer(const Program& p, const std::string& text);
std::string render_squeezer(const Program& p, const Squeezer& q);

// Condition fragments, reused for predicate pools.
SCondPtr parse_squeezer_cond(const Program& p, const std::string& text);
std::string render_squeezer_cond(const Program& p, const SCond& c);

std::string render_index_expr(const Program& p, const SIndexExpr& e);

}  // namespace sqz
