#pragma once

// External SMT-LIB2 solver over a child process's stdin/stdout. One process
// per instance; queries are separated by (reset). Timeouts kill the process
// and report Unknown; the next query respawns.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqz/ir.hpp"

namespace sqz {

struct ModelValue {
  enum class Kind { Int, Bool, Seq } kind = Kind::Int;
  Value i = 0;
  bool b = false;
  std::vector<Value> seq;
};

using Model = std::map<std::string, ModelValue>;

enum class SolverStatus { Sat, Unsat, Unknown };

class SolverProcess {
 public:
  explicit SolverProcess(std::string command);
  ~SolverProcess();
  SolverProcess(const SolverProcess&) = delete;
  SolverProcess& operator=(const SolverProcess&) = delete;

  // Sends a full script (declarations+asserts+check-sat) and reads the
  // verdict; on sat, fetches and parses the model. A fresh (reset) precedes
  // every script.
  SolverStatus check(const std::string& script, int timeout_ms, Model* model_out);

  const std::string& command() const { return cmd_; }
  bool alive() const { return pid_ > 0; }

 private:
  bool spawn();
  void kill_child();
  bool write_all(const std::string& s);
  std::optional<std::string> read_line(int deadline_ms);
  std::optional<std::string> read_sexpr(int deadline_ms);

  std::string cmd_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buf_;
  bool first_query_ = true;
};

// Parses a (get-model) response into name -> value.
Model parse_model(const std::string& sexpr);

// Locates a usable solver command: $SQZ_SOLVER_CMD if set, `z3 -in` when z3
// is on PATH, else the bundled WASM wrapper when its dependencies are
// installed. Empty when none is available.
std::string default_solver_command();

}  // namespace sqz
