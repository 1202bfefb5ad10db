#include "sqz/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>

namespace sqz {

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

SolverProcess::SolverProcess(std::string command) : cmd_(std::move(command)) {}

SolverProcess::~SolverProcess() { kill_child(); }

bool SolverProcess::spawn() {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) return false;
  pid_ = fork();
  if (pid_ < 0) return false;
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", cmd_.c_str(), (char*)nullptr);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buf_.clear();
  return true;
}

void SolverProcess::kill_child() {
  if (pid_ > 0) {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
  }
  pid_ = -1;
  to_child_ = -1;
  from_child_ = -1;
  buf_.clear();
}

bool SolverProcess::write_all(const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    ssize_t w = write(to_child_, s.data() + off, s.size() - off);
    if (w <= 0) return false;
    off += static_cast<std::size_t>(w);
  }
  return true;
}

std::optional<std::string> SolverProcess::read_line(int deadline_ms) {
  std::int64_t deadline = now_ms() + deadline_ms;
  for (;;) {
    auto nl = buf_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buf_.substr(0, nl);
      buf_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      return line;
    }
    std::int64_t remain = deadline - now_ms();
    if (remain <= 0) return std::nullopt;
    struct pollfd pfd{from_child_, POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(remain));
    if (pr <= 0) return std::nullopt;
    char chunk[4096];
    ssize_t r = read(from_child_, chunk, sizeof chunk);
    if (r <= 0) return std::nullopt;
    buf_.append(chunk, static_cast<std::size_t>(r));
  }
}

std::optional<std::string> SolverProcess::read_sexpr(int deadline_ms) {
  std::int64_t deadline = now_ms() + deadline_ms;
  std::string out;
  int depth = 0;
  bool started = false;
  for (;;) {
    for (std::size_t i = 0; i < buf_.size(); ++i) {
      char c = buf_[i];
      if (c == '(') {
        ++depth;
        started = true;
      } else if (c == ')') {
        --depth;
      }
      if (started && depth == 0) {
        out += buf_.substr(0, i + 1);
        buf_.erase(0, i + 1);
        return out;
      }
    }
    out += buf_;
    buf_.clear();
    std::int64_t remain = deadline - now_ms();
    if (remain <= 0) return std::nullopt;
    struct pollfd pfd{from_child_, POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(remain));
    if (pr <= 0) return std::nullopt;
    char chunk[4096];
    ssize_t r = read(from_child_, chunk, sizeof chunk);
    if (r <= 0) return std::nullopt;
    buf_.append(chunk, static_cast<std::size_t>(r));
  }
}

SolverStatus SolverProcess::check(const std::string& script, int timeout_ms, Model* model_out) {
  if (pid_ <= 0 && !spawn()) return SolverStatus::Unknown;
  std::string payload;
  if (first_query_) {
    first_query_ = false;
  } else {
    payload += "(reset)\n";
  }
  payload += script;
  if (payload.empty() || payload.back() != '\n') payload += '\n';
  if (!write_all(payload)) {
    kill_child();
    return SolverStatus::Unknown;
  }
  std::int64_t deadline = now_ms() + timeout_ms;
  for (;;) {
    auto line = read_line(static_cast<int>(deadline - now_ms()));
    if (!line) {
      kill_child();
      return SolverStatus::Unknown;
    }
    if (*line == "sat") {
      if (model_out) {
        if (!write_all("(get-model)\n")) {
          kill_child();
          return SolverStatus::Sat;
        }
        auto m = read_sexpr(static_cast<int>(std::max<std::int64_t>(deadline - now_ms(), 2000)));
        if (m) *model_out = parse_model(*m);
        else kill_child();
      }
      return SolverStatus::Sat;
    }
    if (*line == "unsat") return SolverStatus::Unsat;
    if (*line == "unknown" || *line == "timeout") return SolverStatus::Unknown;
    if (line->rfind("(error", 0) == 0) {
      // Tolerate benign errors (e.g. unsupported option echoes); give up on
      // this query only.
      continue;
    }
    // Unexpected chatter; keep reading until the deadline.
  }
}

// ---------------------------------------------------------------------------
// Model parsing.

namespace {

struct Sx {
  std::string atom;
  std::vector<Sx> kids;
  bool is_atom() const { return kids.empty() && !atom.empty(); }
};

struct SxParser {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  Sx parse() {
    skip_ws();
    Sx node;
    if (i >= s.size()) return node;
    if (s[i] == '(') {
      ++i;
      for (;;) {
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == ')') {
          ++i;
          break;
        }
        node.kids.push_back(parse());
      }
      return node;
    }
    if (s[i] == '|') {
      std::size_t end = s.find('|', i + 1);
      node.atom = s.substr(i, end == std::string::npos ? std::string::npos : end - i + 1);
      i = end == std::string::npos ? s.size() : end + 1;
      return node;
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')')
      ++i;
    node.atom = s.substr(start, i - start);
    return node;
  }
};

std::optional<Value> eval_int(const Sx& x) {
  if (x.is_atom()) {
    try {
      return std::stoll(x.atom);
    } catch (...) {
      return std::nullopt;
    }
  }
  if (!x.kids.empty() && x.kids[0].atom == "-" && x.kids.size() == 2) {
    auto v = eval_int(x.kids[1]);
    return v ? std::optional<Value>(-*v) : std::nullopt;
  }
  if (!x.kids.empty() && x.kids[0].atom == "+") {
    Value acc = 0;
    for (std::size_t k = 1; k < x.kids.size(); ++k) {
      auto v = eval_int(x.kids[k]);
      if (!v) return std::nullopt;
      acc += *v;
    }
    return acc;
  }
  return std::nullopt;
}

bool eval_seq(const Sx& x, std::vector<Value>& out) {
  if (!x.kids.empty() && x.kids[0].atom == "seq.unit" && x.kids.size() == 2) {
    auto v = eval_int(x.kids[1]);
    if (!v) return false;
    out.push_back(*v);
    return true;
  }
  if (!x.kids.empty() && x.kids[0].atom == "seq.++") {
    for (std::size_t k = 1; k < x.kids.size(); ++k)
      if (!eval_seq(x.kids[k], out)) return false;
    return true;
  }
  if (!x.kids.empty() && x.kids[0].atom == "as" && x.kids.size() >= 2 &&
      x.kids[1].atom == "seq.empty")
    return true;
  if (x.is_atom() && x.atom.size() >= 2 && x.atom.front() == '"' && x.atom.back() == '"') {
    for (std::size_t k = 1; k + 1 < x.atom.size(); ++k) out.push_back(x.atom[k]);
    return true;
  }
  return false;
}

}  // namespace

Model parse_model(const std::string& text) {
  SxParser parser{text};
  Sx root = parser.parse();
  Model m;
  auto handle_defs = [&](const Sx& container) {
    for (const Sx& def : container.kids) {
      if (def.kids.size() < 5 || def.kids[0].atom != "define-fun") continue;
      const std::string& name = def.kids[1].atom;
      const Sx& body = def.kids.back();
      const Sx& sort = def.kids[3];
      ModelValue mv;
      if (sort.is_atom() && sort.atom == "Int") {
        auto v = eval_int(body);
        if (!v) continue;
        mv.kind = ModelValue::Kind::Int;
        mv.i = *v;
      } else if (sort.is_atom() && sort.atom == "Bool") {
        mv.kind = ModelValue::Kind::Bool;
        mv.b = body.atom == "true";
      } else {
        mv.kind = ModelValue::Kind::Seq;
        if (!eval_seq(body, mv.seq)) continue;
      }
      m[name] = mv;
    }
  };
  if (!root.kids.empty() && root.kids[0].atom == "model") {
    handle_defs(root);
  } else {
    handle_defs(root);
  }
  return m;
}

std::string default_solver_command() {
  if (const char* env = std::getenv("SQZ_SOLVER_CMD"); env && *env) return env;
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return "z3 -in";
  namespace fs = std::filesystem;
  const char* roots[] = {"tools/smt", "../tools/smt", "../../tools/smt", "../../../tools/smt",
                         "/opt/z3wasm"};
  for (const char* r : roots) {
    fs::path script = fs::path(r) / "z3smt2.mjs";
    fs::path deps = fs::path(r) / "node_modules" / "z3-solver";
    if (fs::exists(script) && fs::exists(deps)) {
      return "node " + fs::absolute(script).string();
    }
  }
  if (const char* env = std::getenv("SQZ_REPO_ROOT"); env && *env) {
    fs::path script = fs::path(env) / "tools" / "smt" / "z3smt2.mjs";
    if (fs::exists(script)) return "node " + fs::absolute(script).string();
  }
  return {};
}

}  // namespace sqz
