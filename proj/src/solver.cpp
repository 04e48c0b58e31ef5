#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "amk/bench.hpp"
#include "amk/dimacs.hpp"

extern char** environ;

namespace amk {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::sat: return "SAT";
    case Verdict::unsat: return "UNSAT";
    case Verdict::timeout: return "TIMEOUT";
    case Verdict::error: return "ERROR";
  }
  return "ERROR";
}

namespace {

std::string trim(std::string_view s) {
  const auto sp = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && sp(s.front())) s.remove_prefix(1);
  while (!s.empty() && sp(s.back())) s.remove_suffix(1);
  return std::string(s);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, std::size_t line) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !in.eof())
    throw ConfigError("config line " + std::to_string(line) + ": invalid value for " + key);
  return out;
}

bool executable_file(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

// Unique temp file, removed on scope exit.
class TempFile {
 public:
  explicit TempFile(const char* suffix) {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "amk-XXXXXX").string() + suffix;
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    const int fd = ::mkstemps(buf.data(), static_cast<int>(std::strlen(suffix)));
    if (fd < 0) throw std::runtime_error(std::string("mkstemps: ") + std::strerror(errno));
    ::close(fd);
    path_ = buf.data();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct ParsedOutput {
  std::optional<Verdict> status;
  std::vector<std::int64_t> values;
  bool has_values = false;
};

ParsedOutput parse_solver_output(const std::string& out) {
  ParsedOutput r;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      const std::string status = trim(std::string_view(line).substr(2));
      if (status == "SATISFIABLE") r.status = Verdict::sat;
      else if (status == "UNSATISFIABLE") r.status = Verdict::unsat;
      else r.status = Verdict::error;
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      r.has_values = true;
      std::istringstream vs(line.substr(1));
      std::int64_t v = 0;
      while (vs >> v)
        if (v != 0) r.values.push_back(v);
    }
  }
  return r;
}

}  // namespace

SolverConfig parse_solver_config(std::string_view text) {
  SolverConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "solver") {
      cfg.executable = value;
    } else if (key == "args") {
      cfg.args.clear();
      std::istringstream words(value);
      for (std::string w; words >> w;) cfg.args.push_back(w);
    } else if (key == "timeout") {
      cfg.timeout_s = parse_number<double>(key, value, lineno);
    } else if (key == "parallelism") {
      cfg.parallelism = parse_number<std::size_t>(key, value, lineno);
    } else if (key == "sat_exit") {
      cfg.sat_exit = parse_number<int>(key, value, lineno);
    } else if (key == "unsat_exit") {
      cfg.unsat_exit = parse_number<int>(key, value, lineno);
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!(cfg.timeout_s > 0)) throw ConfigError("timeout must be positive");
  if (cfg.parallelism == 0) throw ConfigError("parallelism must be at least 1");
  if (cfg.executable.empty()) {
    auto found = discover_solver();
    if (!found) throw ConfigError("no solver configured and none found on PATH");
    cfg.executable = *found;
  }
  return cfg;
}

SolverConfig load_solver_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return parse_solver_config(s.str());
}

std::optional<std::string> discover_solver() {
  if (const char* env = std::getenv("AMK_SOLVER"); env != nullptr && *env != '\0')
    return std::string(env);
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  static constexpr const char* kNames[] = {"kissat",   "cadical", "cryptominisat5", "glucose",
                                           "varisat",  "minisat", "picosat"};
  for (const char* name : kNames) {
    std::istringstream dirs(path);
    for (std::string dir; std::getline(dirs, dir, ':');) {
      if (dir.empty()) continue;
      const auto candidate = std::filesystem::path(dir) / name;
      if (executable_file(candidate)) return candidate.string();
    }
  }
  return std::nullopt;
}

BenchResult run_solver(const CnfFormula& f, const SolverConfig& cfg) {
  using clock = std::chrono::steady_clock;
  BenchResult r;
  r.vars = f.num_vars;
  r.clauses = static_cast<std::int64_t>(f.clauses.size());
  if (!(cfg.timeout_s > 0)) throw ConfigError("timeout must be positive");

  TempFile cnf(".cnf");
  TempFile out(".out");
  write_dimacs_file(f, cnf.path());

  std::vector<std::string> argv_s;
  argv_s.push_back(cfg.executable);
  argv_s.insert(argv_s.end(), cfg.args.begin(), cfg.args.end());
  argv_s.push_back(cnf.path());
  std::vector<char*> argv;
  for (std::string& a : argv_s) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out.path().c_str(),
                                   O_WRONLY | O_TRUNC, 0600);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  const auto start = clock::now();
  pid_t pid = -1;
  const int rc = ::posix_spawnp(&pid, argv[0], &actions, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) {
    r.verdict = Verdict::error;
    r.message = "cannot execute " + cfg.executable + ": " + std::strerror(rc);
    return r;
  }

  const auto deadline = start + std::chrono::duration<double>(cfg.timeout_s);
  int status = 0;
  bool timed_out = false;
  auto nap = std::chrono::microseconds(200);
  while (true) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) {
      r.verdict = Verdict::error;
      r.message = std::string("waitpid: ") + std::strerror(errno);
      return r;
    }
    if (clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(nap);
    nap = std::min(nap * 2, std::chrono::microseconds(10000));
  }
  r.solve_s = std::chrono::duration<double>(clock::now() - start).count();

  if (timed_out) {
    r.verdict = Verdict::timeout;
    r.message = "killed after " + std::to_string(cfg.timeout_s) + " s";
    return r;
  }
  if (!WIFEXITED(status)) {
    r.verdict = Verdict::error;
    r.message = "solver terminated by signal " + std::to_string(WTERMSIG(status));
    return r;
  }
  r.exit_code = WEXITSTATUS(status);

  const ParsedOutput parsed = parse_solver_output(slurp(out.path()));
  std::optional<Verdict> verdict;
  if (r.exit_code == cfg.sat_exit) verdict = Verdict::sat;
  else if (r.exit_code == cfg.unsat_exit) verdict = Verdict::unsat;
  else verdict = parsed.status;

  if (!verdict || *verdict == Verdict::error) {
    r.verdict = Verdict::error;
    r.message = "unrecognized solver result (exit code " + std::to_string(r.exit_code) + ")";
    return r;
  }
  if (parsed.status && *parsed.status != *verdict) {
    r.verdict = Verdict::error;
    r.message = "exit code and status line disagree";
    return r;
  }
  r.verdict = *verdict;

  if (r.verdict == Verdict::sat && parsed.has_values) {
    std::vector<bool> model(static_cast<std::size_t>(f.num_vars) + 1, false);
    for (std::int64_t v : parsed.values) {
      const std::int64_t var = v < 0 ? -v : v;
      if (var > f.num_vars) continue;
      model[static_cast<std::size_t>(var)] = v > 0;
    }
    r.model = std::move(model);
  }
  return r;
}

BenchResult run_cell(const PigeonholeInstance& inst, const SolverConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  CnfFormula f = generate_pigeonhole(inst);
  const double encode_s = std::chrono::duration<double>(clock::now() - start).count();
  BenchResult r = run_solver(f, cfg);
  r.instance = inst.label();
  r.amo = inst.amo;
  r.amk = inst.amk;
  r.encode_s = encode_s;
  return r;
}

}  // namespace amk
