// Command-line front end: one instance file in, one JSON report out.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "amalgams/report.hpp"

using namespace amalgams;

namespace {

enum ExitCode { kOk = 0, kMathFailure = 1, kInputError = 2, kBudget = 3 };

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::CapExceeded || kind == ErrorKind::BudgetExceeded ? kBudget : kInputError;
}

std::string summary(const Json& r) {
  std::string out = r.value("command", "") + " " + r.value("instance", "");
  if (r.contains("class_count")) out += ": " + std::to_string(r["class_count"].get<std::size_t>()) + " classes";
  if (r.contains("rigid")) out += r["rigid"].get<bool>() ? ": rigid" : ": not rigid";
  if (r.contains("pairings")) {
    out += ": " + r["result"].get<std::string>();
    for (const auto& p : r["pairings"]) {
      out += "\n  " + p["result"].get<std::string>() + " " + p["pairing"].get<std::string>();
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify amalgams of finite groups over a graph via pointings of a graph of groups"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "json";
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> budget;
  RunOptions opt;
  bool parallel = false;
  bool timing = false;

  using Command = std::function<Json(const InstanceFile&, const RunOptions&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;

  auto add = [&](const std::string& name, const std::string& help, Command cmd) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "instance file (JSON, \"schema\": 1)")->required();
    sub->add_option("--cap", cap, "largest group order to materialize");
    sub->add_option("--budget", budget, "node budget for every exhaustive search");
    sub->add_option("--tree-base", opt.tree_base, "root of the normalizing spanning tree");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--parallel", parallel, "use worker threads (reports are identical)");
    sub->add_flag("--time", timing, "print wall time to stderr");
    commands.emplace_back(sub, std::move(cmd));
    return sub;
  };

  add("classify", "isomorphism classes via pointings", cmd_classify);
  add("goldschmidt", "double cosets for a double-loop instance", cmd_goldschmidt);
  add("triangle", "equivalence classes of tuples for a triangle instance", cmd_triangle);
  add("rigid-check", "rigidity and the reduced classification", cmd_rigid);
  auto* fund = add("fundamental", "fundamental groups of class representatives", cmd_fundamental);
  fund->add_option("--base", opt.base, "base vertex");
  fund->add_option("--bound", opt.bound, "word-length bound L for subgroup balls");
  add("crosscheck", "agreement of every applicable classifier with the oracle", [](auto& f, auto& o) {
    return cmd_crosscheck(f, o);
  });
  add("oracle", "brute-force amalgam isomorphism classes", cmd_oracle);

  CLI11_PARSE(app, argc, argv);
  opt.cap = cap;
  opt.budget = budget;
  opt.execution = parallel ? Execution::Parallel : Execution::Serial;

  const auto start = std::chrono::steady_clock::now();
  try {
    for (auto& [sub, cmd] : commands) {
      if (!sub->parsed()) continue;
      const InstanceFile inst = load_instance(file, cap);
      const Json report = cmd(inst, opt);
      const std::string text = format == "json" ? render(report) : summary(report);
      std::fwrite(text.data(), 1, text.size(), stdout);
      std::fputc('\n', stdout);
      if (timing) {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::fprintf(stderr, "wall time %.3f s\n", s);
      }
      if (report.contains("result") && report["result"] == "FAIL") return kMathFailure;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
