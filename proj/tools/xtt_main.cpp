#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xtt/check.hpp"
#include "xtt/testkit.hpp"

using namespace xtt;

namespace {

enum Exit { kOk = 0, kTypeError = 1, kParseError = 2, kIoError = 3 };

struct Options {
  bool json = false;
  int split_depth = 2;
  bool full_regularity = false;
  bool trace = false;
};

void report(const Options& opt, const std::string& file, const Diagnostic& d) {
  if (opt.json) {
    nlohmann::json j{{"v", 1},
                     {"code", d.code},
                     {"span",
                      {{"file", file},
                       {"line", d.span.line},
                       {"col", d.span.col},
                       {"endLine", d.span.end_line},
                       {"endCol", d.span.end_col}}},
                     {"message", d.message}};
    if (!d.expected.empty()) j["expected"] = d.expected;
    if (!d.actual.empty()) j["actual"] = d.actual;
    std::cout << j.dump() << "\n";
    return;
  }
  std::ostringstream os;
  os << file << ":" << d.span.line << ":" << d.span.col << ": error[" << d.code << "]: " << d.message << "\n";
  if (!d.expected.empty()) os << "  expected: " << d.expected << "\n";
  if (!d.actual.empty()) os << "    actual: " << d.actual << "\n";
  std::cerr << os.str();
}

void report_io(const Options& opt, const std::string& file, const std::string& msg) {
  report(opt, file, Diagnostic{Span{}, "E-IO", msg, {}, {}});
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EvalConfig make_config(const Options& opt) {
  EvalConfig cfg;
  cfg.conv.split_depth = opt.split_depth;
  cfg.conv.full_regularity = opt.full_regularity;
  return cfg;
}

struct FileResult {
  int status = kOk;
  std::vector<Diagnostic> diagnostics;
  CheckedProgram program;
};

FileResult check_file(const std::string& path, const EvalConfig* cfg, bool parse_only) {
  FileResult r;
  auto src = read_file(path);
  if (!src) {
    r.status = kIoError;
    return r;
  }
  std::vector<Definition> defs;
  try {
    defs = parse(*src);
  } catch (const DiagnosticError& e) {
    r.status = kParseError;
    r.diagnostics.push_back(e.diag);
    return r;
  }
  if (parse_only) return r;
  r.program = check_program(defs, cfg);
  r.diagnostics = r.program.diagnostics;
  for (const auto& d : r.diagnostics) {
    int s = d.code == "E-PARSE" ? kParseError : kTypeError;
    r.status = std::max(r.status, s);
  }
  return r;
}

int cmd_check(const Options& opt, const std::vector<std::string>& files, bool parse_only) {
  EvalConfig cfg = make_config(opt);
  std::vector<std::future<FileResult>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, [&cfg, f, parse_only] { return check_file(f, &cfg, parse_only); }));
  int status = kOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    FileResult r = jobs[i].get();
    if (r.status == kIoError) report_io(opt, files[i], "cannot read file");
    for (const auto& d : r.diagnostics) report(opt, files[i], d);
    status = std::max(status, r.status);
  }
  return status;
}

int cmd_norm(const Options& opt, const std::string& file, const std::string& target, const std::string& expr,
             const std::string& type) {
  EvalConfig cfg = make_config(opt);
  FileResult prelude;
  if (!file.empty()) {
    prelude = check_file(file, &cfg, false);
    if (prelude.status == kIoError) report_io(opt, file, "cannot read file");
    for (const auto& d : prelude.diagnostics) report(opt, file, d);
    if (prelude.status != kOk) return prelude.status;
  }
  EvalConfig run = cfg;
  if (opt.trace) run.trace = [](std::string_view rule) { std::cerr << rule << "\n"; };
  const GlobalTable* globals = file.empty() ? nullptr : &prelude.program.globals;

  if (!expr.empty()) {
    Term tm, ty;
    try {
      std::tie(tm, ty) = elaborate(expr, type, file.empty() ? nullptr : &prelude.program, &cfg);
    } catch (const DiagnosticError& e) {
      report(opt, "<expr>", e.diag);
      return e.diag.code == "E-PARSE" ? kParseError : kTypeError;
    }
    std::cout << print(normalize(tm, Cube{}, Telescope{}, ty, globals, &run), {}, PrintOptions{false}) << "\n";
    return kOk;
  }
  for (const auto& d : prelude.program.defs) {
    if (d.name != target) continue;
    Term nf = normalize(d.body, d.cube, d.tele, d.type, globals, &run);
    std::cout << print(nf, PrintScope{d.names, d.dim_names}, PrintOptions{false}) << "\n";
    return kOk;
  }
  report(opt, file, Diagnostic{Span{}, "E-SCOPE", "no definition named '" + target + "'", {}, {}});
  return kTypeError;
}

struct CanonicityOptions {
  std::uint64_t seed = 0;
  int count = 1000;
  int depth = 6;
  double budget = 0;
  unsigned threads = 0;
  std::string fault = "none";
  std::string out;
};

int cmd_canonicity(const Options& opt, const CanonicityOptions& c) {
  EvalConfig cfg = make_config(opt);
  if (c.fault == "adjacency") cfg.fault = Fault::NoAdjacency;
  if (c.fault == "regularity") cfg.fault = Fault::NoRegularity;
  GenConfig gen;
  gen.seed = c.seed;
  gen.count = c.count;
  gen.max_depth = c.depth;
  std::vector<GeneratedTerm> corpus;
  try {
    corpus = gen_closed_bool(gen);
  } catch (const std::exception& e) {
    std::cerr << "generator failed: " << e.what() << "\n";
    return kTypeError;
  }
  if (!c.out.empty()) {
    try {
      write_corpus(corpus, c.out);
    } catch (const std::exception& e) {
      report_io(opt, c.out, e.what());
      return kIoError;
    }
  }
  CanonicityReport rep = run_canonicity(corpus, c.budget, &cfg, c.threads);
  if (opt.json) std::cout << rep.json() << "\n";
  else std::cout << rep.text();
  return rep.ok() ? kOk : kTypeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XTT type checker"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("XTT_SPLIT_DEPTH")) {
    try {
      opt.split_depth = std::stoi(env);
    } catch (...) {
    }
  }
  app.add_flag("--json", opt.json, "Emit diagnostics and reports as JSON lines");
  app.add_option("--split-depth", opt.split_depth, "Case splits tried by conversion")->check(CLI::NonNegativeNumber);
  app.add_flag("--full-regularity", opt.full_regularity, "Decide regularity by conversion");
  app.add_flag("--trace", opt.trace, "Print Kan rule firings during normalization");

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "Type check files");
  check->add_option("files", check_files)->required();

  std::vector<std::string> parse_files;
  auto* parse_only = app.add_subcommand("parse-only", "Parse files without checking");
  parse_only->add_option("files", parse_files)->required();

  std::string norm_file, norm_target, norm_expr, norm_type;
  auto* norm = app.add_subcommand("norm", "Print the normal form of a definition or expression");
  norm->add_option("file", norm_file, "File providing definitions");
  norm->add_option("name", norm_target, "Definition to normalize");
  norm->add_option("-e,--expr", norm_expr, "Expression to normalize");
  norm->add_option("-t,--type", norm_type, "Type to check the expression against");

  CanonicityOptions can;
  auto* canon = app.add_subcommand("canonicity", "Generate closed booleans and check canonicity");
  canon->add_option("--seed", can.seed);
  canon->add_option("--count", can.count)->check(CLI::PositiveNumber);
  canon->add_option("--depth", can.depth)->check(CLI::Range(1, 64));
  canon->add_option("--budget", can.budget, "Wall-clock budget in seconds (0 = none)");
  canon->add_option("--threads", can.threads);
  canon->add_option("--inject-fault", can.fault)->check(CLI::IsMember({"none", "adjacency", "regularity"}));
  canon->add_option("--out", can.out, "Write the corpus to this directory");

  for (auto* sub : {check, parse_only, norm, canon}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kParseError;
  }

  try {
    if (*check) return cmd_check(opt, check_files, false);
    if (*parse_only) return cmd_check(opt, parse_files, true);
    if (*canon) return cmd_canonicity(opt, can);
    if (*norm) {
      if (norm_expr.empty() && (norm_file.empty() || norm_target.empty())) {
        std::cerr << "norm: give FILE NAME or -e EXPR\n";
        return kParseError;
      }
      return cmd_norm(opt, norm_file, norm_target, norm_expr, norm_type);
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kTypeError;
  }
  return kOk;
}
