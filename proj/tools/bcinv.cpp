#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "bcinv/cli/job.hpp"

namespace {

using bcinv::Json;
using bcinv::cli::JobSpec;

struct Flags {
  std::string job_file, report, csv;
  std::string ring, method, suite, family;
  std::map<std::string, std::string> elements;
  std::optional<double> tol, beta, lambda0;
  std::vector<double> lambdas;
  std::optional<long> n;
  std::optional<std::size_t> cap;
  std::optional<unsigned> threads;
};

const std::map<std::string, std::string> kAbout{
    {"compute", "a^-(b,c) by the chosen method, with residual certificate"},
    {"verify", "check a candidate --y; report the structural verdicts"},
    {"lab", "exhaustive suites on a small finite ring"},
    {"banach", "spectrum, integral/series/limit forms, H operator, perturbation bounds"},
    {"rol", "reverse order law for (a, b, c) and (a2, b2, c2)"},
    {"continuity", "behaviour of a_n^-(b_n,c_n) along a sequence"},
};

const char* const kElementRoles[] = {"a", "b", "c", "g", "h", "y", "a2", "b2", "c2", "g2", "h2"};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--job", f.job_file, "job file (JSON); flags override its fields");
  sub->add_option("--ring", f.ring, "Zn:6 | Z6 | MFp:2:2 | M2F2 | Q:3 | R:4");
  for (const char* role : kElementRoles)
    sub->add_option(std::string("--") + role, f.elements[role], std::string("element ") + role);
  sub->add_option("--method", f.method, "auto|corner|factor|group|exhaustive|series|integral|limit");
  sub->add_option("--tol", f.tol, "equality tolerance for R:k (default $BCINV_TOL or 1e-12)");
  sub->add_option("--beta", f.beta, "series parameter (default: minimizing choice)");
  sub->add_option("--lambda0", f.lambda0, "first lambda of the limit schedule");
  sub->add_option("--lambda", f.lambdas, "lambda values for the perturbation bound");
  sub->add_option("--suite", f.suite, "equivalences|sets|bottduffin|rol|all");
  sub->add_option("--family", f.family, "bounded|unbounded|constant|custom");
  sub->add_option("--n", f.n, "largest sequence index");
  sub->add_option("--cap", f.cap, "largest ring accepted by lab");
  sub->add_option("--threads", f.threads, "lab worker threads (0 = all cores)");
  sub->add_option("--report", f.report, "write the JSON report here instead of stdout");
  sub->add_option("--csv", f.csv, "also write a path,value summary");
}

Json literal(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    return Json(text);
  }
}

JobSpec build_job(const std::string& command, const Flags& f) {
  JobSpec job = f.job_file.empty() ? JobSpec{} : bcinv::cli::load_job(f.job_file);
  job.command = command;
  if (!f.ring.empty()) job.ring = f.ring;
  for (const auto& [role, text] : f.elements)
    if (!text.empty()) job.elements[role] = literal(text);
  if (!f.method.empty()) job.method = f.method;
  if (f.tol) job.tol = f.tol;
  if (f.beta) job.beta = f.beta;
  if (f.lambda0) job.lambda0 = f.lambda0;
  if (!f.lambdas.empty()) job.lambdas = f.lambdas;
  if (!f.suite.empty()) job.suite = f.suite;
  if (!f.family.empty()) job.family = f.family;
  if (f.n) job.n = *f.n;
  if (f.cap) job.cap = *f.cap;
  if (f.threads) job.threads = *f.threads;
  return job;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(b,c)-inverses: compute, verify, exhaustive lab, analytic representations"};
  app.set_help_flag("--help", "print help and exit");  // -h would clash with --h
  app.require_subcommand(1);
  Flags flags;
  for (const auto& name : bcinv::cli::commands()) add_flags(app.add_subcommand(name, kAbout.at(name)), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  bcinv::cli::RunResult result;
  try {
    result = bcinv::cli::run(build_job(command, flags));
  } catch (const bcinv::Error& e) {
    std::cerr << e.what() << "\n";
    return bcinv::cli::exit_status(e.kind());
  }

  const std::string json = result.report.dump(2) + "\n";
  if (flags.report.empty()) {
    std::cout << json;
  } else {
    if (!write_file(flags.report, json)) {
      std::cerr << "cannot write " << flags.report << "\n";
      return 2;
    }
    std::cout << bcinv::cli::summary(result.report);
  }
  if (!flags.csv.empty() && !write_file(flags.csv, bcinv::cli::to_csv(result.report))) {
    std::cerr << "cannot write " << flags.csv << "\n";
    return 2;
  }
  if (result.status != 0 && flags.report.empty()) std::cerr << bcinv::cli::summary(result.report);
  return result.status;
}
