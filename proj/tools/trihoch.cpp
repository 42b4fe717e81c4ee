#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "trihoch/cli.hpp"

using namespace trihoch;

int main(int argc, char** argv) {
  CLI::App app{"Hochschild cohomology of triangular algebras through the trajectory spectral sequence"};
  std::string path, field = "rat", reports = "pages,hochschild", emit = "table", kind = "auto", coeff = "regular";
  Index max_degree = 4;
  std::size_t budget = kDefaultOracleBudget;
  app.add_option("input", path, "quiver, triangular or simplicial file ('-' reads stdin)")->required();
  app.add_option("--field", field, "rat or fp:<p>")->capture_default_str();
  app.add_option("--max-degree", max_degree, "report degrees 0..L-1")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--report", reports, "pages,hochschild,e1-structure,oracle-check,degeneration-check")
      ->capture_default_str();
  app.add_option("--emit", emit, "table or tsv")->capture_default_str()->check(CLI::IsMember({"table", "tsv"}));
  app.add_option("--oracle-budget", budget, "matrix entries the bar complex oracle may use")->capture_default_str();
  app.add_option("--kind", kind, "auto, quiver, triangular or simplicial")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "quiver", "triangular", "simplicial"}));
  app.add_option("--coefficients", coeff, "regular (X = T) or dual (X = Hom_k(T, k))")
      ->capture_default_str()
      ->check(CLI::IsMember({"regular", "dual"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  cli::JobSpec job;
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot read " << path << "\n";
      return cli::kExitInput;
    }
    buf << in.rdbuf();
  }
  job.text = buf.str();
  try {
    job.field = cli::parse_field(field);
    job.reports = cli::parse_reports(reports);
    if (kind == "auto")
      job.kind = cli::detect_kind(job.text);
    else
      job.kind = kind == "quiver" ? cli::InputKind::quiver
                 : kind == "triangular" ? cli::InputKind::triangular
                                        : cli::InputKind::simplicial;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  }
  job.max_degree = max_degree;
  job.tsv = emit == "tsv";
  job.oracle_budget = budget;
  job.coefficients = coeff == "dual" ? cli::Coefficients::dual : cli::Coefficients::regular;

  auto res = cli::run_job(job);
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
