#include <iostream>

#include "CLI11.hpp"
#include "quomm/commands.hpp"

namespace {

void add_common(CLI::App* sub, quomm::RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

void add_algebra(CLI::App* sub, quomm::RunConfig& cfg, std::vector<std::string>& params) {
  sub->add_option("--algebra", cfg.algebra, "spl | spl21 | osp22 | osp12 | custom");
  sub->add_option("--N", cfg.N, "Rank N of spl(N,1)");
  sub->add_option("--param", params, "Parameter assignment name=a/b (repeatable)");
  sub->add_option("--table", cfg.table_path, "Custom table document (JSON)");
  sub->add_flag("--symbolic", cfg.symbolic, "Keep every parameter symbolic");
  sub->add_option("--literal", cfg.literal,
                  "spl21 only: printed reading to use (vbar-block-left, e11-e12-left, "
                  "e21-vbar1-parameter, e21-e12-order)");
  sub->add_option("--n", cfg.n, "Representation degree (osp12 checks)");
  sub->add_option("--q", cfg.q, "Deformation parameter q (osp12 checks)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quommutator deformations of spl(N,1): consistency, representations, QES operators"};
  app.require_subcommand(1);
  quomm::RunConfig cfg;
  std::vector<std::string> params;

  auto* consistency = app.add_subcommand("consistency", "Overlap (associativity) check of a structure table");
  add_algebra(consistency, cfg, params);
  consistency->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  add_common(consistency, cfg);

  auto* verify = app.add_subcommand("verify-rep", "Verify a finite-difference representation");
  verify->add_option("--algebra", cfg.algebra, "osp22 | osp12")->default_val("osp22");
  verify->add_option("--n", cfg.n, "Degree n of P(n-1) + P(n)")->required();
  verify->add_option("--q", cfg.q, "Rational q (omit for symbolic q)");
  verify->add_flag("--symbolic", cfg.symbolic, "Keep q symbolic");
  verify->add_flag("--printed-normalization", cfg.printed_normalization,
                   "Use the literal normalization of the second anti-fermion");
  verify->add_flag("--export", cfg.export_representation, "Include the representation matrices");
  add_common(verify, cfg);

  auto* normal = app.add_subcommand("normal-order", "Normal-order an expression");
  normal->add_option("expression", cfg.expression, "Expression, e.g. \"V(2)*V(1)\"")->required();
  add_algebra(normal, cfg, params);
  normal->add_flag("--trace", cfg.trace, "Include the rewrite trace");
  add_common(normal, cfg);

  auto* casimir = app.add_subcommand("casimir", "Casimir value of the osp(1,2)_q representation");
  casimir->add_option("--n", cfg.n, "Degree n")->required();
  casimir->add_option("--q", cfg.q, "Rational q (omit for symbolic q)");
  casimir->add_option("--operator", cfg.casimir_operator,
                      "Candidate Casimir expression in V(1)=V+, Vb(1)=V-");
  add_common(casimir, cfg);

  auto* rank = app.add_subcommand("rank", "Effective parameter count of the gl(N) sector");
  rank->add_option("--N", cfg.N, "N")->required();
  add_common(rank, cfg);

  auto* qes = app.add_subcommand("qes-enumerate", "Enumerate and certify QES operators");
  qes->add_option("--n", cfg.n, "Degree n")->required();
  qes->add_option("--q", cfg.q, "Rational q (omit for symbolic q)");
  qes->add_option("--degree", cfg.degree, "Maximal word length")->required();
  qes->add_option("--seed", cfg.seed, "Seed for the random operator");
  add_common(qes, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.verb = app.get_subcommands().front()->get_name();
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "--param expects name=value, got '" << p << "'\n";
      return 2;
    }
    cfg.params.emplace_back(p.substr(0, eq), p.substr(eq + 1));
  }
  const quomm::CommandResult result = quomm::run_command(cfg);
  std::cout << quomm::render_result(result, cfg.format);
  return result.exit_code;
}
