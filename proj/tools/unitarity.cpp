// unitarity: classify a hermitian symmetric pair's scalar-type highest weight
// modules, draw its Jakobsen diagram, or run the catalog and oracle checks.
//
// Exit codes: 0 ok, 1 usage, 2 verification failure, 3 internal inconsistency.
// UNITARITY_LOG=off|error|warn|info|debug sets stderr verbosity.

#include "unitarity/classifier.hpp"
#include "unitarity/diagram.hpp"
#include "unitarity/hwv.hpp"
#include "unitarity/report.hpp"
#include "unitarity/shapovalov.hpp"

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifndef UNITARITY_CATALOG_PATH
#define UNITARITY_CATALOG_PATH "data/hwv_catalog.json"
#endif

namespace {

using namespace unitarity;

enum Exit { Ok = 0, Usage = 1, VerificationFailure = 2, Inconsistency = 3 };

struct FamilyArgs {
  std::string family;
  int p = 0, q = 0, n = 0;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f, bool required = true) {
  auto* opt = cmd->add_option("--family", f.family, "su | sp | sostar | so-odd | so-even | e6 | e7");
  if (required) opt->required();
  cmd->add_option("--p", f.p, "p for su(p,q)");
  cmd->add_option("--q", f.q, "q for su(p,q)");
  cmd->add_option("--n", f.n, "rank parameter for sp, sostar, so-odd, so-even");
}

Family family_of(const FamilyArgs& f) {
  Family fam = parse_family(f.family, f.p, f.q, f.n);
  fam.validate();
  return fam;
}

// "mu5=2,mu8=1"
Labels parse_labels(const std::string& text) {
  Labels out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    auto eq = item.find('=');
    if (eq == std::string::npos || item.compare(0, 2, "mu") != 0)
      throw ParameterError("bad label '" + item + "' (expected muK=N)");
    try {
      int k = std::stoi(item.substr(2, eq - 2));
      long long v = std::stoll(item.substr(eq + 1));
      if (out.count(k)) throw ParameterError("label mu" + std::to_string(k) + " given twice");
      out[k] = v;
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ParameterError*>(&e)) throw;
      throw ParameterError("bad label '" + item + "' (expected muK=N)");
    }
    start = end + 1;
  }
  return out;
}

std::vector<Rational> parse_lambdas(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(parse_rational(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("unitarity");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("UNITARITY_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

int cmd_classify(const FamilyArgs& fa, const std::string& labels_text, const std::string& lambdas_text,
                 const std::string& format) {
  RootSystem rs(family_of(fa));
  Labels labels = parse_labels(labels_text);
  spdlog::info("classifying {} with {} nonzero labels", rs.family().name(), labels.size());
  auto result = classify(rs, labels);
  std::vector<Rational> lambdas;
  if (lambdas_text.empty()) {
    for (int k = -1; k <= 2 * result.reduction_level; ++k)
      lambdas.push_back(result.lambda0 + Rational(k) * result.lambda_s / 2);
  } else {
    lambdas = parse_lambdas(lambdas_text);
  }
  if (format == "json")
    std::cout << report::classification_json(rs, result, lambdas).dump(2) << "\n";
  else if (format == "tsv")
    std::cout << report::classification_tsv(rs, result, lambdas);
  else
    throw ParameterError("classify supports --format json or tsv");
  for (const auto& msg : result.inconsistencies) spdlog::error("{}", msg);
  return result.inconsistencies.empty() ? Ok : Inconsistency;
}

int cmd_diagram(const FamilyArgs& fa, bool split_rank, const std::string& format) {
  RootSystem rs(family_of(fa));
  JakobsenDiagram d(rs);
  if (format == "json") {
    std::cout << report::diagram_json(d, split_rank).dump(2) << "\n";
  } else if (format == "tsv") {
    std::cout << report::diagram_tsv(d, split_rank);
  } else {
    std::vector<Root> marked;
    if (split_rank) marked = d.split_rank_sequence();
    std::cout << render(d, parse_render_format(format), marked);
  }
  return Ok;
}

int cmd_verify_catalog(const std::string& path, const std::string& format) {
  spdlog::info("loading catalog {}", path);
  auto rep = verify_catalog(load_catalog(path));
  if (format == "json")
    std::cout << report::catalog_json(rep).dump(2) << "\n";
  else if (format == "tsv")
    std::cout << report::catalog_tsv(rep);
  else
    throw ParameterError("verify supports --format json or tsv");
  if (!rep.pass()) spdlog::error("{}/{} catalog entries pass", rep.passed(), rep.entries.size());
  return rep.pass() ? Ok : VerificationFailure;
}

int cmd_verify_oracle(const std::string& key, const std::string& labels_text, const std::string& lambdas_text,
                      int degree, const std::string& format) {
  Family fam = oracle_family(key);
  Labels labels = parse_labels(labels_text);
  RootSystem rs(fam);
  auto result = classify(rs, labels);
  ShapovalovOracle oracle(fam, labels, degree);
  auto lambdas = lambdas_text.empty() ? default_oracle_lambdas(result) : parse_lambdas(lambdas_text);
  spdlog::info("oracle {} scanning {} weights at {} values", key, oracle.weights().size(), lambdas.size());
  auto c = concordance(oracle, result, lambdas);
  std::vector<RankOneCheck> rank_one;
  if (rs.rank() == 1) rank_one = rank_one_check(oracle);
  if (format == "json")
    std::cout << report::concordance_json(oracle, c, rank_one).dump(2) << "\n";
  else if (format == "tsv")
    std::cout << report::concordance_tsv(oracle, c, rank_one);
  else
    throw ParameterError("verify supports --format json or tsv");
  bool ok = c.agree();
  for (const auto& r : rank_one) ok = ok && r.pass;
  return ok ? Ok : VerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Unitarity of scalar-type highest weight modules on hermitian symmetric pairs"};
  app.require_subcommand(1);

  FamilyArgs fa;
  std::string labels, lambdas, classify_format, diagram_format, verify_format, catalog_path = UNITARITY_CATALOG_PATH, oracle;
  bool split_rank = false, catalog = false;
  int degree = 3;

  auto* classify_cmd = app.add_subcommand("classify", "last place of unitarity, missing weights, verdicts");
  add_family_options(classify_cmd, fa);
  classify_cmd->add_option("--labels", labels, "compact labels, e.g. mu5=2,mu8=1 (others 0)");
  classify_cmd->add_option("--lambdas", lambdas, "comma-separated lambda values (decimals or p/q)");
  classify_cmd->add_option("--format", classify_format, "json | tsv")->default_val("json");

  auto* diagram_cmd = app.add_subcommand("diagram", "Jakobsen diagram of the noncompact positive roots");
  add_family_options(diagram_cmd, fa);
  diagram_cmd->add_flag("--split-rank", split_rank, "mark the split-rank sequence");
  diagram_cmd->add_option("--format", diagram_format, "ascii | dot | json | tsv")->default_val("ascii");

  auto* verify_cmd = app.add_subcommand("verify", "formal vector catalog or contravariant-form oracle");
  verify_cmd->add_flag("--catalog", catalog, "check every catalog expression");
  verify_cmd->add_option("--catalog-file", catalog_path, "catalog path");
  verify_cmd->add_option("--oracle", oracle, "su11 | su21 | su22 | sp2");
  verify_cmd->add_option("--labels", labels, "compact labels for the oracle");
  verify_cmd->add_option("--lambdas", lambdas, "lambda values for the oracle");
  verify_cmd->add_option("--degree", degree, "beta-degree bound for the oracle")->default_val(3);
  verify_cmd->add_option("--format", verify_format, "json | tsv")->default_val("json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (*classify_cmd) return cmd_classify(fa, labels, lambdas, classify_format);
    if (*diagram_cmd) return cmd_diagram(fa, split_rank, diagram_format);
    if (*verify_cmd) {
      if (catalog == !oracle.empty()) throw ParameterError("verify needs exactly one of --catalog or --oracle");
      if (catalog) return cmd_verify_catalog(catalog_path, verify_format);
      return cmd_verify_oracle(oracle, labels, lambdas, degree, verify_format);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Inconsistency;
  }
  return Usage;
}
