// twistkit command-line driver.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twistkit/dsl/driver.hpp"

namespace {

int run(int argc, char** argv) {
  using namespace twistkit::dsl;
  CLI::App app{"Verify Drinfel'd twists, twist star products, deformed modules and Chern numbers"};
  std::string command, spec_path, report_path, format = "text";
  Options opt;
  std::string name, lhs, rhs, transform;
  int degree = 0;

  std::string commands;
  for (const auto& c : command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + commands)->required();
  app.add_option("specfile", spec_path, ".twk specification file");
  app.add_option("--order", opt.order, "truncation order N (computations mod h^(N+1))")->capture_default_str();
  app.add_option("--cutoff", opt.cutoff, "sample cutoff for star-product checks")->capture_default_str();
  app.add_option("--module-cutoff", opt.module_cutoff, "sample cutoff for module and equivalence checks")->capture_default_str();
  app.add_option("--grid", opt.grid, "quadrature grid size for Chern numbers")->capture_default_str();
  auto* degree_opt = app.add_option("--degree", degree, "chern: check the standard connection of this degree");
  auto* name_opt = app.add_option("--name", name, "restrict to one declaration");
  auto* lhs_opt = app.add_option("--lhs", lhs, "star-eval: left factor");
  auto* rhs_opt = app.add_option("--rhs", rhs, "star-eval: right factor");
  auto* transform_opt = app.add_option("--transform", transform, "equiv-apply: operator T, e.g. 1 + h*d/dx*d/dy");
  app.add_option("--report", report_path, "write the report to this file instead of stdout");
  app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*degree_opt) opt.degree = degree;
  if (*name_opt) opt.name = name;
  if (*lhs_opt) opt.lhs = lhs;
  if (*rhs_opt) opt.rhs = rhs;
  if (*transform_opt) opt.transform = transform;

  SpecDocument doc;
  std::string spec_label;
  if (!spec_path.empty()) {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "twistkit: cannot read " << spec_path << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    spec_label = std::filesystem::path(spec_path).filename().string();
    try {
      doc = parse_spec(buf.str());
    } catch (const SpecError& e) {
      std::cerr << spec_path << ":" << e.what() << "\n";
      return 2;
    }
  } else if (!(command == "chern" && opt.degree)) {
    std::cerr << "twistkit: " << command << " needs a specification file\n";
    return 2;
  }

  CommandResult result;
  try {
    result = run_command(command, doc, opt);
  } catch (const SpecError& e) {
    std::cerr << spec_path << ":" << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "twistkit: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "machine" ? to_json(result, spec_label, opt).dump(2) + "\n" : to_text(result, spec_label, opt);
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "twistkit: cannot write " << report_path << "\n";
      return 2;
    }
    out << text;
  }
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "twistkit: " << e.what() << "\n";
    return 2;
  }
}
