// Command-line front end: thin argument handling over the driver functions.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cdk/cdk.hpp"

int main(int argc, char** argv) {
  CLI::App app{"proof-term kernel for first-order logic with constant domains"};
  app.require_subcommand(1);

  std::string file;
  int fuel = cdk::kDefaultFuel;
  bool trace = false;
  bool json = false;
  std::optional<std::string> out_path;
  std::string dir;

  auto* check = app.add_subcommand("check", "typecheck every definition in a file");
  check->add_option("file", file, "input .cd file")->required();

  auto* normalize =
      app.add_subcommand("normalize", "reduce a definition to normal form");
  normalize->add_option("file", file, "input .cd file")->required();
  normalize->add_option("--fuel", fuel, "maximum number of reduction steps");
  normalize->add_flag("--trace", trace, "print one line per reduction step");
  normalize->add_flag("--json", json, "emit the trace as JSON");

  auto* translate =
      app.add_subcommand("translate", "translate a file out of the D axiom");
  translate->add_option("file", file, "input .cd file")->required();
  std::string out_file;
  auto* out_opt = translate->add_option("-o,--out", out_file, "output file");

  auto* extract = app.add_subcommand(
      "extract", "normalize a definition and extract its computational content");
  extract->add_option("file", file, "input .cd file")->required();
  extract->add_option("--fuel", fuel, "maximum number of reduction steps");

  auto* selftest =
      app.add_subcommand("selftest", "run the invariant suite over a corpus directory");
  selftest->add_option("dir", dir, "directory of .cd files")->required();
  selftest->add_option("--fuel", fuel, "maximum number of reduction steps");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cdk::run_check(file, std::cout, std::cerr);
  if (normalize->parsed())
    return cdk::run_normalize(file, fuel, trace, json, std::cout, std::cerr);
  if (translate->parsed()) {
    if (out_opt->count()) out_path = out_file;
    return cdk::run_translate(file, out_path, std::cout, std::cerr);
  }
  if (extract->parsed()) return cdk::run_extract(file, fuel, std::cout, std::cerr);
  if (selftest->parsed()) return cdk::run_selftest(dir, fuel, std::cout, std::cerr);
  return 1;
}
