#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

#ifndef DIRAC_STAB_VERSION
#define DIRAC_STAB_VERSION "0.0.0"
#endif

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

std::uint64_t env_seed() {
  const char* s = std::getenv("DIRAC_STAB_SEED");
  if (!s || !*s) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == std::string(s).size()) return v;
  } catch (const std::exception&) {
  }
  throw dirac_stab::cli::InputError(std::string("DIRAC_STAB_SEED is not an unsigned integer: ") + s);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dirac_stab::cli;
  CLI::App app{"Deformations and stability of Dirac structures"};
  app.set_version_flag("--version", DIRAC_STAB_VERSION);
  app.require_subcommand(1);

  Options opt;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> echoed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opt.input_path, "JSON document")->required();
    sub->add_option("--format", opt.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--seed", seed, "seed (default: DIRAC_STAB_SEED or 20240611)");
  };

  auto* verify = app.add_subcommand("verify", "check the axioms of the input structure");
  add_common(verify);
  verify->add_option("--point", opt.point, "fixed point x1,...,xm");

  auto* cohomology = app.add_subcommand("cohomology", "cohomology of the relevant complex");
  add_common(cohomology);
  cohomology->add_option("--degree", opt.degree, "report one degree only");
  cohomology->add_option("--mc", opt.mc, "Maurer-Cartan element to twist by");
  cohomology->add_option("--subalgebra", opt.subalgebra, "pass to V/W");
  cohomology->add_option("--point", opt.point, "fixed point x1,...,xm");

  auto* stability = app.add_subcommand("stability", "stability verdict at a fixed point");
  add_common(stability);
  stability->add_option("--point", opt.point, "fixed point x1,...,xm");
  stability->add_flag("--require-stable", opt.require_stable, "exit 1 unless the verdict is STABLE");

  auto* flow = app.add_subcommand("flow", "integrate a gauge flow");
  add_common(flow);
  flow->add_option("--mc", opt.mc, "start element (default 0)");
  flow->add_option("--xi", opt.xi, "degree -1 element generating the flow")->required();
  flow->add_option("--t", opt.t, "end time")->check(CLI::PositiveNumber);
  flow->add_option("--step", opt.step, "RK4 step")->check(CLI::PositiveNumber);
  flow->add_option("--tol", opt.tol, "tolerance");

  auto* rectify = app.add_subcommand("rectify", "gauge a nearby MC element back into W^0");
  add_common(rectify);
  rectify->add_option("--subalgebra", opt.subalgebra, "subalgebra W")->required();
  rectify->add_option("--q", opt.q, "MC element Q in W^0 (default 0)");
  rectify->add_option("--qprime", opt.qprime, "nearby MC element Q'");
  rectify->add_option("--xi", opt.xi, "take Q' as the time-1 flow of Q along this element");
  rectify->add_option("--step", opt.step, "RK4 step")->check(CLI::PositiveNumber);
  rectify->add_option("--tol", opt.tol, "Newton tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  for (int i = 1; i < argc; ++i) echoed.emplace_back(argv[i]);

  try {
    opt.command = app.get_subcommands().front()->get_name();
    opt.seed = seed ? *seed : env_seed();
    std::ifstream in(opt.input_path, std::ios::binary);
    if (!in) throw InputError("cannot read " + opt.input_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const Document doc = parse_document(text);
    Report r = run_command(opt, doc);
    r.version = DIRAC_STAB_VERSION;
    r.input_name = std::filesystem::path(opt.input_path).filename().string();
    r.digest = fnv1a_hex(text);
    // Options echoed without the subcommand and with the input reduced to its file name.
    for (std::size_t i = 1; i < echoed.size(); ++i) {
      const std::string& a = echoed[i];
      if (a == opt.input_path && i > 1 && (echoed[i - 1] == "-i" || echoed[i - 1] == "--input")) {
        r.options.push_back(r.input_name);
      } else if (a.rfind("--input=", 0) == 0) {
        r.options.push_back("--input=" + r.input_name);
      } else {
        r.options.push_back(a);
      }
    }
    std::cout << (opt.format == "json" ? render_json(r) : render_table(r));
    return r.exit_code;
  } catch (const dirac_stab::ParseError& e) {
    std::cerr << "dirac-stab: input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "dirac-stab: error: " << e.what() << '\n';
    return kExitFailed;
  }
}
