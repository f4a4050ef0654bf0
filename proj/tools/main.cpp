#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "sst/commands.hpp"

namespace {

struct Flags {
  std::string config;
  std::string d;
  std::string modulus;
  std::string inf;
  std::string prec;
  std::string subgroup;
  std::string json_path;
  std::string seed;
  std::string max_deg, max_height, max_den;
  bool timing = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "flat key = value config file");
  cmd->add_option("--d", f.d, "squarefree field discriminant parameter");
  cmd->add_option("--modulus", f.modulus, "finite modulus generator, 'p' or 'p,q'");
  cmd->add_option("--inf", f.inf, "infinite places, e.g. 1,2");
  cmd->add_option("--prec", f.prec, "working precision in bits");
  cmd->add_option("--subgroup", f.subgroup, "comma-separated class labels");
  cmd->add_option("--json", f.json_path, "write the JSON report to this path");
  cmd->add_option("--seed", f.seed, "seed for randomized checks");
  cmd->add_option("--max-deg", f.max_deg, "algdep degree bound");
  cmd->add_option("--max-height", f.max_height, "algdep coefficient bound");
  cmd->add_option("--max-den", f.max_den, "rational reconstruction denominator bound");
  cmd->add_flag("--timing", f.timing, "include elapsed_ms in the JSON report");
}

sst::JobConfig resolve(const Flags& f) {
  sst::JobConfig cfg;
  if (!f.config.empty()) cfg = sst::parse_config_file(f.config, cfg);
  if (!f.d.empty()) sst::apply_config_line(cfg, "d", f.d);
  if (!f.modulus.empty()) sst::apply_config_line(cfg, "modulus", f.modulus);
  if (!f.inf.empty()) sst::apply_config_line(cfg, "inf", f.inf);
  if (!f.prec.empty()) sst::apply_config_line(cfg, "prec", f.prec);
  if (!f.subgroup.empty()) sst::apply_config_line(cfg, "subgroup", f.subgroup);
  if (!f.seed.empty()) sst::apply_config_line(cfg, "seed", f.seed);
  if (!f.max_deg.empty()) sst::apply_config_line(cfg, "max_deg", f.max_deg);
  if (!f.max_height.empty()) sst::apply_config_line(cfg, "max_height", f.max_height);
  if (!f.max_den.empty()) sst::apply_config_line(cfg, "max_den", f.max_den);
  cfg.timing = f.timing;
  return cfg;
}

int emit(const sst::CommandResult& result, const std::string& json_path) {
  std::string text = result.report.dump(2);
  text += "\n";
  if (json_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 1;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shintani cone decompositions, Barnes gamma values and Stark unit checks "
               "for real quadratic fields"};
  app.require_subcommand(1);

  Flags flags;
  std::string verify_which;

  CLI::App* zeta0 = app.add_subcommand("zeta0", "exact zeta(0, c) for every ray class");
  add_common(zeta0, flags);
  CLI::App* xinv = app.add_subcommand("xinv", "X(c, iota) table with G/W/V breakdown");
  add_common(xinv, flags);
  CLI::App* verify = app.add_subcommand("verify", "run one of the named check suites");
  verify->add_option("which", verify_which,
                     "main | replace2 | welldef | keylemma | identities | example63")
      ->required();
  add_common(verify, flags);
  CLI::App* stark = app.add_subcommand("stark", "Stark unit value and recognition");
  add_common(stark, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    sst::JobConfig cfg = resolve(flags);
    sst::CommandResult result;
    if (zeta0->parsed())
      result = sst::cmd_zeta0(cfg);
    else if (xinv->parsed())
      result = sst::cmd_xinv(cfg);
    else if (verify->parsed())
      result = sst::cmd_verify(cfg, verify_which);
    else
      result = sst::cmd_stark(cfg);
    return emit(result, flags.json_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
