#pragma once

#include <nlohmann/json.hpp>

#include "sst/stark.hpp"

namespace sst {

using Json = nlohmann::ordered_json;

/// Flat job configuration: config-file values overridden by flags.
struct JobConfig {
  long d = 5;
  std::string modulus = "4";  // "p" or "p,q" meaning p + q*sqrt(d)
  bool inf1 = true;
  bool inf2 = true;
  long precision_bits = 256;
  std::vector<int> subgroup;  // 1-based class labels; empty = preset/default
  unsigned max_deg = 8;
  long max_height = 1000000;
  long max_den = 10000;
  std::uint64_t seed = 20240601;
  bool timing = false;
};

/// "key = value" lines; '#' comments; unknown keys rejected.
JobConfig parse_config_file(const std::string& path, JobConfig base = {});
void apply_config_line(JobConfig& cfg, const std::string& key, const std::string& value);

struct CommandResult {
  Json report;
  int exit_code = 0;  // 0 pass, 1 fail, 2 inconclusive
};

CommandResult cmd_zeta0(const JobConfig& cfg);
CommandResult cmd_xinv(const JobConfig& cfg);
CommandResult cmd_verify(const JobConfig& cfg, const std::string& which);
CommandResult cmd_stark(const JobConfig& cfg);

/// Group plus the 1-based labelling of classes; the worked-example
/// configuration (d = 5, modulus (4), both places) pins the labels to the
/// classes of (1), (3), (4+sqrt5), (6+sqrt5).
struct LabeledGroup {
  QuadField field;
  std::unique_ptr<RayClassGroup> group;
  std::vector<RayClass> by_label;
  bool preset = false;

  RayClass of_label(int label) const { return by_label.at(static_cast<size_t>(label) - 1); }
  int label_of(RayClass c) const;
};

LabeledGroup build_group(const JobConfig& cfg);
QuadElem parse_generator(const QuadField& field, const std::string& text);

}  // namespace sst
