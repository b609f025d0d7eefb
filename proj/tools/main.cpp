#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ddvv/commands.hpp"
#include "ddvv/errors.hpp"

namespace {

struct CommandDef {
  const char* name;
  const char* help;
  const char* primary;  // which output path --out overrides
  int (*run)(const ddvv::RunConfig&, int);
};

const CommandDef kCommands[] = {
    {"isotropy", "Check the curve's isotropy and immersion margins", "report",
     ddvv::cmd_isotropy},
    {"build", "Sample the construction over a grid and export records", "samples",
     ddvv::cmd_build},
    {"verify", "Check the curvature equality on every grid sample", "samples",
     ddvv::cmd_verify},
    {"canonical", "Extract canonical shape-operator frames over the grid", "report",
     ddvv::cmd_canonical},
    {"transform", "Re-verify after the conformal transform chain and check the "
     "shape-operator law", "samples", ddvv::cmd_transform},
    {"quadric", "Classify the curve's quadric value against 0 and +-4d^2", "report",
     ddvv::cmd_quadric},
    {"invert_holo", "Invert the curve through the holomorphic quadric and emit "
     "the new curve spec", "curve", ddvv::cmd_invert_holo},
    {"theorem4", "Match the inverted construction's minimal pair against the "
     "inverted curve", "report", ddvv::cmd_theorem4},
};

int exit_code_for(const ddvv::Error& e) {
  const std::string& k = e.kind();
  bool input = k == "ConfigError" || k == "SyntaxError" || k == "EmptyGrid" ||
               k == "NullQuadricCurve" || k == "DomainError";
  return input ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddvv-forge: submanifolds attaining the normal scalar curvature "
               "bound, built from holomorphic curve data"};
  app.require_subcommand(1);

  ddvv::CliOptions opts;
  int workers_flag = 0;
  std::uint64_t seed_flag = 0;

  struct Picked {
    const CommandDef* def = nullptr;
  } picked;

  for (const CommandDef& def : kCommands) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    sub->add_option("--config", opts.config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", opts.out_path, "override the primary output path");
    sub->add_option("--workers", workers_flag, "worker threads (default: all cores)");
    sub->add_option("--seed", seed_flag, "override the grid jitter seed");
    sub->callback([&picked, d = &def] { picked.def = d; });
  }
  CLI::App* cat = app.add_subcommand("catalog", "List the built-in curves");
  cat->add_option("--out", opts.out_path, "write the catalog as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cat->parsed()) return ddvv::cmd_catalog(opts.out_path);

    CLI::App* sub = app.get_subcommand(picked.def->name);
    if (sub->count("--workers")) opts.workers = workers_flag;
    if (sub->count("--seed")) opts.seed = seed_flag;

    ddvv::RunConfig cfg = ddvv::load_config(opts.config_path);
    int workers = ddvv::apply_cli_options(cfg, opts, picked.def->primary);
    return picked.def->run(cfg, workers);
  } catch (const ddvv::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
}
