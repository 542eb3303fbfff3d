// Command-line front end.  Reads a JSON config, forces the experiment kind
// to the chosen subcommand, and drives everything through the C API.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "diolab.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string plot_path;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool check = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out_path,
                  "output prefix; writes <out>.json and, when tabular, <out>.csv");
  cmd->add_option("--plot-data", o.plot_path, "write (T, ratio) series CSV here");
  cmd->add_option("--seed", o.seed, "override the config seed")
      ->each([&](const std::string&) { o.has_seed = true; });
  cmd->add_flag("--check", o.check, "evaluate the config's expect rules");
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  return static_cast<bool>(f);
}

int run_subcommand(const std::string& experiment, const CommonOpts& o) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    if (!f) {
      std::cerr << "cannot open config file: " << o.config_path << "\n";
      return DL_ERR_INVALID;
    }
    try {
      f >> cfg;
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return DL_ERR_INVALID;
    }
  }
  cfg["experiment"] = experiment;
  std::string text = cfg.dump();

  char* summary = nullptr;
  char* csv = nullptr;
  char* plot = nullptr;
  int rc = dl_run_json(text.c_str(), o.seed, o.has_seed ? 1 : 0, o.check ? 1 : 0,
                       &summary, &csv, &plot);
  std::string summary_s = summary ? summary : "";
  std::string csv_s = csv ? csv : "";
  std::string plot_s = plot ? plot : "";
  dl_free(summary);
  dl_free(csv);
  dl_free(plot);

  std::cout << summary_s << "\n";
  if (!o.out_path.empty()) {
    if (!write_file(o.out_path + ".json", summary_s)) {
      std::cerr << "cannot write " << o.out_path << ".json\n";
      return DL_ERR_RUNTIME;
    }
    if (!csv_s.empty() && !write_file(o.out_path + ".csv", csv_s)) {
      std::cerr << "cannot write " << o.out_path << ".csv\n";
      return DL_ERR_RUNTIME;
    }
  }
  if (!o.plot_path.empty() && !plot_s.empty() && !write_file(o.plot_path, plot_s)) {
    std::cerr << "cannot write " << o.plot_path << "\n";
    return DL_ERR_RUNTIME;
  }
  if (rc != 0 && rc != DL_ERR_CHECK) std::cerr << dl_last_error() << "\n";
  return rc;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-point approximation laboratory"};
  app.require_subcommand(1);

  const char* names[] = {"enumerate", "volume",  "criterion",  "count",
                         "finiteness", "uniform", "siegel-test"};
  CommonOpts opts[7];
  for (int i = 0; i < 7; ++i) add_common(app.add_subcommand(names[i]), opts[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : DL_ERR_INVALID;
  }

  for (int i = 0; i < 7; ++i)
    if (app.get_subcommand(names[i])->parsed()) return run_subcommand(names[i], opts[i]);
  return DL_ERR_INVALID;
}
