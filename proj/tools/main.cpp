#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "misinfo/minet.h"

int main(int argc, char** argv) {
  CLI::App app{"network-based fake news detection and mitigation toolkit"};
  app.set_version_flag("--version", std::string(minet_version()));

  std::string task, config_path, out_dir, format, claims, kg_path, mode;
  unsigned long long seed = 0;
  app.add_option("task", task,
                 "task: generate | detect-embed | detect-seq | embed-social | "
                 "credibility | factcheck | stance | provenance | leaders | "
                 "estimate-audience | block | campaign")
      ->required();
  app.add_option("--config", config_path, "JSON config file");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out_dir, "output directory for report and artifacts");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--claims", claims, "claims JSON-lines file (factcheck)");
  app.add_option("--kg", kg_path, "knowledge graph TSV (factcheck)");
  app.add_option("--mode", mode, "fact-checking mode (factcheck)")
      ->check(CLI::IsMember({"path", "flow"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return MINET_VALIDATION;
  }

  nlohmann::json cfg = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open config %s\n", config_path.c_str());
      return MINET_VALIDATION;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      cfg = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
      std::fprintf(stderr, "error: config parse error: %s\n", e.what());
      return MINET_VALIDATION;
    }
    if (!cfg.is_object()) {
      std::fprintf(stderr, "error: config must be a JSON object\n");
      return MINET_VALIDATION;
    }
  }
  cfg["task"] = task;
  if (seed_opt->count() > 0) cfg["seed"] = seed;
  if (!out_dir.empty()) cfg["out"] = out_dir;
  if (!format.empty()) cfg["format"] = format;
  if (!claims.empty()) cfg["claims"] = claims;
  if (!kg_path.empty()) cfg["kg"] = kg_path;
  if (!mode.empty()) cfg["mode"] = mode;

  char* report = nullptr;
  const int status = minet_run_task(cfg.dump().c_str(), &report);
  if (status != MINET_OK) {
    std::fprintf(stderr, "error: %s\n", minet_last_error());
    return status;
  }
  std::fputs(report, stdout);
  minet_string_free(report);
  return 0;
}
