#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/pipeline.hpp"
#include "json.hpp"

namespace pl = crisispulse::pipeline;

namespace {

using StageFn = pl::StageResult (*)(const pl::RunConfig&);

const std::vector<std::pair<std::string, StageFn>> kStages = {
    {"ingest", pl::run_ingest},     {"clean", pl::run_clean},
    {"features", pl::run_features}, {"topics", pl::run_topics},
    {"sentiment", pl::run_sentiment}, {"report", pl::run_report},
};

int run_stages(const pl::RunConfig& config,
               const std::vector<std::pair<std::string, StageFn>>& stages) {
  std::vector<std::string> artifacts;
  for (const auto& [name, fn] : stages) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn(config);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    for (const auto& note : result.notes)
      std::cout << name << ": " << note << "\n";
    std::cout << name << ": done in " << ms << " ms\n";
    artifacts.insert(artifacts.end(),
                     std::make_move_iterator(result.artifacts.begin()),
                     std::make_move_iterator(result.artifacts.end()));
  }
  std::cout << "artifacts:\n";
  for (const auto& path : artifacts) std::cout << "  " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch analytics over exported disaster-period tweets"};
  app.require_subcommand(1);

  std::string config_path;
  long long seed_override = -1;
  std::string out_override;

  std::vector<CLI::App*> subs;
  for (const auto& [name, fn] : kStages)
    subs.push_back(app.add_subcommand(name, "Run the " + name + " stage"));
  subs.push_back(app.add_subcommand("run", "Run every stage in order"));
  for (auto* sub : subs) {
    sub->add_option("--config", config_path,
                    "Run config file (default: $CRISIS_PULSE_CONFIG)");
    sub->add_option("--seed", seed_override, "Override the configured seed")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_override, "Override the output directory");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("CRISIS_PULSE_CONFIG")) config_path = env;
    }
    if (config_path.empty())
      throw crisispulse::ValidationError(
          "no config given; pass --config or set CRISIS_PULSE_CONFIG");

    auto config = pl::load_run_config(config_path);
    if (seed_override >= 0)
      config.seed = static_cast<std::uint64_t>(seed_override);
    if (!out_override.empty()) config.out = out_override;

    const std::string chosen = app.get_subcommands().front()->get_name();
    if (chosen == "run") return run_stages(config, kStages);
    for (const auto& stage : kStages)
      if (stage.first == chosen) return run_stages(config, {stage});
    throw crisispulse::ValidationError("unknown subcommand: " + chosen);
  } catch (const crisispulse::MissingInputError& e) {
    nlohmann::json err;
    err["error"] = "missing_input";
    err["path"] = e.path();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const crisispulse::ValidationError& e) {
    nlohmann::json err;
    err["error"] = "validation";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
