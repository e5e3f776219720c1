#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hk/job.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hk::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string default_format(const hk::JobConfig& cfg, const std::string& out) {
  if (!cfg.format.empty()) return cfg.format;
  if (out.size() >= 4 && out.substr(out.size() - 4) == ".csv") return "csv";
  return "json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-level h-function, Hilbert-Kunz and F-threshold computations"};
  std::string job, config, out, format, cache_dir = ".hk-cache";
  unsigned threads = 1;
  bool no_cache = false, verify_cache = false;
  std::string jobs;
  for (const auto& j : hk::job_names()) jobs += (jobs.empty() ? "" : ", ") + j;
  app.add_option("job", job, "one of: " + jobs)->required();
  app.add_option("--config", config, "JSON job description");
  app.add_option("--out", out, "output path (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--no-cache", no_cache, "neither read nor write the result cache");
  app.add_option("--cache-dir", cache_dir, "result cache directory");
  app.add_flag("--verify-cache", verify_cache, "also recompute without the cache and compare the reports");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(hk::ExitCode::kConfigError);
  }

  try {
    hk::JobConfig cfg;
    if (config.empty()) {
      if (job != "verify") throw hk::ConfigError("--config is required for job '" + job + "'");
      cfg = hk::parse_job("{}", job);
    } else {
      cfg = hk::parse_job(read_file(config), job);
    }
    if (out.empty()) out = cfg.output;
    if (format.empty()) format = default_format(cfg, out);
    hk::RunOptions opt{threads};

    std::optional<hk::ResultCache> cache;
    if (!no_cache && cfg.job != "verify") {
      cache.emplace(cache_dir);
      cache->attach();
    }
    hk::Report report = hk::run_job(cfg, opt);
    std::string text = report.render(format);
    if (cache) cache->store_all();

    if (verify_cache) {
      hk::length_tables().set_loader(nullptr);
      hk::length_tables().clear();
      hk::groebner_cache().clear();
      std::string fresh = hk::run_job(cfg, opt).render(format);
      if (fresh != text) {
        std::cerr << "hk: cached and recomputed reports differ\n";
        return static_cast<int>(hk::ExitCode::kVerificationFailure);
      }
    }

    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw hk::ConfigError("cannot write '" + out + "'");
      f << text;
    }
    if (report.failed) {
      std::cerr << "hk: verification failed (see report)\n";
      return static_cast<int>(hk::ExitCode::kVerificationFailure);
    }
    return 0;
  } catch (const hk::Error& e) {
    std::cerr << "hk: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::bad_alloc&) {
    std::cerr << "hk: out of memory\n";
    return static_cast<int>(hk::ExitCode::kBudgetExceeded);
  }
}
