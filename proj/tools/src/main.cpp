#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gradweil/io.hpp"
#include "gradweil/runner.hpp"

int main(int argc, char** argv) {
  using namespace gradweil;
  CLI::App app{"gradweil: characteristic classes of Lie algebroid representations up to homotopy"};
  app.require_subcommand(0, 1);

  std::string corpus_dir;
  bool update = false;
  auto* corpus = app.add_subcommand("corpus", "run a directory of problem files against golden reports");
  corpus->add_option("dir", corpus_dir, "corpus directory")->required()->check(CLI::ExistingDirectory);
  corpus->add_flag("--update", update, "rewrite missing or differing golden files");

  std::string file;
  cli::Options opt;
  std::string json_path;
  app.add_option("task-file", file, "problem file (JSON)");
  app.add_option("--task", opt.task, "override the task named in the file");
  app.add_option("--json", json_path, "also write the canonical JSON report here");
  app.add_option("--bound", opt.bound, "polynomial degree bound for exactness checks");
  app.add_option("--seed", opt.seed, "seed for randomized inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  if (*corpus) {
    const cli::CorpusSummary s = cli::run_corpus(corpus_dir, update);
    std::cout << s.to_text();
    return s.ok() ? 0 : cli::kCheckFailed;
  }
  if (file.empty()) {
    std::cerr << app.help();
    return cli::kInputError;
  }
  const cli::Outcome out = cli::run_file(file, opt);
  std::cout << out.text;
  if (!json_path.empty()) {
    std::ofstream js(json_path, std::ios::binary);
    if (!js) {
      std::cerr << "cannot write " << json_path << "\n";
      return cli::kInputError;
    }
    js << io::canonical(out.report);
  }
  return out.exit_code;
}
