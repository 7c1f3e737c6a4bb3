// remote-div: dataset generation, solvers, coresets, oracle and
// verification runs. Talks to the library through the C API only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "remote_div/remote_div.h"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int code;
};

int exit_code(rd_status s) {
  switch (s) {
    case RD_OK: return 0;
    case RD_ERR_INVARIANT: return 2;
    default: return 1;
  }
}

void check(rd_status s) {
  if (s == RD_OK) return;
  std::cerr << "error: " << rd_last_error() << "\n";
  throw Failure{exit_code(s)};
}

void usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw Failure{1};
}

struct PointsetDeleter {
  void operator()(rd_pointset* p) const { rd_pointset_free(p); }
};
using Pointset = std::unique_ptr<rd_pointset, PointsetDeleter>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { rd_string_free(s); }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) usage_error("cannot open '" + path + "' for writing");
  f << text;
}

Pointset load(const std::string& path, const std::string& format) {
  if (path.empty()) usage_error("--input is required");
  rd_pointset* ps = nullptr;
  check(rd_pointset_load_file(path.c_str(), format.empty() ? nullptr : format.c_str(), &ps));
  return Pointset(ps);
}

// Every option of the subcommand with its effective value.
Json flag_echo(const CLI::App& sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string key = opt->get_single_name();
    if (key.empty() || key == "help") continue;
    if (opt->get_expected_min() == 0) {
      j[key] = opt->count() > 0;
    } else {
      std::string v = opt->count() > 0 ? opt->as<std::string>() : opt->get_default_str();
      j[key] = v;
    }
  }
  return j;
}

std::vector<size_t> read_partition(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) usage_error("cannot open partition file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  std::vector<size_t> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      for (const auto& v : Json::parse(text)) out.push_back(v.get<size_t>());
    } catch (const nlohmann::json::exception& e) {
      usage_error("bad partition file '" + path + "': " + e.what());
    }
    return out;
  }
  std::string token;
  for (char c : text + "\n") {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (token.empty()) continue;
      size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(token, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != token.size()) usage_error("bad partition entry '" + token + "'");
      out.push_back(static_cast<size_t>(v));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  return out;
}

int64_t parse_gmm_start(const std::string& s) {
  if (s == "random") return -1;
  size_t pos = 0;
  long long v = -1;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || v < 0) usage_error("--gmm-start takes a point index or 'random'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversity maximization: offline solvers, composable coresets, oracles"};
  app.require_subcommand(0, 1);
  app.option_defaults()->always_capture_default();
  bool schema = false;
  std::string format = "json";
  app.add_flag("--schema", schema, "Print the report JSON schema and exit");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json"}));

  // Shared knobs.
  std::string objective = "matching";
  std::string input, input_format, output;
  size_t k = 2, repeats = 20, threads = 1;
  uint64_t seed = 0, enum_cap = 5000000;
  double epsilon = 1.0;
  std::string gmm_start = "0";
  const auto objectives = CLI::IsMember({"matching", "pseudoforest"});

  auto* gen = app.add_subcommand("gen", "Generate a dataset");
  std::string kind = "uniform_cube", params, output_format;
  size_t gen_n = 0, dim = 2;
  gen->add_option("--kind", kind, "uniform_cube, clusters, grid or line")
      ->check(CLI::IsMember({"uniform_cube", "clusters", "grid", "line"}));
  gen->add_option("--n", gen_n, "Number of points (line: optional)");
  gen->add_option("--dim", dim, "Dimension");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--params", params,
                  "clusters: c=<count>,sep=<d>,width=<w>; line: comma-separated positions");
  gen->add_option("--output", output, "Point file to write")->required();
  gen->add_option("--output-format", output_format, "json, csv or matrix-csv (default: by extension)");

  auto* solve = app.add_subcommand("solve", "Run an offline approximation algorithm");
  std::string algorithm, dump_tree;
  solve->add_option("--objective", objective, "matching or pseudoforest")->check(objectives);
  solve->add_option("--algorithm", algorithm, "offline (matching) or nets (pseudoforest)")
      ->check(CLI::IsMember({"offline", "nets"}));
  solve->add_option("--k", k, "Subset size")->required();
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--repeats", repeats, "Independent trials for matching");
  solve->add_option("--gmm-start", gmm_start, "GMM start point index, or 'random'");
  solve->add_option("--input", input, "Point file")->required();
  solve->add_option("--input-format", input_format, "json, csv or matrix-csv");
  solve->add_option("--output", output, "Report file (default: stdout)");
  solve->add_option("--dump-net-tree", dump_tree, "Write the pseudoforest net tree as JSON");
  solve->add_option("--threads", threads, "Worker threads");

  auto* coreset = app.add_subcommand("coreset", "Build the coreset of one part");
  size_t part_id = 0;
  coreset->add_option("--objective", objective, "matching or pseudoforest")->check(objectives);
  coreset->add_option("--k", k, "Subset size")->required();
  coreset->add_option("--epsilon", epsilon, "Pseudoforest coreset parameter in (0,1]");
  coreset->add_option("--seed", seed, "Random seed (used by --gmm-start random)");
  coreset->add_option("--gmm-start", gmm_start, "GMM start point index, or 'random'");
  coreset->add_option("--part", part_id, "Part id recorded in the report");
  coreset->add_option("--input", input, "Point file of the part")->required();
  coreset->add_option("--input-format", input_format, "json, csv or matrix-csv");
  coreset->add_option("--output", output, "Report file (default: stdout)");

  auto* compose = app.add_subcommand("compose", "Split, build coresets, solve on the union");
  size_t parts = 1;
  std::string strategy = "round_robin", partition_file;
  bool oracle = false;
  compose->add_option("--objective", objective, "matching or pseudoforest")->check(objectives);
  compose->add_option("--k", k, "Subset size")->required();
  compose->add_option("--epsilon", epsilon, "Pseudoforest coreset parameter in (0,1]");
  compose->add_option("--parts", parts, "Number of parts");
  compose->add_option("--strategy", strategy, "round_robin, random or file")
      ->check(CLI::IsMember({"round_robin", "random", "file"}));
  compose->add_option("--partition-file", partition_file,
                      "Part id per point (JSON array or whitespace/comma separated)");
  compose->add_option("--seed", seed, "Random seed");
  compose->add_option("--repeats", repeats, "Trials for the matching fallback solver");
  compose->add_option("--gmm-start", gmm_start, "GMM start point index, or 'random'");
  compose->add_flag("--oracle", oracle, "Also compute the brute-force optimum on all points");
  compose->add_option("--enum-cap", enum_cap, "Largest number of subsets to enumerate");
  compose->add_option("--input", input, "Point file")->required();
  compose->add_option("--input-format", input_format, "json, csv or matrix-csv");
  compose->add_option("--output", output, "Report file (default: stdout)");
  compose->add_option("--threads", threads, "Worker threads");

  auto* eval = app.add_subcommand("eval", "Brute-force optimum");
  eval->add_option("--objective", objective, "matching or pseudoforest")->check(objectives);
  eval->add_option("--k", k, "Subset size")->required();
  eval->add_option("--enum-cap", enum_cap, "Largest number of subsets to enumerate");
  eval->add_option("--input", input, "Point file")->required();
  eval->add_option("--input-format", input_format, "json, csv or matrix-csv");
  eval->add_option("--output", output, "Report file (default: stdout)");
  eval->add_option("--threads", threads, "Worker threads");

  auto* verify = app.add_subcommand("verify", "Randomized checks of the structural identities");
  std::string suite = "all";
  size_t trials = 200, draws = 2000;
  verify->add_option("--suite", suite, "hst, mstcc, lemma42 or all")
      ->check(CLI::IsMember({"hst", "mstcc", "lemma42", "all"}));
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--trials", trials, "Random instances per suite");
  verify->add_option("--draws", draws, "Random subsets per lemma42 instance");
  verify->add_option("--output", output, "Report file (default: stdout)");
  verify->add_option("--threads", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (schema) {
      OwnedString s;
      check(rd_schema(&s.s));
      std::cout << s.s;
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 1;
    }

    rd_options opts;
    rd_options_init(&opts);
    opts.k = k;
    opts.epsilon = epsilon;
    opts.seed = seed;
    opts.repeats = repeats;
    opts.objective = objective.c_str();
    opts.threads = threads;
    opts.enum_cap = enum_cap;
    opts.gmm_start = parse_gmm_start(gmm_start);

    CLI::App* sub = app.get_subcommands().front();
    const std::string flags = flag_echo(*sub).dump();
    opts.flags_json = flags.c_str();
    OwnedString report;

    if (sub == gen) {
      rd_pointset* raw = nullptr;
      check(rd_generate(kind.c_str(), gen_n, dim, seed, params.c_str(), &raw));
      Pointset ps(raw);
      check(rd_pointset_save(ps.get(), output.c_str(),
                             output_format.empty() ? nullptr : output_format.c_str()));
      check(rd_gen_report(ps.get(), flags.c_str(), &report.s));
      std::cout << report.s;
      return 0;
    }
    if (sub == verify) {
      check(rd_verify(suite.c_str(), seed, trials, draws, threads, flags.c_str(), &report.s));
      write_text(output, report.s);
      const bool passed = Json::parse(report.s).value("passed", false);
      return passed ? 0 : 2;
    }

    Pointset ps = load(input, input_format);
    if (sub == solve) {
      if (!algorithm.empty()) opts.algorithm = algorithm.c_str();
      check(rd_solve(ps.get(), &opts, &report.s));
      if (!dump_tree.empty()) {
        if (objective != "pseudoforest") usage_error("--dump-net-tree needs --objective pseudoforest");
        OwnedString tree;
        check(rd_net_tree(ps.get(), k, 0, &tree.s));
        write_text(dump_tree, tree.s);
      }
    } else if (sub == coreset) {
      opts.part_id = part_id;
      check(rd_coreset(ps.get(), &opts, &report.s));
    } else if (sub == compose) {
      opts.parts = parts;
      opts.strategy = strategy.c_str();
      opts.oracle = oracle ? 1 : 0;
      std::vector<size_t> part_of;
      if (strategy == "file") {
        if (partition_file.empty()) usage_error("--strategy file needs --partition-file");
        part_of = read_partition(partition_file);
        opts.part_of = part_of.data();
        opts.part_of_len = part_of.size();
      } else if (!partition_file.empty()) {
        usage_error("--partition-file needs --strategy file");
      }
      check(rd_compose(ps.get(), &opts, &report.s));
    } else if (sub == eval) {
      check(rd_eval(ps.get(), &opts, &report.s));
    }
    write_text(output, report.s);
    return 0;
  } catch (const Failure& f) {
    return f.code;
  }
}
