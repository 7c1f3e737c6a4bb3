#include "remote_div/remote_div.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "remote_div/composition.hpp"
#include "remote_div/coresets.hpp"
#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"
#include "remote_div/matching_offline.hpp"
#include "remote_div/metric.hpp"
#include "remote_div/pseudoforest_offline.hpp"
#include "remote_div/report.hpp"
#include "remote_div/verify.hpp"

struct rd_pointset {
  rdiv::PointSet ps;
};

namespace {

thread_local std::string g_last_error;

template <class F>
rd_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return RD_OK;
  } catch (const rdiv::PreconditionError& e) {
    g_last_error = e.what();
    return RD_ERR_PRECONDITION;
  } catch (const rdiv::InvariantError& e) {
    g_last_error = std::string("internal invariant violated: ") + e.what();
    return RD_ERR_INVARIANT;
  } catch (const rdiv::ParseError& e) {
    g_last_error = e.what();
    return RD_ERR_PARSE;
  } catch (const rdiv::IoError& e) {
    g_last_error = e.what();
    return RD_ERR_IO;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return RD_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RD_ERR_INVARIANT;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return RD_ERR_INVARIANT;
  }
}

rd_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return RD_ERR_NULL_ARG;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const rdiv::Json& j, char** out) { *out = dup_string(j.dump(2) + "\n"); }

rdiv::Json parse_flags(const char* flags_json) {
  if (flags_json == nullptr || *flags_json == '\0') return rdiv::Json::object();
  try {
    return rdiv::Json::parse(flags_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw rdiv::ParseError(std::string("flag echo is not JSON: ") + e.what());
  }
}

rdiv::PointFormat format_or_guess(const char* format, const char* path) {
  if (format == nullptr || *format == '\0') return rdiv::guess_point_format(path);
  return rdiv::parse_point_format(format);
}

rdiv::RunConfig make_config(const rd_options& o) {
  rdiv::RunConfig cfg;
  cfg.k = o.k;
  cfg.epsilon = o.epsilon;
  cfg.seed = o.seed;
  cfg.repeats = o.repeats;
  cfg.objective = rdiv::parse_objective(o.objective ? o.objective : "");
  if (o.gmm_start < 0) {
    cfg.gmm_start.reset();
  } else {
    cfg.gmm_start = static_cast<rdiv::Index>(o.gmm_start);
  }
  cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

}  // namespace

extern "C" {

const char* rd_last_error(void) { return g_last_error.c_str(); }

const char* rd_version(void) { return "1.0.0"; }

void rd_string_free(char* s) { delete[] s; }

rd_status rd_pointset_load_file(const char* path, const char* format, rd_pointset** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto ps = rdiv::load_pointset_file(path, format_or_guess(format, path));
    *out = new rd_pointset{std::move(ps)};
  });
}

rd_status rd_pointset_load_string(const char* document, const char* format,
                                  rd_pointset** out) {
  if (document == nullptr) return null_arg("document");
  if (format == nullptr) return null_arg("format");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto ps = rdiv::load_pointset(document, rdiv::parse_point_format(format));
    *out = new rd_pointset{std::move(ps)};
  });
}

rd_status rd_pointset_from_coords(size_t n, size_t dim, const double* coords,
                                  rd_pointset** out) {
  if (coords == nullptr && n * dim > 0) return null_arg("coords");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    if (dim == 0) throw rdiv::PreconditionError("dimension must be positive");
    std::vector<double> c(coords, coords + n * dim);
    *out = new rd_pointset{rdiv::PointSet::euclidean(dim, std::move(c))};
  });
}

rd_status rd_pointset_from_matrix(size_t n, const double* entries, rd_pointset** out) {
  if (entries == nullptr && n > 0) return null_arg("entries");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::vector<double> e(entries, entries + n * n);
    *out = new rd_pointset{rdiv::PointSet::from_matrix(n, std::move(e))};
  });
}

void rd_pointset_free(rd_pointset* ps) { delete ps; }

size_t rd_pointset_size(const rd_pointset* ps) { return ps ? ps->ps.size() : 0; }

rd_status rd_pointset_distance(const rd_pointset* ps, size_t i, size_t j, double* out) {
  if (ps == nullptr) return null_arg("ps");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = ps->ps.distance(i, j); });
}

rd_status rd_pointset_serialize(const rd_pointset* ps, const char* format, char** out) {
  if (ps == nullptr) return null_arg("ps");
  if (format == nullptr) return null_arg("format");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = dup_string(rdiv::serialize_pointset(ps->ps, rdiv::parse_point_format(format)));
  });
}

rd_status rd_pointset_save(const rd_pointset* ps, const char* path, const char* format) {
  if (ps == nullptr) return null_arg("ps");
  if (path == nullptr) return null_arg("path");
  return guarded([&] {
    const std::string text = rdiv::serialize_pointset(ps->ps, format_or_guess(format, path));
    std::ofstream f(path, std::ios::binary);
    if (!f) throw rdiv::IoError(std::string("cannot open '") + path + "' for writing");
    f << text;
    if (!f) throw rdiv::IoError(std::string("write to '") + path + "' failed");
  });
}

rd_status rd_generate(const char* kind, size_t n, size_t dim, uint64_t seed,
                      const char* params, rd_pointset** out) {
  if (kind == nullptr) return null_arg("kind");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto ps = rdiv::generate(rdiv::parse_gen_kind(kind), n, dim, seed,
                             params ? params : "");
    *out = new rd_pointset{std::move(ps)};
  });
}

void rd_options_init(rd_options* o) {
  if (o == nullptr) return;
  *o = rd_options{};
  o->k = 2;
  o->epsilon = 1.0;
  o->seed = 0;
  o->repeats = 20;
  o->objective = "matching";
  o->algorithm = nullptr;
  o->gmm_start = 0;
  o->threads = 1;
  o->parts = 1;
  o->strategy = "round_robin";
  o->oracle = 0;
  o->enum_cap = rdiv::kEnumerationCap;
  o->part_id = 0;
  o->net_root = 0;
  o->flags_json = nullptr;
}

rd_status rd_solve(const rd_pointset* ps, const rd_options* opts, char** report) {
  if (ps == nullptr) return null_arg("ps");
  if (opts == nullptr) return null_arg("opts");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    rdiv::Stopwatch clock;
    const auto flags = parse_flags(opts->flags_json);
    const auto cfg = make_config(*opts);
    const bool matching = cfg.objective == rdiv::Objective::RemoteMatching;
    const std::string algorithm =
        opts->algorithm && *opts->algorithm ? opts->algorithm : (matching ? "offline" : "nets");
    if (matching && algorithm != "offline") {
      throw rdiv::PreconditionError("matching supports --algorithm offline, not '" +
                                    algorithm + "'");
    }
    if (!matching && algorithm != "nets") {
      throw rdiv::PreconditionError("pseudoforest supports --algorithm nets, not '" +
                                    algorithm + "'");
    }
    rdiv::Json body;
    body["objective"] = rdiv::objective_name(cfg.objective);
    body["k"] = cfg.k;
    body["n"] = ps->ps.size();
    if (matching) {
      const auto r = rdiv::mwm_offline(ps->ps, cfg.k, cfg);
      body["solution"] = rdiv::to_json(r.solution);
      body["value"] = r.solution.value;
      body["trace"] = rdiv::to_json(r.trace);
    } else {
      if (opts->net_root >= ps->ps.size()) {
        throw rdiv::PreconditionError("net root index out of range");
      }
      auto r = rdiv::pf_offline(ps->ps, cfg.k, opts->net_root);
      r.solution.seed = cfg.seed;
      body["solution"] = rdiv::to_json(r.solution);
      body["value"] = r.solution.value;
      body["trace"] = {{"antichain_value", r.antichain_value},
                       {"scale", r.scale},
                       {"floor", r.floor},
                       {"depth", r.depth}};
    }
    body["bound_kind"] = rdiv::bound_kind_name(rdiv::BoundKind::LowerBound);
    body["elapsed_ms"] = clock.elapsed_ms();
    emit(rdiv::make_report("solve", flags, body), report);
  });
}

rd_status rd_coreset(const rd_pointset* ps, const rd_options* opts, char** report) {
  if (ps == nullptr) return null_arg("ps");
  if (opts == nullptr) return null_arg("opts");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    rdiv::Stopwatch clock;
    const auto flags = parse_flags(opts->flags_json);
    const auto cfg = make_config(*opts);
    const rdiv::Index start = rdiv::resolve_gmm_start(cfg, ps->ps.size());
    rdiv::Coreset c = cfg.objective == rdiv::Objective::RemoteMatching
                          ? rdiv::mwm_coreset(ps->ps, cfg.k, start)
                          : rdiv::pf_coreset(ps->ps, cfg.k, cfg.epsilon, start);
    c.part = opts->part_id;
    rdiv::Json body = rdiv::to_json(c);
    body["epsilon"] = cfg.epsilon;
    body["n"] = ps->ps.size();
    body["size"] = c.indices.size();
    body["elapsed_ms"] = clock.elapsed_ms();
    emit(rdiv::make_report("coreset", flags, body), report);
  });
}

rd_status rd_compose(const rd_pointset* ps, const rd_options* opts, char** report) {
  if (ps == nullptr) return null_arg("ps");
  if (opts == nullptr) return null_arg("opts");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    rdiv::Stopwatch clock;
    const auto flags = parse_flags(opts->flags_json);
    const auto cfg = make_config(*opts);
    rdiv::PipelineOptions p;
    p.parts = opts->parts;
    p.strategy = rdiv::parse_split_strategy(opts->strategy ? opts->strategy : "");
    if (p.strategy == rdiv::SplitStrategy::File) {
      if (opts->part_of == nullptr) {
        throw rdiv::PreconditionError("file strategy needs a partition file");
      }
      p.part_of.assign(opts->part_of, opts->part_of + opts->part_of_len);
    }
    p.oracle = opts->oracle != 0;
    p.cap = opts->enum_cap;
    const auto r = rdiv::run_pipeline(ps->ps, cfg, p);
    rdiv::Json body = rdiv::to_json(r);
    body["n"] = ps->ps.size();
    body["elapsed_ms"] = clock.elapsed_ms();
    emit(rdiv::make_report("compose", flags, body), report);
  });
}

rd_status rd_eval(const rd_pointset* ps, const rd_options* opts, char** report) {
  if (ps == nullptr) return null_arg("ps");
  if (opts == nullptr) return null_arg("opts");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    rdiv::Stopwatch clock;
    const auto flags = parse_flags(opts->flags_json);
    const auto cfg = make_config(*opts);
    rdiv::BruteOptions b;
    b.cap = opts->enum_cap;
    b.threads = cfg.threads;
    const auto sol = rdiv::brute_diversity(ps->ps, cfg.k, cfg.objective, b);
    rdiv::Json body;
    body["objective"] = rdiv::objective_name(cfg.objective);
    body["k"] = cfg.k;
    body["n"] = ps->ps.size();
    body["subsets"] = *rdiv::binomial_capped(ps->ps.size(), cfg.k, b.cap);
    body["solution"] = rdiv::to_json(sol);
    body["value"] = sol.value;
    body["bound_kind"] = rdiv::bound_kind_name(rdiv::BoundKind::Exact);
    body["elapsed_ms"] = clock.elapsed_ms();
    emit(rdiv::make_report("eval", flags, body), report);
  });
}

rd_status rd_verify(const char* suite, uint64_t seed, size_t trials, size_t draws,
                    size_t threads, const char* flags_json, char** report) {
  if (suite == nullptr) return null_arg("suite");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    rdiv::Stopwatch clock;
    const auto flags = parse_flags(flags_json);
    if (threads == 0) throw rdiv::PreconditionError("threads must be positive");
    const auto results = rdiv::run_verify(suite, seed, trials, draws, threads);
    rdiv::Json body;
    rdiv::Json arr = rdiv::Json::array();
    bool passed = true;
    for (const auto& r : results) {
      arr.push_back(rdiv::to_json(r));
      passed = passed && r.failures == 0;
    }
    body["suites"] = std::move(arr);
    body["passed"] = passed;
    body["elapsed_ms"] = clock.elapsed_ms();
    emit(rdiv::make_report("verify", flags, body), report);
  });
}

rd_status rd_gen_report(const rd_pointset* ps, const char* flags_json, char** report) {
  if (ps == nullptr) return null_arg("ps");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    const auto flags = parse_flags(flags_json);
    rdiv::Json body;
    body["n"] = ps->ps.size();
    body["dim"] = ps->ps.dim();
    body["diameter"] = rdiv::diameter(ps->ps);
    emit(rdiv::make_report("gen", flags, body), report);
  });
}

rd_status rd_net_tree(const rd_pointset* ps, size_t k, size_t root, char** json) {
  if (ps == nullptr) return null_arg("ps");
  if (json == nullptr) return null_arg("json");
  return guarded([&] {
    const auto r = rdiv::pf_offline(ps->ps, k, root);
    emit(rdiv::net_tree_json(r.tree), json);
  });
}

rd_status rd_schema(char** json) {
  if (json == nullptr) return null_arg("json");
  return guarded([&] { emit(rdiv::report_schema(), json); });
}

rd_status rd_canonicalize(const char* json, char** out) {
  if (json == nullptr) return null_arg("json");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { emit(rdiv::canonicalize(rdiv::Json::parse(json)), out); });
}

}  // extern "C"
