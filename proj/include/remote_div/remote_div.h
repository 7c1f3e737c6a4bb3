#ifndef REMOTE_DIV_H
#define REMOTE_DIV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define RD_API __attribute__((visibility("default")))
#else
#define RD_API
#endif

typedef enum rd_status {
  RD_OK = 0,
  RD_ERR_PRECONDITION = 1,
  RD_ERR_INVARIANT = 2,
  RD_ERR_PARSE = 3,
  RD_ERR_IO = 4,
  RD_ERR_NULL_ARG = 5
} rd_status;

typedef struct rd_pointset rd_pointset;

/* Message of the last failed call on this thread; "" after success. */
RD_API const char* rd_last_error(void);
RD_API const char* rd_version(void);

/* Strings returned through char** are owned by the caller. */
RD_API void rd_string_free(char* s);

/* format is "json", "csv", "matrix-csv", or NULL to guess from the path. */
RD_API rd_status rd_pointset_load_file(const char* path, const char* format,
                                       rd_pointset** out);
RD_API rd_status rd_pointset_load_string(const char* document, const char* format,
                                         rd_pointset** out);
/* coords is row-major n * dim. */
RD_API rd_status rd_pointset_from_coords(size_t n, size_t dim, const double* coords,
                                         rd_pointset** out);
RD_API rd_status rd_pointset_from_matrix(size_t n, const double* entries,
                                         rd_pointset** out);
RD_API void rd_pointset_free(rd_pointset* ps);
RD_API size_t rd_pointset_size(const rd_pointset* ps);
RD_API rd_status rd_pointset_distance(const rd_pointset* ps, size_t i, size_t j,
                                      double* out);
RD_API rd_status rd_pointset_serialize(const rd_pointset* ps, const char* format,
                                       char** out);
/* format NULL guesses from the path. */
RD_API rd_status rd_pointset_save(const rd_pointset* ps, const char* path,
                                  const char* format);

/* kind: uniform_cube, clusters, grid or line. params may be NULL. */
RD_API rd_status rd_generate(const char* kind, size_t n, size_t dim, uint64_t seed,
                             const char* params, rd_pointset** out);

typedef struct rd_options {
  size_t k;
  double epsilon;
  uint64_t seed;
  size_t repeats;
  const char* objective;  /* "matching" or "pseudoforest" */
  const char* algorithm;  /* solve: "offline" or "nets"; NULL picks by objective */
  int64_t gmm_start;      /* negative draws the start point from seed */
  size_t threads;
  size_t parts;
  const char* strategy;   /* "round_robin", "random" or "file" */
  const size_t* part_of;  /* file strategy: part of each point */
  size_t part_of_len;
  int oracle;
  uint64_t enum_cap;
  size_t part_id;         /* coreset: id recorded in the report */
  size_t net_root;        /* pseudoforest nets: root point */
  const char* flags_json; /* echoed under "flags"; NULL gives {} */
} rd_options;

RD_API void rd_options_init(rd_options* opts);

/* Each command writes a JSON report to *report. */
RD_API rd_status rd_solve(const rd_pointset* ps, const rd_options* opts, char** report);
RD_API rd_status rd_coreset(const rd_pointset* ps, const rd_options* opts, char** report);
RD_API rd_status rd_compose(const rd_pointset* ps, const rd_options* opts, char** report);
RD_API rd_status rd_eval(const rd_pointset* ps, const rd_options* opts, char** report);
/* suite: hst, mstcc, lemma42 or all. */
RD_API rd_status rd_verify(const char* suite, uint64_t seed, size_t trials, size_t draws,
                           size_t threads, const char* flags_json, char** report);
RD_API rd_status rd_gen_report(const rd_pointset* ps, const char* flags_json,
                               char** report);

/* Net tree of the rescaled, clamped data, as used by the nets algorithm. */
RD_API rd_status rd_net_tree(const rd_pointset* ps, size_t k, size_t root, char** json);

RD_API rd_status rd_schema(char** json);
/* Removes timing fields so reports of identical runs compare equal. */
RD_API rd_status rd_canonicalize(const char* json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* REMOTE_DIV_H */
