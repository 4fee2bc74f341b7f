#ifndef FIBERTOP_FIBERTOP_H
#define FIBERTOP_FIBERTOP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FT_API __declspec(dllexport)
#else
#define FT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ft_space ft_space;
typedef struct ft_map ft_map;
typedef struct ft_function ft_function;
typedef struct ft_instance ft_instance;

/* Values 1.. mirror fibertop::ErrorCode. */
typedef enum ft_status {
  FT_OK = 0,
  FT_INVALID_ARGUMENT = 1,
  FT_MISSING_EMPTY_OR_FULL,
  FT_NOT_CLOSED_UNDER_UNION,
  FT_NOT_CLOSED_UNDER_INTERSECTION,
  FT_NOT_CONTINUOUS,
  FT_NOT_OPEN,
  FT_CAP_EXCEEDED,
  FT_PRECONDITION_GAP,
  FT_MEMBER_NOT_F_CONTINUOUS,
  FT_NOT_DISJOINT,
  FT_NOT_COVERING,
  FT_PREFIX_NOT_CLOSED,
  FT_CONDITION2_VIOLATED,
  FT_INVALID_PARTITION,
  FT_NEIGHBORHOOD_NOT_NESTED,
  FT_COHERENCE_VIOLATED,
  FT_LEVEL_NOT_REGULAR,
  FT_DEPTH_EXCEEDED,
  FT_HYPOTHESIS_FAILED,
  FT_SEARCH_FAILED,
  FT_NOT_FOUND,
  FT_CHECK_FAILED,
  FT_PRECONDITION_NOT_F_CONTINUOUS,
  FT_MAX_ITER_REACHED,
  FT_SYNTAX_ERROR,
  FT_VALIDATION_ERROR,
  FT_PRECONDITION,
  FT_INTERNAL = 100
} ft_status;

typedef struct ft_config {
  int depth;
  const char* tolerance; /* "p/q"; NULL means 1/1024 */
  int max_points;
  uint64_t seed;
  int json;
} ft_config;

/* Defaults; max_points honours FIBERTOP_MAX_POINTS. */
FT_API void ft_config_default(ft_config* config);

/* Message of the last failing call on this thread ("" after success). */
FT_API const char* ft_last_error(void);
FT_API const char* ft_status_name(ft_status status);
FT_API void ft_free_string(char* s);

/* Instance files. */
FT_API ft_status ft_instance_parse(const char* text, ft_instance** out);
FT_API ft_status ft_instance_load(const char* path, ft_instance** out);
FT_API ft_status ft_instance_serialize(const ft_instance* inst, char** out);
FT_API void ft_instance_free(ft_instance* inst);
FT_API ft_status ft_instance_space(const ft_instance* inst, const char* name, ft_space** out);
FT_API ft_status ft_instance_map(const ft_instance* inst, const char* name, ft_map** out);
FT_API ft_status ft_instance_function(const ft_instance* inst, const char* name, ft_function** out);

/* Spaces: sets are bitmasks over points 0..n-1. */
FT_API ft_status ft_space_from_opens(int n, const uint32_t* opens, size_t count, ft_space** out);
FT_API void ft_space_free(ft_space* space);
FT_API int ft_space_size(const ft_space* space);
FT_API ft_status ft_space_closure(const ft_space* space, uint32_t set, uint32_t* out);
FT_API ft_status ft_space_minimal_neighborhood(const ft_space* space, int x, uint32_t* out);

FT_API ft_status ft_map_create(const ft_space* domain, const ft_space* codomain, const int* table, ft_map** out);
FT_API void ft_map_free(ft_map* map);

/* values[i] is "p/q" for point i. */
FT_API ft_status ft_function_create(const ft_space* space, const char* const* values, ft_function** out);
FT_API void ft_function_free(ft_function* fn);
FT_API ft_status ft_osc_at_point(const ft_function* fn, int x, char** out);
FT_API ft_status ft_is_f_continuous_at(const ft_map* map, const ft_function* fn, int y, int* out);

/* Commands. `report` receives the text or JSON output, `exit_code` 0 or 1.
   A nonzero status means the command errored (CLI exit 2). */
FT_API ft_status ft_check(const ft_instance* inst, const char* cls, const char* map, const ft_config* config,
                          char** report, int* exit_code);

typedef struct ft_build_request {
  const char* kind;
  const char* map; /* NULL or "" selects the only map */
  const char* const* operands;
  size_t operand_count;
  int has_y;
  int y;
  const char* o; /* NULL or "" means all of Y */
} ft_build_request;

FT_API ft_status ft_build(const ft_instance* inst, const ft_build_request* request, const ft_config* config,
                          char** report, int* exit_code);

/* Exhaustive when sample == 0, otherwise `sample` random maps of n points. */
FT_API ft_status ft_census(int n_max, int sample, int n, const ft_config* config, char** report, int* exit_code);

/* Over the maps of inst (or just `map`) when inst is non-NULL, else over the
   exhaustive census up to n_max. */
FT_API ft_status ft_harness(const ft_instance* inst, const char* map, int n_max, int sigma, int functional,
                            const ft_config* config, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
