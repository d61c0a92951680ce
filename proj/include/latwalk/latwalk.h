#ifndef LATWALK_H
#define LATWALK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LATWALK_BUILD)
#define LW_API __attribute__((visibility("default")))
#else
#define LW_API
#endif

/* Status codes. LW_VERIFY_FAILED still produces a report. */
typedef enum {
  LW_OK = 0,
  LW_VERIFY_FAILED = 2,
  LW_ERR_CONFIG = 3,
  LW_ERR_MATH = 4,
  LW_ERR_ARGUMENT = 5,
  LW_ERR_INTERNAL = 6
} lw_status;

typedef enum { LW_FORMAT_JSON = 0, LW_FORMAT_CSV = 1, LW_FORMAT_TEXT = 2 } lw_format;

typedef struct lw_config lw_config;
typedef struct lw_report lw_report;

LW_API const char* lw_version(void);
LW_API const char* lw_status_string(lw_status s);
/* message of the last failing call on this thread; empty when none */
LW_API const char* lw_last_error(void);

LW_API size_t lw_model_count(void);
/* NULL when i is out of range */
LW_API const char* lw_model_name(size_t i);

/* defaults: model three-quadrant-nenws, order 12, weight 1, JSON */
LW_API lw_status lw_config_new(lw_config** out);
LW_API void lw_config_free(lw_config* cfg);
LW_API lw_status lw_config_set_model(lw_config* cfg, const char* name);
/* a JSON model description replaces the registered model; enumerate only */
LW_API lw_status lw_config_set_model_json(lw_config* cfg, const char* text);
/* counts are computed mod t^order, i.e. for walks of length below order */
LW_API lw_status lw_config_set_order(lw_config* cfg, int order);
/* Gaussian rational such as "1", "2/3" or "1+2i" */
LW_API lw_status lw_config_set_weight(lw_config* cfg, const char* p);
LW_API lw_status lw_config_set_format(lw_config* cfg, lw_format format);

LW_API lw_status lw_enumerate(const lw_config* cfg, lw_report** out);
LW_API lw_status lw_pipeline(const lw_config* cfg, lw_report** out);
/* solvable k table for n >= 2; only the format of cfg is used */
LW_API lw_status lw_classify(const lw_config* cfg, int n, lw_report** out);

/* owned by the report */
LW_API const char* lw_report_output(const lw_report* r);
LW_API int lw_report_passed(const lw_report* r);
LW_API void lw_report_free(lw_report* r);

#ifdef __cplusplus
}
#endif

#endif
