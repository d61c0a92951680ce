#include <exception>
#include <string>

#include "latwalk/catalytic.hpp"
#include "latwalk/latwalk.h"
#include "latwalk/pipeline.hpp"
#include "latwalk/walk.hpp"

struct lw_config {
  lw::PipelineConfig pc;
  std::optional<lw::WalkModel> custom;
  lw_format format = LW_FORMAT_JSON;
};

struct lw_report {
  std::string output;
  bool passed = true;
};

namespace {

thread_local std::string last_error;

lw_status fail(lw_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// runs f, mapping exceptions to status codes
template <class F>
lw_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const lw::ConfigError& e) {
    return fail(LW_ERR_CONFIG, e.what());
  } catch (const lw::MathError& e) {
    return fail(LW_ERR_MATH, e.what());
  } catch (const std::exception& e) {
    return fail(LW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LW_ERR_INTERNAL, "unknown error");
  }
}

const std::vector<std::string>& models() {
  static const std::vector<std::string> m = lw::registered_models();
  return m;
}

template <class R>
std::string render(const R& r, lw_format f) {
  switch (f) {
    case LW_FORMAT_CSV:
      return r.csv();
    case LW_FORMAT_TEXT:
      return r.text();
    default:
      return r.json();
  }
}

}  // namespace

extern "C" {

const char* lw_version(void) { return "0.1.0"; }

const char* lw_status_string(lw_status s) {
  switch (s) {
    case LW_OK:
      return "ok";
    case LW_VERIFY_FAILED:
      return "verification failed";
    case LW_ERR_CONFIG:
      return "configuration error";
    case LW_ERR_MATH:
      return "math error";
    case LW_ERR_ARGUMENT:
      return "invalid argument";
    case LW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* lw_last_error(void) { return last_error.c_str(); }

size_t lw_model_count(void) { return models().size(); }

const char* lw_model_name(size_t i) { return i < models().size() ? models()[i].c_str() : nullptr; }

lw_status lw_config_new(lw_config** out) {
  if (!out) return fail(LW_ERR_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new lw_config();
    return LW_OK;
  });
}

void lw_config_free(lw_config* cfg) { delete cfg; }

lw_status lw_config_set_model(lw_config* cfg, const char* name) {
  if (!cfg || !name) return fail(LW_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    lw::model_by_name(name);
    cfg->pc.model = name;
    cfg->custom.reset();
    return LW_OK;
  });
}

lw_status lw_config_set_model_json(lw_config* cfg, const char* text) {
  if (!cfg || !text) return fail(LW_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cfg->custom = lw::model_from_json(text);
    return LW_OK;
  });
}

lw_status lw_config_set_order(lw_config* cfg, int order) {
  if (!cfg) return fail(LW_ERR_ARGUMENT, "null argument");
  if (order < 1) return fail(LW_ERR_CONFIG, "order must be at least 1");
  cfg->pc.N = order;
  return LW_OK;
}

lw_status lw_config_set_weight(lw_config* cfg, const char* p) {
  if (!cfg || !p) return fail(LW_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    lw::GQ w;
    try {
      w = lw::GQ::parse(p);
    } catch (const lw::MathError& e) {
      throw lw::ConfigError(std::string("weight: ") + e.what());
    }
    if (w.is_zero()) throw lw::ConfigError("weight must be nonzero");
    cfg->pc.p = w;
    return LW_OK;
  });
}

lw_status lw_config_set_format(lw_config* cfg, lw_format format) {
  if (!cfg) return fail(LW_ERR_ARGUMENT, "null argument");
  if (format != LW_FORMAT_JSON && format != LW_FORMAT_CSV && format != LW_FORMAT_TEXT)
    return fail(LW_ERR_ARGUMENT, "unknown format");
  cfg->format = format;
  return LW_OK;
}

lw_status lw_enumerate(const lw_config* cfg, lw_report** out) {
  if (!cfg || !out) return fail(LW_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lw::WalkModel m = cfg->custom ? *cfg->custom : lw::model_by_name(cfg->pc.model, cfg->pc.p);
    lw::CoeffTable tab = lw::dp_enumerate(m, cfg->pc.N - 1);
    auto* r = new lw_report();
    switch (cfg->format) {
      case LW_FORMAT_JSON:
        r->output = tab.json() + "\n";
        break;
      case LW_FORMAT_CSV:
        r->output = tab.csv();
        break;
      case LW_FORMAT_TEXT:
        r->output = "model " + m.name + "  walks of length < " + std::to_string(cfg->pc.N) + "\n";
        for (const auto& e : tab.entries())
          r->output += "f(" + std::to_string(e.i) + "," + std::to_string(e.j) + "; " + std::to_string(e.n) +
                       ") = " + e.count.str() + "\n";
        break;
    }
    *out = r;
    return LW_OK;
  });
}

lw_status lw_pipeline(const lw_config* cfg, lw_report** out) {
  if (!cfg || !out) return fail(LW_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  if (cfg->custom) return fail(LW_ERR_CONFIG, "the pipeline runs registered models only");
  return guarded([&] {
    lw::PipelineReport rep = lw::run_pipeline(cfg->pc);
    auto* r = new lw_report();
    r->output = render(rep, cfg->format);
    r->passed = rep.ok;
    *out = r;
    if (!rep.ok) return fail(LW_VERIFY_FAILED, "stage " + rep.failed_stage.value_or("?") + " failed");
    return LW_OK;
  });
}

lw_status lw_classify(const lw_config* cfg, int n, lw_report** out) {
  if (!cfg || !out) return fail(LW_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  if (n < 2) return fail(LW_ERR_CONFIG, "classify needs n >= 2");
  return guarded([&] {
    lw::SolvableK sk = lw::solvable_k(n);
    auto* r = new lw_report();
    r->output = render(sk, cfg->format);
    *out = r;
    return LW_OK;
  });
}

const char* lw_report_output(const lw_report* r) { return r ? r->output.c_str() : ""; }

int lw_report_passed(const lw_report* r) { return r && r->passed ? 1 : 0; }

void lw_report_free(lw_report* r) { delete r; }

}  // extern "C"
