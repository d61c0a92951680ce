#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "latwalk/latwalk.h"

namespace {

struct Options {
  std::string model = "three-quadrant-nenws";
  std::string model_file;
  int order = 12;
  std::string weight = "1";
  std::string format = "json";
  std::string out;
  int n = 3;
};

int exit_code(lw_status s) {
  switch (s) {
    case LW_OK:
      return 0;
    case LW_VERIFY_FAILED:
      return 2;
    case LW_ERR_CONFIG:
    case LW_ERR_ARGUMENT:
      return 3;
    default:
      return 1;
  }
}

// order default: LATWALK_ORDER when set, else 12
int default_order() {
  const char* env = std::getenv("LATWALK_ORDER");
  if (!env || !*env) return 12;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1000) {
    std::cerr << "error: LATWALK_ORDER must be a positive integer\n";
    std::exit(3);
  }
  return static_cast<int>(v);
}

int report_error(lw_status s) {
  std::cerr << "error: " << lw_status_string(s);
  if (*lw_last_error()) std::cerr << ": " << lw_last_error();
  std::cerr << "\n";
  return exit_code(s);
}

int emit(const lw_report* r, const std::string& out) {
  std::string text = lw_report_output(r);
  if (!text.empty() && text.back() != '\n') text += '\n';
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return 3;
  }
  f << text;
  return 0;
}

int run(const std::string& cmd, const Options& o) {
  static const std::map<std::string, lw_format> formats = {
      {"json", LW_FORMAT_JSON}, {"csv", LW_FORMAT_CSV}, {"text", LW_FORMAT_TEXT}};
  lw_config* cfg = nullptr;
  lw_status s = lw_config_new(&cfg);
  if (s != LW_OK) return report_error(s);
  std::unique_ptr<lw_config, void (*)(lw_config*)> guard(cfg, lw_config_free);

  if ((s = lw_config_set_format(cfg, formats.at(o.format))) != LW_OK) return report_error(s);
  if (cmd != "classify") {
    if ((s = lw_config_set_model(cfg, o.model.c_str())) != LW_OK) return report_error(s);
    if ((s = lw_config_set_order(cfg, o.order)) != LW_OK) return report_error(s);
    if ((s = lw_config_set_weight(cfg, o.weight.c_str())) != LW_OK) return report_error(s);
    if (!o.model_file.empty()) {
      std::ifstream f(o.model_file);
      if (!f) {
        std::cerr << "error: cannot read " << o.model_file << "\n";
        return 3;
      }
      std::stringstream ss;
      ss << f.rdbuf();
      if ((s = lw_config_set_model_json(cfg, ss.str().c_str())) != LW_OK) return report_error(s);
    }
  }

  lw_report* rep = nullptr;
  if (cmd == "enumerate")
    s = lw_enumerate(cfg, &rep);
  else if (cmd == "pipeline")
    s = lw_pipeline(cfg, &rep);
  else
    s = lw_classify(cfg, o.n, &rep);
  if (!rep) return report_error(s);
  std::unique_ptr<lw_report, void (*)(lw_report*)> rguard(rep, lw_report_free);
  if (int e = emit(rep, o.out)) return e;
  if (s != LW_OK) {
    std::cerr << "verification failed: " << lw_last_error() << "\n";
    return exit_code(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice walk verification"};
  app.set_version_flag("--version", lw_version());
  app.require_subcommand(1);
  Options o;
  o.order = default_order();

  std::vector<std::string> models;
  for (size_t i = 0; i < lw_model_count(); ++i) models.push_back(lw_model_name(i));

  auto common = [&](CLI::App* c, bool with_model) {
    if (with_model) {
      c->add_option("--model", o.model, "registered model")->check(CLI::IsMember(models))->capture_default_str();
      c->add_option("--order,-N", o.order, "truncation order N, data mod t^N (default: LATWALK_ORDER or 12)")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      c->add_option("--weight-p", o.weight, "weight p of the three-quadrant model")->capture_default_str();
    }
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    c->add_option("--out,-o", o.out, "output file (default stdout)");
  };

  auto* en = app.add_subcommand("enumerate", "count walks f(i,j;n) for n < N");
  common(en, true);
  en->add_option("--model-file", o.model_file, "JSON model description instead of --model")->check(CLI::ExistingFile);
  auto* pl = app.add_subcommand("pipeline", "run every verification stage and report");
  common(pl, true);
  auto* cl = app.add_subcommand("classify", "solvable k table for n equal roots");
  common(cl, false);
  cl->add_option("n", o.n, "number of roots, n >= 2")->required()->check(CLI::Range(2, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  return run(app.get_subcommands().front()->get_name(), o);
}
