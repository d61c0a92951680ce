#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latwalk/gq.hpp"
#include "latwalk/walk.hpp"

namespace lw {

inline constexpr int kPipelineSchemaVersion = 1;

struct PipelineConfig {
  std::string model = "three-quadrant-nenws";
  int N = 12;
  GQ p = GQ(1);
};

enum class StageStatus { Pass, Fail, Skipped };
std::string status_name(StageStatus s);

struct StageResult {
  std::string name;
  StageStatus status = StageStatus::Skipped;
  std::optional<mpq_class> first_failure;
  std::string note;
  std::string detail;  // JSON object
};

struct PipelineReport {
  PipelineConfig config;
  std::vector<StageResult> stages;
  bool ok = false;
  std::optional<std::string> failed_stage;
  std::string json() const;
  std::string csv() const;
  std::string text() const;
};

// Stage order: enumerate, kernel_roots, orbit_sum, assemble, check_automorphism, eigen_classify,
// balanced_null_vector, derive_separated_cubic, verify_poly_final, jacobian_nondegeneracy.
// Stages that do not apply to the model are skipped; the first failing stage halts the run.
// Throws ConfigError for an unknown model or N < 1.
PipelineReport run_pipeline(const PipelineConfig& cfg);

}  // namespace lw
