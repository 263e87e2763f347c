#pragma once

#include <filesystem>
#include <string>

#include "hrmlab/checks.hpp"
#include "hrmlab/trial.hpp"

namespace hrmlab {

/// trials.csv contents: header `n,p,replicate,seed,a_np,scaled_norm,offdiag_dev,top1..topK`,
/// LF line endings, floats with 17 significant digits.
std::string trials_csv(const TrialBatch& batch);

/// checks.json contents (configuration echo plus every check report).
std::string checks_json(const TrialBatch& batch, const CheckSuite& checks);

void write_trials(const TrialBatch& batch, const std::filesystem::path& out_dir);
void write_checks(const TrialBatch& batch, const CheckSuite& checks, const std::filesystem::path& out_dir);

/// Writes both files into out_dir (created if missing).
void emit_report(const TrialBatch& batch, const CheckSuite& checks, const std::filesystem::path& out_dir);

}  // namespace hrmlab
