#include "hrmlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hrmlab {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << contents;
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string trials_csv(const TrialBatch& batch) {
  const std::size_t k = batch.config.checks.top_k;
  std::string out = "n,p,replicate,seed,a_np,scaled_norm,offdiag_dev";
  for (std::size_t r = 1; r <= k; ++r) out += ",top" + std::to_string(r);
  out += '\n';
  for (const auto& rec : batch.records) {
    out += std::to_string(rec.n);
    out += ',';
    out += std::to_string(rec.p);
    out += ',';
    out += std::to_string(rec.replicate);
    out += ',';
    out += std::to_string(rec.seed);
    for (double v : {rec.a_np, rec.scaled_norm, rec.offdiag_dev}) {
      out += ',';
      append_double(out, v);
    }
    for (std::size_t r = 0; r < k; ++r) {
      out += ',';
      if (r < rec.top.size()) append_double(out, rec.top[r]);
    }
    out += '\n';
  }
  return out;
}

std::string checks_json(const TrialBatch& batch, const CheckSuite& checks) {
  nlohmann::json j = checks;
  j["config"] = batch.config;
  j["records"] = batch.records.size();
  return j.dump(2) + "\n";
}

void write_trials(const TrialBatch& batch, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "trials.csv", trials_csv(batch));
}

void write_checks(const TrialBatch& batch, const CheckSuite& checks, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "checks.json", checks_json(batch, checks));
}

void emit_report(const TrialBatch& batch, const CheckSuite& checks, const std::filesystem::path& out_dir) {
  write_trials(batch, out_dir);
  write_checks(batch, checks, out_dir);
}

}  // namespace hrmlab
