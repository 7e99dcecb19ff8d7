#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "semcom/calibrate.hpp"
#include "semcom/metrics.hpp"
#include "semcom/protocol.hpp"
#include "semcom/runner.hpp"
#include "semcom/scenarios.hpp"
#include "semcom/theory.hpp"

namespace semcom {

const char* method_name(Method m);
Method method_from_name(const std::string& name);
const char* corruption_mode_name(CorruptionMode m);

// Round-trip decimal formatting ("%.17g", locale-independent).
std::string format_double(double x);

std::string session_csv(const SessionLog& log);
std::string sweep_csv(const std::vector<SweepCurve>& curves);

struct RobustnessRow {
  CorruptionMode mode = CorruptionMode::None;
  double level = 0.0;
  Method method = Method::Hopfield;
  double bits_per_frame = 0.0;
  long refresh_count = 0;
  long delta_bits = 0;  // VQ total - Hopfield total over paired trials
};
std::string robustness_csv(const std::vector<RobustnessRow>& rows);

nlohmann::json to_json(const MetricsReport& r);
nlohmann::json to_json(const MemoryStore& store);
nlohmann::json to_json(const Theorem2Report& r);
nlohmann::json to_json(const CorollaryReport& r);
nlohmann::json to_json(const MonotonicityReport& r);
nlohmann::json to_json(const ParetoReport& r);
nlohmann::json to_json(const BoostStats& r);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Raw frame export: row-major float32 data plus a JSON header describing it.
void write_frames_binary(const std::string& bin_path, const std::string& header_path,
                         const std::vector<Frame>& frames);

// One row per frame, d comma-separated columns. Rows are renormalized onto
// the unit sphere.
std::vector<LatentVector> read_latents_csv(const std::string& path, std::size_t d);

}  // namespace semcom
