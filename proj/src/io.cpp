#include "semcom/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "semcom/errors.hpp"

namespace semcom {

const char* method_name(Method m) {
  switch (m) {
    case Method::Hopfield: return "hopfield";
    case Method::VQ: return "vq";
    case Method::HopfieldRawSim: return "hopfield_raw";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "hopfield") return Method::Hopfield;
  if (name == "vq") return Method::VQ;
  if (name == "hopfield_raw") return Method::HopfieldRawSim;
  throw ConfigError("unknown method: " + name);
}

const char* corruption_mode_name(CorruptionMode m) {
  switch (m) {
    case CorruptionMode::None: return "none";
    case CorruptionMode::IdDesync: return "id_desync";
    case CorruptionMode::VecPerturb: return "vec_perturb";
  }
  return "unknown";
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string session_csv(const SessionLog& log) {
  std::ostringstream out;
  out << "t,hit,index,bits_id,bits_new,bits_res,bits_cue,s_eff,distortion,refresh\n";
  for (const auto& r : log.records) {
    out << r.t << ',' << r.hit << ',' << r.index << ',' << r.bits_id << ','
        << r.bits_new << ',' << r.bits_res << ',' << r.bits_cue << ','
        << format_double(r.s_eff) << ',' << format_double(r.distortion) << ','
        << r.refresh << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepCurve>& curves) {
  std::ostringstream out;
  out << "tau,method,hit_rate,bits_per_frame,mse,psnr,C_R,trials,stream_hash\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      char hash[32];
      std::snprintf(hash, sizeof(hash), "%016" PRIx64, p.stream_hash);
      out << format_double(p.tau) << ',' << method_name(curve.method) << ','
          << format_double(p.hit_rate) << ',' << format_double(p.bits_per_frame)
          << ',' << format_double(p.mse) << ',' << format_double(p.psnr_db) << ','
          << format_double(p.c_r) << ',' << p.trials << ',' << hash << '\n';
    }
  }
  return out.str();
}

std::string robustness_csv(const std::vector<RobustnessRow>& rows) {
  std::ostringstream out;
  out << "mode,level,method,bits_per_frame,refresh_count,delta_bits\n";
  for (const auto& r : rows) {
    out << corruption_mode_name(r.mode) << ',' << format_double(r.level) << ','
        << method_name(r.method) << ',' << format_double(r.bits_per_frame) << ','
        << r.refresh_count << ',' << r.delta_bits << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const MetricsReport& r) {
  return nlohmann::json{
      {"hit_rate", r.hit_rate},
      {"bits_per_frame", r.bits_per_frame},
      {"b_raw_total", r.b_raw_total},
      {"b_sem_total", r.b_sem_total},
      {"compression_ratio", r.compression_ratio},
      {"semantic_efficiency", r.semantic_efficiency},
      {"reasoning_capacity", r.reasoning_capacity},
      {"index_entropy", r.index_entropy},
      {"mean_mse", r.mean_mse},
      {"psnr_db", std::isfinite(r.psnr_db) ? nlohmann::json(r.psnr_db)
                                           : nlohmann::json("inf")},
  };
}

nlohmann::json to_json(const MemoryStore& store) {
  nlohmann::json slots = nlohmann::json::array();
  for (std::size_t s = 0; s < store.size(); ++s) {
    const auto& proto = store.slot_prototype(s);
    slots.push_back(nlohmann::json{
        {"prototype", std::vector<double>(proto.values().begin(), proto.values().end())},
        {"cue_bits", store.slot_cue(s).bits},
        {"source", store.slot_source(s)},
    });
  }
  return nlohmann::json{
      {"size", store.size()},
      {"capacity", store.capacity()},
      {"id_map", store.id_map()},
      {"slots", slots},
  };
}

nlohmann::json to_json(const Theorem2Report& r) {
  return nlohmann::json{
      {"mean_refresh_hopfield", r.hopfield.mean},
      {"ci_half_hopfield", r.hopfield.ci_half},
      {"mean_refresh_vq", r.vq.mean},
      {"ci_half_vq", r.vq.ci_half},
      {"predicted_factor", r.predicted_factor},
      {"slack", r.slack},
      {"rhs", r.rhs},
      {"bound_satisfied", r.bound_satisfied},
  };
}

nlohmann::json to_json(const CorollaryReport& r) {
  return nlohmann::json{
      {"measured_savings_bits", r.measured_savings},
      {"lower_bound_bits", r.lower_bound},
      {"slack_bits", r.slack},
      {"mean_refresh_vq", r.mean_refresh_vq},
      {"bound_satisfied", r.bound_satisfied},
  };
}

nlohmann::json to_json(const MonotonicityReport& r) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& viol : r.violations) {
    v.push_back(nlohmann::json{{"metric", viol.metric},
                               {"left_index", viol.left_index},
                               {"left_value", viol.left_value},
                               {"right_value", viol.right_value},
                               {"tolerance", viol.tolerance}});
  }
  return nlohmann::json{{"hit_rate_ok", r.hit_rate_ok},
                        {"capacity_ok", r.capacity_ok},
                        {"distortion_ok", r.distortion_ok},
                        {"violations", v}};
}

nlohmann::json to_json(const ParetoReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : r.dominated_pairs) pairs.push_back(nlohmann::json{i, j});
  return nlohmann::json{{"ok", r.ok}, {"dominated_pairs", pairs}};
}

nlohmann::json to_json(const BoostStats& r) {
  nlohmann::json per_eps = nlohmann::json::array();
  for (const auto& pe : r.per_epsilon) {
    per_eps.push_back(nlohmann::json{{"epsilon", pe.epsilon},
                                     {"mean_abs_residual", pe.mean_abs_residual},
                                     {"mean_residual", pe.mean_residual},
                                     {"mean_retrieval_sim", pe.mean_retrieval_sim},
                                     {"mean_query_cos", pe.mean_query_cos}});
  }
  return nlohmann::json{{"per_epsilon", per_eps}, {"loglog_slope", r.loglog_slope}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_frames_binary(const std::string& bin_path, const std::string& header_path,
                         const std::vector<Frame>& frames) {
  if (frames.empty()) throw Error("write_frames_binary: no frames");
  std::ofstream out(bin_path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + bin_path);
  for (const auto& f : frames) {
    for (double x : f.pixels) {
      float v = static_cast<float>(x);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
  nlohmann::json header{
      {"frames", frames.size()}, {"height", frames.front().h},
      {"width", frames.front().w}, {"channels", frames.front().c},
      {"dtype", "float32"},        {"order", "row_major_yxc"},
  };
  write_text_file(header_path, header.dump(2) + "\n");
}

std::vector<LatentVector> read_latents_csv(const std::string& path, std::size_t d) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  std::vector<LatentVector> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != d) {
      throw ConfigError("latents csv line " + std::to_string(lineno) + " has " +
                        std::to_string(row.size()) + " columns, expected " +
                        std::to_string(d));
    }
    out.push_back(normalize(row));
  }
  return out;
}

}  // namespace semcom
