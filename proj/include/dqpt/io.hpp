#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqpt/emulation.hpp"

namespace dqpt {

// File schemas. All numeric CSV fields are written with 17 significant
// digits so doubles round-trip exactly; +infinity serializes as "inf".

std::string format_double(double v);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_rate_csv(const std::string& path, const RateCurve& curve);
void write_texture_csv(const std::string& path, const TextureGrid& grid);
void write_records_csv(const std::string& path,
                       const std::vector<TomographyRecord>& records);

std::string critical_set_json(const CriticalSet& cs);
std::string device_params_json(const DeviceParams& dev);
DeviceParams device_params_from_json(const std::string& text);

std::uint64_t fnv1a64(const void* data, size_t n);
std::uint64_t hash_file(const std::string& path);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::uint64_t hash = 0;
};

/// Run manifest: config echo, version, seed, emitted files with content
/// hashes. Rerunning the echoed config must reproduce the hashes.
struct Manifest {
  std::string command;
  std::string config_json;  // resolved science parameters, reloadable
  std::uint64_t seed = 0;
  std::vector<ManifestEntry> files;
};

void write_manifest(const std::string& path, const Manifest& m);

}  // namespace dqpt
