#include "dqpt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dqpt/errors.hpp"
#include "dqpt/version.hpp"

namespace dqpt {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "k,t,bx,by,bz\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const Vec3& b = traj.states[i].vec();
    out << format_double(traj.k) << ',' << format_double(traj.times[i]) << ','
        << format_double(b.x()) << ',' << format_double(b.y()) << ','
        << format_double(b.z()) << '\n';
  }
}

void write_rate_csv(const std::string& path, const RateCurve& curve) {
  auto out = open_out(path);
  out << "t,f,n_modes\n";
  const std::string n =
      curve.n_modes < 0 ? "inf" : std::to_string(curve.n_modes);
  for (size_t i = 0; i < curve.times.size(); ++i)
    out << format_double(curve.times[i]) << ',' << format_double(curve.values[i])
        << ',' << n << '\n';
}

void write_texture_csv(const std::string& path, const TextureGrid& grid) {
  auto out = open_out(path);
  out << "k,t,s\n";
  for (size_t ik = 0; ik < grid.k_values.size(); ++ik)
    for (size_t it = 0; it < grid.t_values.size(); ++it)
      out << format_double(grid.k_values[ik]) << ','
          << format_double(grid.t_values[it]) << ','
          << format_double(grid.s[ik][it]) << '\n';
}

void write_records_csv(const std::string& path,
                       const std::vector<TomographyRecord>& records) {
  auto out = open_out(path);
  out << "k,t_index,bx_est,by_est,bz_est,fluctuation\n";
  for (const auto& r : records)
    out << format_double(r.k) << ',' << r.t_index << ','
        << format_double(r.b_est.x()) << ',' << format_double(r.b_est.y()) << ','
        << format_double(r.b_est.z()) << ',' << format_double(r.fluctuation)
        << '\n';
}

std::string critical_set_json(const CriticalSet& cs) {
  std::ostringstream out;
  out << "{\n  \"k_star\": ";
  if (cs.k_star)
    out << format_double(*cs.k_star);
  else
    out << "null";
  out << ",\n  \"period\": ";
  if (cs.k_star)
    out << format_double(cs.period);
  else
    out << "null";
  out << ",\n  \"t_c\": [";
  for (size_t i = 0; i < cs.t_c.size(); ++i)
    out << (i ? ", " : "") << format_double(cs.t_c[i]);
  out << "]\n}\n";
  return out.str();
}

std::string device_params_json(const DeviceParams& dev) {
  std::ostringstream out;
  out << "{\n"
      << "  \"f01_ghz\": " << format_double(dev.f01_ghz) << ",\n"
      << "  \"anharm_mhz\": " << format_double(dev.anharm_mhz) << ",\n"
      << "  \"t1_us\": " << format_double(dev.t1_us) << ",\n"
      << "  \"t2star_us\": " << format_double(dev.t2star_us) << ",\n"
      << "  \"t2echo_us\": " << format_double(dev.t2echo_us) << ",\n"
      << "  \"readout_ghz\": " << format_double(dev.readout_ghz) << ",\n"
      << "  \"chi_mhz\": " << format_double(dev.chi_mhz) << "\n}\n";
  return out.str();
}

namespace {

// Minimal flat-object JSON number extraction, enough for the device table.
double json_number(const std::string& text, const std::string& key,
                   double fallback) {
  const std::string quoted = "\"" + key + "\"";
  const size_t p = text.find(quoted);
  if (p == std::string::npos) return fallback;
  const size_t colon = text.find(':', p + quoted.size());
  if (colon == std::string::npos) return fallback;
  try {
    return std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw IoError("device JSON: bad value for " + key);
  }
}

}  // namespace

DeviceParams device_params_from_json(const std::string& text) {
  DeviceParams dev;
  dev.f01_ghz = json_number(text, "f01_ghz", dev.f01_ghz);
  dev.anharm_mhz = json_number(text, "anharm_mhz", dev.anharm_mhz);
  dev.t1_us = json_number(text, "t1_us", dev.t1_us);
  dev.t2star_us = json_number(text, "t2star_us", dev.t2star_us);
  dev.t2echo_us = json_number(text, "t2echo_us", dev.t2echo_us);
  dev.readout_ghz = json_number(text, "readout_ghz", dev.readout_ghz);
  dev.chi_mhz = json_number(text, "chi_mhz", dev.chi_mhz);
  dev.validate();
  return dev;
}

std::uint64_t fnv1a64(const void* data, size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for hashing: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  return fnv1a64(bytes.data(), bytes.size());
}

void write_manifest(const std::string& path, const Manifest& m) {
  auto out = open_out(path);
  out << "{\n"
      << "  \"command\": \"" << json_escape(m.command) << "\",\n"
      << "  \"version\": \"" << kVersion << "\",\n"
      << "  \"seed\": " << m.seed << ",\n"
      << "  \"config\": " << m.config_json << ",\n"
      << "  \"files\": [\n";
  for (size_t i = 0; i < m.files.size(); ++i) {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(m.files[i].hash));
    out << "    {\"path\": \"" << json_escape(m.files[i].path)
        << "\", \"fnv1a64\": \"" << hex << "\"}"
        << (i + 1 < m.files.size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
}

}  // namespace dqpt
