#include "dqpt/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dqpt/errors.hpp"

namespace dqpt {

namespace {

double wrap_2pi(double k) {
  double w = std::fmod(k, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void CustomModel::validate() const {
  if (k.empty()) throw ConfigError("custom model: empty table");
  if (d.size() != k.size())
    throw ConfigError("custom model: k and d tables differ in length");
  if (!d0.empty() && d0.size() != k.size())
    throw ConfigError("custom model: d0 table length mismatch");
  for (size_t i = 0; i < k.size(); ++i) {
    if (!(k[i] >= 0.0 && k[i] < kTwoPi))
      throw ConfigError("custom model: k nodes must lie in [0, 2pi)");
    if (i > 0 && !(k[i] > k[i - 1]))
      throw ConfigError("custom model: k nodes must be strictly increasing");
  }
}

namespace {

// Periodic linear interpolation over the table nodes; the segment from the
// last node wraps around to the first node + 2pi.
template <typename T>
T interp_periodic(const std::vector<double>& ks, const std::vector<T>& vals,
                  double k_query) {
  const double kq = wrap_2pi(k_query);
  const size_t n = ks.size();
  if (n == 1) return vals[0];
  auto it = std::upper_bound(ks.begin(), ks.end(), kq);
  size_t hi = static_cast<size_t>(it - ks.begin());
  size_t lo;
  double k_lo, k_hi, x = kq;
  if (hi == 0) {  // before the first node: wrap segment (last, first + 2pi)
    lo = n - 1;
    hi = 0;
    k_lo = ks[lo] - kTwoPi;
    k_hi = ks[0];
  } else if (hi == n) {  // after the last node
    lo = n - 1;
    hi = 0;
    k_lo = ks[lo];
    k_hi = ks[0] + kTwoPi;
  } else {
    lo = hi - 1;
    k_lo = ks[lo];
    k_hi = ks[hi];
  }
  const double w = (x - k_lo) / (k_hi - k_lo);
  return vals[lo] * (1.0 - w) + vals[hi] * w;
}

}  // namespace

Vec3 CustomModel::d_at(double k_query) const {
  validate();
  return interp_periodic(k, d, k_query);
}

double CustomModel::d0_at(double k_query) const {
  validate();
  if (d0.empty()) return 0.0;
  return interp_periodic(k, d0, k_query);
}

Vec3 d_vector(const ModelParams& m, double k) {
  return std::visit(
      overloaded{
          [&](const IsingParams& p) {
            return Vec3(0.0, std::sin(k), p.g - std::cos(k));
          },
          [&](const SshParams& p) {
            return Vec3((p.t + p.dt) + (p.t - p.dt) * std::cos(k),
                        (p.t - p.dt) * std::sin(k), 0.0);
          },
          [&](const KitaevParams& p) {
            return Vec3(0.0, p.delta * std::sin(k),
                        -p.mu / 2.0 - p.t * std::cos(k));
          },
          [&](const CustomModel& p) { return p.d_at(k); },
      },
      m);
}

double d0_scalar(const ModelParams& m, double k) {
  if (const auto* p = std::get_if<CustomModel>(&m)) return p->d0_at(k);
  return 0.0;
}

BandPair band_energies(const ModelParams& m, double k) {
  const double d0 = d0_scalar(m, k);
  const double dn = d_vector(m, k).norm();
  return {d0 - dn, d0 + dn};
}

bool same_family(const ModelParams& a, const ModelParams& b) {
  return a.index() == b.index();
}

void QuenchSpec::validate() const {
  momenta.validate();
  times.validate();
  if (!same_family(initial, final_))
    throw ConfigError("QuenchSpec: initial and final models must be the same family");
  if (const auto* ci = std::get_if<CustomModel>(&initial)) {
    const auto& cf = std::get<CustomModel>(final_);
    ci->validate();
    cf.validate();
    if (ci->k != cf.k)
      throw ConfigError("QuenchSpec: custom models must be tabulated on identical grids");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim
    size_t a = cell.find_first_not_of(" \t\r");
    size_t b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

CustomModel load_custom_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("custom model CSV: empty file");
  auto header = split_csv_line(line);
  const std::vector<std::string> expected = {"k", "dx", "dy", "dz", "d0"};
  if (header != expected)
    throw IoError("custom model CSV: header must be k,dx,dy,dz,d0");
  CustomModel m;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 5)
      throw IoError("custom model CSV: expected 5 columns at line " +
                    std::to_string(lineno));
    try {
      m.k.push_back(std::stod(cells[0]));
      m.d.emplace_back(std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]));
      m.d0.push_back(std::stod(cells[4]));
    } catch (const std::exception&) {
      throw IoError("custom model CSV: bad number at line " + std::to_string(lineno));
    }
  }
  m.validate();
  return m;
}

CustomModel load_custom_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open custom model CSV: " + path);
  return load_custom_csv(in);
}

}  // namespace dqpt
