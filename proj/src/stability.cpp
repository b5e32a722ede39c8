#include "cablesim/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cablesim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRestVelocity = 1e-12;  // [m/s]
}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Stable: return "stable";
    case Classification::Oscillatory: return "oscillatory";
    case Classification::Unstable: return "unstable";
  }
  return "unknown";
}

double damping_bound(const Vec3& velocity, double mass, double dt,
                     const Vec3& force) {
  if (!(mass > 0)) throw ParameterError("mass must be > 0");
  if (!(dt > 0)) throw ParameterError("dt must be > 0");
  const double speed = velocity.norm();
  if (speed < kRestVelocity) return kInf;
  return (velocity * mass * dt + force).norm() / speed;
}

std::vector<DampingCheckEntry> check_damping(const CableSpec& spec,
                                             const Trajectory& trajectory) {
  if (trajectory.states.empty())
    throw ParameterError("check_damping: empty trajectory");
  std::vector<DampingCheckEntry> entries;
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    const CableState& s = trajectory.states[k];
    const ForceBreakdown& f = trajectory.force_records[k];
    if (!s.valid || !f.valid) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.fixed_mask[i]) continue;
      const Vec3 internal = f.stretch[i] + f.bend[i];
      const double bound = damping_bound(s.velocities[i], s.node_masses[i],
                                         spec.time_step, internal);
      entries.push_back({s.time, static_cast<int>(i), bound,
                         spec.damping_coefficient > bound});
    }
  }
  return entries;
}

double detect_instability(const Trajectory& trajectory, double position_limit,
                          double velocity_limit) {
  if (!(position_limit > 0) || !(velocity_limit > 0))
    throw ParameterError("instability limits must be > 0");
  if (trajectory.states.empty()) return kInf;

  const CableState& first = trajectory.states.front();
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : first.positions) centroid += p;
  centroid /= static_cast<double>(first.size());

  for (const CableState& s : trajectory.states) {
    if (!s.valid || !s.all_finite()) return s.time;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if ((s.positions[i] - centroid).norm() > position_limit) return s.time;
      if (s.velocities[i].norm() > velocity_limit) return s.time;
    }
  }
  return kInf;
}

OscillationMetrics oscillation_metrics(const std::vector<double>& trace,
                                       double sample_dt, double window) {
  const std::size_t n = trace.size();
  if (n < 8) throw ParameterError("oscillation_metrics: trace shorter than 8 samples");
  if (!(sample_dt > 0)) throw ParameterError("sample_dt must be > 0");

  OscillationMetrics m;

  // Dominant frequency: plain DFT magnitude (Goertzel per bin),
  // rectangular window, bin 0 excluded. Classification-grade, not
  // calibrated spectroscopy.
  const std::size_t half = n / 2;
  double best_mag2 = -1.0;
  std::size_t best_bin = 1;
  for (std::size_t k = 1; k <= half; ++k) {
    const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    const double coeff = 2.0 * std::cos(theta);
    double q1 = 0.0, q2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double q0 = trace[j] + coeff * q1 - q2;
      q2 = q1;
      q1 = q0;
    }
    const double mag2 = q1 * q1 + q2 * q2 - coeff * q1 * q2;
    if (mag2 > best_mag2) {
      best_mag2 = mag2;
      best_bin = k;
    }
  }
  m.dominant_frequency =
      static_cast<double>(best_bin) / (static_cast<double>(n) * sample_dt);

  // Final analysis window.
  std::size_t w_samples = static_cast<std::size_t>(std::lround(window / sample_dt));
  w_samples = std::clamp<std::size_t>(w_samples, 1, n);
  const std::size_t w_begin = n - w_samples;
  const double mean =
      std::accumulate(trace.begin() + w_begin, trace.end(), 0.0) /
      static_cast<double>(w_samples);
  const auto [mn_it, mx_it] = std::minmax_element(trace.begin() + w_begin, trace.end());
  const double span = *mx_it - *mn_it;
  if (span == 0.0)
    m.relative_amplitude = 0.0;
  else if (std::abs(mean) < 1e-12)
    m.relative_amplitude = kInf;
  else
    m.relative_amplitude = span / (2.0 * std::abs(mean));

  // Settling: first time after which the trace stays within +/-5% of the
  // final-window mean.
  const double tol = 0.05 * std::abs(mean);
  std::ptrdiff_t last_violation = -1;
  for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(n) - 1; j >= 0; --j) {
    if (std::abs(trace[static_cast<std::size_t>(j)] - mean) > tol) {
      last_violation = j;
      break;
    }
  }
  if (last_violation == static_cast<std::ptrdiff_t>(n) - 1)
    m.settling_time = kInf;  // still violating at the end of the trace
  else
    m.settling_time = static_cast<double>(last_violation + 1) * sample_dt;

  return m;
}

StabilityReport analyze(const Trajectory& trajectory, const CableSpec& spec,
                        int monitored_node, const StabilityOptions& options) {
  if (trajectory.states.empty()) throw ParameterError("analyze: empty trajectory");
  if (monitored_node < 0 ||
      monitored_node >= static_cast<int>(trajectory.states.front().size()))
    throw ParameterError("analyze: monitored_node out of range");

  StabilityReport report;
  report.time_to_instability = detect_instability(
      trajectory, options.position_limit, options.velocity_limit);

  // Scalar force trace at the monitored node over the valid prefix, at
  // uniform snapshot spacing (a trailing partial-stride sample is dropped).
  const double sample_dt = trajectory.record_stride * spec.time_step;
  std::vector<double> trace;
  trace.reserve(trajectory.states.size());
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    if (!trajectory.states[k].valid || !trajectory.force_records[k].valid) break;
    if (k > 0 &&
        std::abs((trajectory.sample_times[k] - trajectory.sample_times[k - 1]) -
                 sample_dt) > 1e-12 + 1e-9 * sample_dt)
      break;
    const double f = trajectory.force_records[k].total[monitored_node].norm();
    if (!std::isfinite(f)) break;
    trace.push_back(f);
  }

  if (trace.size() >= 8) {
    const double trace_duration = static_cast<double>(trace.size()) * sample_dt;
    report.oscillation = oscillation_metrics(
        trace, sample_dt, options.window_fraction * trace_duration);
    const std::size_t w =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(
                                     options.window_fraction *
                                     static_cast<double>(trace.size()))));
    report.peak_force_amplitude =
        *std::max_element(trace.end() - static_cast<std::ptrdiff_t>(w), trace.end());
  } else if (!trace.empty()) {
    report.peak_force_amplitude = *std::max_element(trace.begin(), trace.end());
    report.oscillation.settling_time = kInf;
  }

  if (std::isfinite(report.time_to_instability))
    report.classification = Classification::Unstable;
  else if (report.oscillation.relative_amplitude > options.oscillatory_threshold)
    report.classification = Classification::Oscillatory;
  else
    report.classification = Classification::Stable;
  return report;
}

}  // namespace cablesim
