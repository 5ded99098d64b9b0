#include "vrid/ingestion/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vrid/core/quaternion.hpp"
#include "vrid/error.hpp"
#include "vrid/ingestion/csv.hpp"
#include "vrid/util/files.hpp"
#include "vrid/util/rng.hpp"

namespace vrid::ingestion {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Stream ids for derive_seed.
constexpr std::uint64_t kStreamHeights = 1;
constexpr std::uint64_t kStreamProfile = 2;
constexpr std::uint64_t kStreamNoise = 3;

Vec3 permute(const Vec3& v, bool on) { return on ? Vec3{v.y, v.z, v.x} : v; }

Quaternion permute(const Quaternion& q, bool on) { return on ? Quaternion{q.w, q.y, q.z, q.x} : q; }

std::vector<PacketRecord> poisson_stream(CounterRng& rng, double rate, double duration,
                                         double size_mean, double size_std, Direction dir) {
  std::vector<PacketRecord> out;
  if (!(rate > 0.0)) return out;
  out.reserve(static_cast<std::size_t>(rate * duration * 1.05) + 16);
  double t = rng.exponential(rate);
  while (t < duration) {
    const double size = std::round(rng.normal(size_mean, size_std));
    PacketRecord p;
    p.t = t;
    p.size = static_cast<std::uint32_t>(std::max(1.0, size));
    p.direction = dir;
    out.push_back(p);
    t += rng.exponential(rate);
  }
  return out;
}

void check_options(const CohortOptions& options) {
  if (options.n_users < 2) throw ArgumentError("need at least 2 users");
  if (!(options.minutes >= 1.0)) throw ArgumentError("minutes must be >= 1");
  if (options.games.empty()) throw ArgumentError("need at least one game");
  if (options.profiles && options.profiles->size() != options.n_users) {
    throw ArgumentError("explicit profile count must equal n_users");
  }
}

}  // namespace

std::vector<SynthUserProfile> draw_profiles(std::size_t n_users, std::uint64_t seed,
                                            const ProfileRanges& r) {
  if (n_users < 2) throw ArgumentError("need at least 2 users");
  std::vector<std::size_t> slot(n_users);
  for (std::size_t i = 0; i < n_users; ++i) slot[i] = i;
  CounterRng shuffle_rng(derive_seed(seed, kStreamHeights));
  for (std::size_t i = n_users - 1; i > 0; --i) {
    std::swap(slot[i], slot[shuffle_rng.below(i + 1)]);
  }
  const double step = (r.height_max - r.height_min) / static_cast<double>(n_users - 1);

  std::vector<SynthUserProfile> out(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    CounterRng rng(derive_seed(derive_seed(seed, kStreamProfile), u));
    SynthUserProfile& p = out[u];
    p.height_mean = r.height_min + step * static_cast<double>(slot[u]);
    p.arm_span = p.height_mean * rng.uniform(r.arm_ratio_min, r.arm_ratio_max);
    p.motion_amplitude = rng.uniform(r.amplitude_min, r.amplitude_max);
    p.motion_frequency = rng.uniform(r.frequency_min, r.frequency_max);
    p.tremor_std = rng.uniform(r.tremor_min, r.tremor_max);
    p.uplink_rate = rng.uniform(r.uplink_min, r.uplink_max);
    p.downlink_rate = rng.uniform(r.downlink_min, r.downlink_max);
    p.mean_packet_size = rng.uniform(r.size_mean_min, r.size_mean_max);
    p.packet_size_std = rng.uniform(r.size_std_min, r.size_std_max);
    p.seed = rng.next();
  }
  return out;
}

std::string synthetic_user_id(std::size_t index, std::size_t n_users) {
  std::size_t width = 2;
  for (std::size_t n = n_users - 1; n >= 100; n /= 10) ++width;
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "u" + digits;
}

Trace generate_trace(const SynthUserProfile& profile, const SynthGameProfile& game,
                     const std::string& user_id, double minutes, std::uint64_t noise_seed) {
  Trace trace;
  trace.user_id = user_id;
  trace.game_id = game.id;
  trace.duration = minutes * 60.0;

  CounterRng phase_rng(profile.seed);
  const double phase_head = phase_rng.uniform(0.0, kTwoPi);
  const double phase_left = phase_rng.uniform(0.0, kTwoPi);
  const double phase_right = phase_rng.uniform(0.0, kTwoPi);
  const double phase_yaw = phase_rng.uniform(0.0, kTwoPi);

  const double f = profile.motion_frequency * game.motion_frequency_scale;
  const double amp = profile.motion_amplitude * game.motion_amplitude_scale;
  const double h = profile.height_mean;
  const double arm = profile.arm_span;
  const double sigma = profile.tremor_std;
  const Vec3 up{0.0, 1.0, 0.0};
  const Vec3 side{1.0, 0.0, 0.0};

  CounterRng noise(noise_seed);
  auto jitter = [&] { return noise.normal(0.0, sigma); };

  const auto n_samples =
      static_cast<std::size_t>(std::llround(trace.duration * kNominalSampleRate));
  trace.movement.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / kNominalSampleRate;
    MovementSample& s = trace.movement[i];
    s.t = t;

    const double wh = kTwoPi * 0.5 * f * t + phase_head;
    const double wl = kTwoPi * f * t + phase_left;
    const double wr = kTwoPi * f * t + phase_right;

    Vec3 head{0.03 * amp * std::sin(wh) + jitter(), h + jitter(),
              0.03 * amp * std::cos(wh) + jitter()};
    Vec3 left{0.2 * arm + amp * std::sin(wl) + jitter(),
              h - 0.45 + 0.5 * amp * std::cos(wl) + jitter(),
              -0.3 * arm + 0.3 * amp * std::cos(wl) + jitter()};
    Vec3 right{0.2 * arm + amp * std::sin(wr) + jitter(),
               h - 0.45 + 0.5 * amp * std::cos(wr) + jitter(),
               0.3 * arm + 0.3 * amp * std::cos(wr) + jitter()};

    const double yaw = amp * std::sin(kTwoPi * 0.1 * f * t + phase_yaw) + jitter();
    const Quaternion q_head = multiply(axis_angle(up, yaw), axis_angle(side, jitter()));
    const Quaternion q_left = multiply(axis_angle(up, yaw + 0.3 + 0.5 * amp * std::sin(wl)),
                                       axis_angle(side, -0.4 + jitter()));
    const Quaternion q_right = multiply(axis_angle(up, yaw - 0.3 + 0.5 * amp * std::sin(wr)),
                                        axis_angle(side, -0.4 + jitter()));

    const bool p = game.permute_channels;
    s.head = {permute(head, p), permute(q_head, p)};
    s.left = {permute(left, p), permute(q_left, p)};
    s.right = {permute(right, p), permute(q_right, p)};
    if (p) {
      // device roles rotate too, so inter-device geometry moves channels as well
      std::swap(s.head, s.left);
      std::swap(s.head, s.right);
    }
  }

  CounterRng traffic_rng(derive_seed(noise_seed, 1));
  auto ul =
      poisson_stream(traffic_rng, profile.uplink_rate + game.uplink_rate_offset, trace.duration,
                     profile.mean_packet_size, profile.packet_size_std, Direction::Uplink);
  auto dl =
      poisson_stream(traffic_rng, profile.downlink_rate + game.downlink_rate_offset, trace.duration,
                     profile.mean_packet_size, profile.packet_size_std, Direction::Downlink);
  trace.traffic.resize(ul.size() + dl.size());
  std::merge(ul.begin(), ul.end(), dl.begin(), dl.end(), trace.traffic.begin(),
             [](const PacketRecord& a, const PacketRecord& b) { return a.t < b.t; });
  return trace;
}

std::vector<SynthUserProfile> cohort_profiles(const CohortOptions& options) {
  check_options(options);
  std::vector<SynthUserProfile> profiles =
      options.profiles ? *options.profiles
                       : draw_profiles(options.n_users, options.seed, options.ranges);
  if (options.clone) std::fill(profiles.begin() + 1, profiles.end(), profiles.front());
  return profiles;
}

void generate_synthetic_cohort(const CohortOptions& options,
                               const std::function<void(Trace&& trace)>& sink) {
  const auto profiles = cohort_profiles(options);
  const std::uint64_t noise_root = derive_seed(options.seed, kStreamNoise);
  for (std::size_t u = 0; u < options.n_users; ++u) {
    const std::string uid = synthetic_user_id(u, options.n_users);
    for (std::size_t g = 0; g < options.games.size(); ++g) {
      const std::uint64_t noise_seed = derive_seed(derive_seed(noise_root, u), g);
      sink(generate_trace(profiles[u], options.games[g], uid, options.minutes, noise_seed));
    }
  }
}

namespace {

DatasetManifest cohort_manifest_skeleton(const CohortOptions& options) {
  DatasetManifest m;
  for (const auto& g : options.games) m.games.push_back({g.id, g.category});
  return m;
}

ManifestEntry entry_for(const Trace& t) {
  ManifestEntry e;
  e.user_id = t.user_id;
  e.game_id = t.game_id;
  const std::string stem = t.user_id + "_" + t.game_id + ".csv";
  e.movement_path = std::filesystem::path("movement") / stem;
  e.traffic_path = std::filesystem::path("traffic") / stem;
  e.duration_s = t.duration;
  return e;
}

}  // namespace

SynthCohort generate_synthetic_cohort(const CohortOptions& options) {
  SynthCohort cohort;
  cohort.profiles = cohort_profiles(options);
  cohort.manifest = cohort_manifest_skeleton(options);
  generate_synthetic_cohort(options, [&](Trace&& t) {
    cohort.manifest.entries.push_back(entry_for(t));
    cohort.traces.push_back(std::move(t));
  });
  return cohort;
}

DatasetManifest write_synthetic_cohort(const CohortOptions& options,
                                       const std::filesystem::path& out_dir) {
  check_options(options);
  DatasetManifest m = cohort_manifest_skeleton(options);
  m.base_dir = out_dir;
  generate_synthetic_cohort(options, [&](Trace&& t) {
    ManifestEntry e = entry_for(t);
    write_file_atomic(out_dir / e.movement_path, write_movement_csv(t.movement));
    write_file_atomic(out_dir / e.traffic_path, write_packet_csv(t.traffic));
    m.entries.push_back(std::move(e));
  });
  write_file_atomic(out_dir / "manifest.json", manifest_to_json(m));
  return m;
}

}  // namespace vrid::ingestion
