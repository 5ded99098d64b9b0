#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vrid/core/types.hpp"
#include "vrid/ingestion/manifest.hpp"

namespace vrid::ingestion {

/// Per-user generative parameters of the synthetic cohort.
struct SynthUserProfile {
  double height_mean = 1.75;        // m
  double arm_span = 1.75;           // m
  double motion_amplitude = 0.25;   // m
  double motion_frequency = 1.0;    // Hz
  double tremor_std = 0.005;        // m (rad for orientation jitter)
  double uplink_rate = 100.0;       // packets/s
  double downlink_rate = 500.0;     // packets/s
  double mean_packet_size = 700.0;  // bytes
  double packet_size_std = 100.0;   // bytes
  std::uint64_t seed = 0;           // drives user-specific motion phases

  friend bool operator==(const SynthUserProfile&, const SynthUserProfile&) = default;
};

/// Game-level modifiers applied identically to every user.
struct SynthGameProfile {
  std::string id = "synth";
  std::string category = "fast";
  double uplink_rate_offset = 0.0;
  double downlink_rate_offset = 0.0;
  double motion_frequency_scale = 1.0;
  double motion_amplitude_scale = 1.0;
  /// Cyclically permutes the spatial axes (x, y, z) -> (y, z, x) of every
  /// device and the device roles (head, left, right) -> (left, right, head),
  /// so no movement channel keeps its meaning.
  bool permute_channels = false;
};

/// Documented sampling ranges for draw_profiles().
struct ProfileRanges {
  double height_min = 1.50, height_max = 1.95;
  double arm_ratio_min = 0.95, arm_ratio_max = 1.05;  // arm span / height
  double amplitude_min = 0.10, amplitude_max = 0.40;
  double frequency_min = 0.5, frequency_max = 2.5;
  double tremor_min = 0.002, tremor_max = 0.010;
  double uplink_min = 50.0, uplink_max = 200.0;
  double downlink_min = 200.0, downlink_max = 1000.0;
  double size_mean_min = 300.0, size_mean_max = 1200.0;
  double size_std_min = 50.0, size_std_max = 200.0;
};

/// Draws n profiles. Heights lie on an evenly spaced grid over
/// [height_min, height_max] assigned in seeded random order, so adjacent
/// users (by height) differ by (height_max - height_min) / (n - 1); every
/// other parameter is uniform over its range.
std::vector<SynthUserProfile> draw_profiles(std::size_t n_users, std::uint64_t seed,
                                            const ProfileRanges& ranges = {});

struct CohortOptions {
  std::size_t n_users = 10;
  double minutes = 10.0;
  std::uint64_t seed = 0;
  /// Every user gets user 0's profile; noise streams stay independent.
  bool clone = false;
  std::vector<SynthGameProfile> games{SynthGameProfile{}};
  /// Explicit profiles (size must equal n_users); overrides draw_profiles.
  std::optional<std::vector<SynthUserProfile>> profiles;
  ProfileRanges ranges;
};

/// Zero-padded ids "u00", "u01", ... so lexical order equals index order.
std::string synthetic_user_id(std::size_t index, std::size_t n_users);

/// One user's trace in one game: 60 Hz movement on t = i / 60 plus Poisson
/// packet arrivals per direction with Gaussian sizes clamped to >= 1 byte.
Trace generate_trace(const SynthUserProfile& profile, const SynthGameProfile& game,
                     const std::string& user_id, double minutes, std::uint64_t noise_seed);

/// Profiles actually used for the cohort (after clone/explicit handling).
/// Throws ArgumentError if n_users < 2 or minutes < 1.
std::vector<SynthUserProfile> cohort_profiles(const CohortOptions& options);

/// Generates traces one at a time (user-major, then game), handing each to
/// `sink`. Deterministic given options.
void generate_synthetic_cohort(const CohortOptions& options,
                               const std::function<void(Trace&& trace)>& sink);

struct SynthCohort {
  DatasetManifest manifest;  // entries carry relative output paths
  std::vector<SynthUserProfile> profiles;
  std::vector<Trace> traces;
};

/// Materializes the whole cohort in memory.
SynthCohort generate_synthetic_cohort(const CohortOptions& options);

/// Writes `movement/<user>_<game>.csv`, `traffic/<user>_<game>.csv` and
/// `manifest.json` under `out_dir` while generating, without holding the
/// cohort in memory. Returns the manifest.
DatasetManifest write_synthetic_cohort(const CohortOptions& options,
                                       const std::filesystem::path& out_dir);

}  // namespace vrid::ingestion
