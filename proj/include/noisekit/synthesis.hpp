// Copyright 2026 The noisekit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEKIT_SYNTHESIS_HPP
#define NOISEKIT_SYNTHESIS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "noisekit/activity.hpp"
#include "noisekit/audio.hpp"
#include "noisekit/manifest.hpp"
#include "noisekit/rng.hpp"

namespace noisekit {

/// Everything needed to reproduce one noisy clip bit-for-bit.
struct MixRecipe {
  std::vector<std::string> speech_clip_ids;
  std::vector<std::string> noise_clip_ids;
  double snr_db = 0.0;
  LevelDbfs target_level_dbfs{-25.0};
  std::optional<std::string> rir_id;
  double duration_s = 30.0;
  std::uint64_t seed = 0;
};

/// Full provenance of one synthesized clip.
struct MixRecord {
  MixRecipe recipe;
  double noise_gain = 1.0;
  double level_gain = 1.0;
  double clipping_rescale = 1.0;
  LevelDbfs achieved_rms_dbfs{0.0};
  double achieved_snr_db = 0.0;
  std::string output_path;  // noisy mixture
  std::string clean_path;
  std::string noise_path;
};

std::string to_json_line(const MixRecord& record);
MixRecord mix_record_from_json_line(const std::string& line);
std::vector<MixRecord> read_mix_records(const std::filesystem::path& path);

/// Resolves clip ids to waveforms.
class ClipSource {
 public:
  virtual ~ClipSource() = default;
  virtual AudioClip load(const std::string& clip_id) const = 0;
};

/// Manifest-backed source: reads each entry's WAV, honoring `start_s` spans.
class ManifestClipSource : public ClipSource {
 public:
  explicit ManifestClipSource(std::vector<ClipManifestEntry> entries,
                              std::filesystem::path base_dir = {});
  AudioClip load(const std::string& clip_id) const override;
  const std::vector<ClipManifestEntry>& entries() const { return entries_; }

 private:
  std::vector<ClipManifestEntry> entries_;
  std::filesystem::path base_dir_;
};

/// Concatenates source clips in an order drawn from `rng` and trims the tail
/// so the output lasts exactly `duration_s`. Errors when the sources cannot
/// fill the duration, reporting the deficit.
AudioClip build_long_clip(const std::vector<AudioClip>& sources,
                          double duration_s, Rng& rng);

struct MixAtSnrResult {
  AudioClip mixture;
  double noise_gain = 1.0;
};

/// Scales the noise so the segmental SNR of (speech, scaled noise) equals
/// `snr_db`, then adds. Segmental levels come from energy-active frames of
/// each signal (or of both, when params.require_both_active is set).
MixAtSnrResult mix_at_segmental_snr(const AudioClip& speech,
                                    const AudioClip& noise, double snr_db,
                                    const ActivityParams& params);

/// Full linear convolution with the RIR, truncated to the input length and
/// renormalized to the input's original RMS so reverb energy does not shift
/// SNR accounting.
AudioClip convolve_rir(const AudioClip& clip, const AudioClip& rir);

/// Measured segmental SNR of a stored clean/noise pair. The activity gate is
/// shifted by the gains applied after mixing (recorded in the MixRecord) so
/// it matches the gate used at mix time; the detector is gain-consistent, so
/// the masks agree even when the pair was stored at a very low target level.
double measure_pair_snr(const AudioClip& clean, const AudioClip& noise,
                        const ActivityParams& params,
                        double clean_threshold_shift_db,
                        double noise_threshold_shift_db);

struct SynthesisContext {
  const ClipSource* speech = nullptr;
  const ClipSource* noise = nullptr;
  const ClipSource* rirs = nullptr;  // required only for recipes with rir_id
  ActivityParams activity;
  double clip_ceiling = kDefaultClipCeiling;
  /// Store the dry clean as the reference instead of the reverberant one
  /// (for dereverberation-style targets).
  bool store_dry_clean = false;
  std::filesystem::path out_dir;
  std::string set_name = "train";
};

/// Runs the whole pipeline for one recipe: build speech, optional reverb,
/// build noise, mix at segmental SNR, normalize to target level, clipping
/// guard, write noisy/clean/noise WAVs. Identical recipe -> identical bytes.
/// Any stage failure is rethrown with the stage name attached.
MixRecord synthesize(const MixRecipe& recipe, int recipe_index,
                     const SynthesisContext& ctx);

/// Same pipeline without touching the filesystem; used by dry runs and tests.
struct SynthesizedBuffers {
  MixRecord record;  // paths left empty
  AudioClip noisy;
  AudioClip clean;
  AudioClip noise;
};
SynthesizedBuffers synthesize_buffers(const MixRecipe& recipe,
                                      const SynthesisContext& ctx);

struct RecipeSampling {
  double snr_lo = 0.0;
  double snr_hi = 40.0;
  double level_lo = -35.0;
  double level_hi = -15.0;
  double duration_s = 30.0;
  double reverb_probability = 0.0;
};

/// Draws `count` recipes. SNR and target level are uniform over their
/// ranges; speech clips come from a single speaker per recipe and noise
/// clips are drawn without replacement. Recipe i derives its own generator
/// from (master_seed, i), so the list does not depend on evaluation order.
std::vector<MixRecipe> sample_recipes(const RecipeSampling& cfg,
                                      const std::vector<ClipManifestEntry>& speech,
                                      const std::vector<ClipManifestEntry>& noise,
                                      const std::vector<ClipManifestEntry>& rirs,
                                      int count, std::uint64_t master_seed);

}  // namespace noisekit

#endif  // NOISEKIT_SYNTHESIS_HPP
