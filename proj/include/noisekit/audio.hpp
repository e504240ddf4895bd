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

#ifndef NOISEKIT_AUDIO_HPP
#define NOISEKIT_AUDIO_HPP

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "noisekit/error.hpp"

namespace noisekit {

/// The whole pipeline runs at 16 kHz mono. Mismatched inputs are rejected,
/// never resampled.
inline constexpr int kPipelineSampleRateHz = 16000;

/// Default peak ceiling for the clipping guard; leaves quantization headroom.
inline constexpr double kDefaultClipCeiling = 0.99;

/// Mono waveform, samples nominally in [-1, 1].
struct AudioClip {
  Eigen::ArrayXd samples;
  int sample_rate_hz = kPipelineSampleRateHz;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Level in dB relative to full scale; 0 dBFS is an RMS of 1.0 (a full-scale
/// square wave). Always finite: silence is reported as an error upstream.
struct LevelDbfs {
  double value = 0.0;
};

/// Linear RMS of any Eigen array expression.
template <typename Derived>
double rms(const Eigen::ArrayBase<Derived>& x) {
  if (x.size() == 0) throw Error("rms: empty signal");
  return std::sqrt(x.square().sum() / static_cast<double>(x.size()));
}

/// RMS level in dBFS. Throws on silence so the result is always finite.
template <typename Derived>
LevelDbfs rms_dbfs(const Eigen::ArrayBase<Derived>& x) {
  const double r = rms(x);
  if (r <= 0.0) throw Error("rms_dbfs: silent clip");
  return LevelDbfs{20.0 * std::log10(r)};
}

inline LevelDbfs rms_dbfs(const AudioClip& clip) {
  return rms_dbfs(clip.samples);
}

/// Linear gain that moves level `from` to level `to`.
inline double gain_for_level_change(LevelDbfs from, LevelDbfs to) {
  return std::pow(10.0, (to.value - from.value) / 20.0);
}

struct GainResult {
  AudioClip clip;
  double applied_gain = 1.0;
};

/// Scales the clip so its RMS equals `target`. Throws on silent input.
inline GainResult apply_gain_to_level(const AudioClip& clip, LevelDbfs target) {
  const LevelDbfs current = rms_dbfs(clip);
  const double gain = gain_for_level_change(current, target);
  return GainResult{AudioClip{clip.samples * gain, clip.sample_rate_hz}, gain};
}

struct ClipGuardResult {
  AudioClip clip;
  double rescale = 1.0;  // < 1.0 when the guard had to pull the peak down
};

/// Rescales the clip so its peak does not exceed `ceiling`. A peak exactly at
/// the ceiling is left untouched. The rescale factor is returned so the
/// achieved level stays recoverable from the MixRecord.
inline ClipGuardResult clipping_guard(const AudioClip& clip,
                                      double ceiling = kDefaultClipCeiling) {
  if (!(ceiling > 0.0 && ceiling <= 1.0)) {
    throw Error("clipping_guard: ceiling must be in (0, 1]");
  }
  const double peak = clip.samples.abs().maxCoeff();
  if (peak <= ceiling) {
    return ClipGuardResult{clip, 1.0};
  }
  const double rescale = ceiling / peak;
  return ClipGuardResult{AudioClip{clip.samples * rescale, clip.sample_rate_hz},
                         rescale};
}

}  // namespace noisekit

#endif  // NOISEKIT_AUDIO_HPP
