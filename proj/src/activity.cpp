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

#include "noisekit/activity.hpp"

#include <cmath>

namespace noisekit {

ActivityMask detect_activity(const AudioClip& clip, LevelDbfs threshold,
                             double frame_ms) {
  const double exact = frame_ms * clip.sample_rate_hz / 1000.0;
  const Eigen::Index frame_len = static_cast<Eigen::Index>(std::llround(exact));
  if (frame_len <= 0 || std::abs(exact - static_cast<double>(frame_len)) > 1e-9) {
    throw Error("detect_activity: frame_ms " + std::to_string(frame_ms) +
                " does not map to a whole sample count at " +
                std::to_string(clip.sample_rate_hz) + " Hz");
  }
  if (clip.samples.size() < frame_len) {
    throw Error("detect_activity: clip shorter than one frame");
  }

  const Eigen::Index n_frames = clip.samples.size() / frame_len;
  ActivityMask mask;
  mask.frame_length_samples = frame_len;
  mask.active.resize(static_cast<std::size_t>(n_frames));
  // 10^(threshold/10) as mean-square avoids a log per frame.
  const double threshold_ms = std::pow(10.0, threshold.value / 10.0);
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const double mean_sq =
        clip.samples.segment(f * frame_len, frame_len).square().mean();
    mask.active[static_cast<std::size_t>(f)] = mean_sq > threshold_ms;
  }
  return mask;
}

LevelDbfs segmental_rms_dbfs(const AudioClip& clip, const ActivityMask& mask) {
  const Eigen::Index frame_len = mask.frame_length_samples;
  if (frame_len <= 0) throw Error("segmental_rms_dbfs: empty mask");
  double sum_sq = 0.0;
  Eigen::Index n_active = 0;
  for (std::size_t f = 0; f < mask.active.size(); ++f) {
    if (!mask.active[f]) continue;
    sum_sq += clip.samples
                  .segment(static_cast<Eigen::Index>(f) * frame_len, frame_len)
                  .square()
                  .sum();
    ++n_active;
  }
  if (n_active == 0) throw Error("segmental_rms_dbfs: no activity");
  const double ms = sum_sq / static_cast<double>(n_active * frame_len);
  if (ms <= 0.0) throw Error("segmental_rms_dbfs: silent active frames");
  return LevelDbfs{10.0 * std::log10(ms)};
}

ActivityMask mask_intersection(const ActivityMask& a, const ActivityMask& b) {
  if (a.frame_length_samples != b.frame_length_samples ||
      a.active.size() != b.active.size()) {
    throw Error("mask_intersection: frame geometry mismatch");
  }
  ActivityMask out = a;
  for (std::size_t i = 0; i < out.active.size(); ++i) {
    out.active[i] = a.active[i] && b.active[i];
  }
  return out;
}

}  // namespace noisekit
