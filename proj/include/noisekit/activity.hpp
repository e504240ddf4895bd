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

#ifndef NOISEKIT_ACTIVITY_HPP
#define NOISEKIT_ACTIVITY_HPP

#include <vector>

#include "noisekit/audio.hpp"

namespace noisekit {

/// Frame-level energy gate. Non-overlapping frames; a trailing partial frame
/// is discarded rather than zero-padded so it cannot bias segmental RMS.
struct ActivityMask {
  Eigen::Index frame_length_samples = 0;
  std::vector<bool> active;

  Eigen::Index active_count() const {
    Eigen::Index n = 0;
    for (bool a : active) n += a;
    return n;
  }
};

struct ActivityParams {
  double threshold_dbfs = -50.0;
  double frame_ms = 20.0;
  /// When true, segmental levels for a speech/noise pair are computed over
  /// frames where both signals are active (intersection of masks) instead of
  /// each signal's own active frames.
  bool require_both_active = false;
};

/// Marks a frame active iff its frame RMS in dBFS exceeds `threshold`.
/// frame_ms must map to a whole number of samples; the clip must hold at
/// least one full frame.
ActivityMask detect_activity(const AudioClip& clip, LevelDbfs threshold,
                             double frame_ms);

inline ActivityMask detect_activity(const AudioClip& clip,
                                    const ActivityParams& params) {
  return detect_activity(clip, LevelDbfs{params.threshold_dbfs}, params.frame_ms);
}

/// RMS over the concatenation of active frames only, in dBFS.
/// Throws when the mask has no active frame.
LevelDbfs segmental_rms_dbfs(const AudioClip& clip, const ActivityMask& mask);

/// Intersection of two masks with identical frame geometry.
ActivityMask mask_intersection(const ActivityMask& a, const ActivityMask& b);

}  // namespace noisekit

#endif  // NOISEKIT_ACTIVITY_HPP
