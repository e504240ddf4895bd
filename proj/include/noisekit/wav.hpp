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

#ifndef NOISEKIT_WAV_HPP
#define NOISEKIT_WAV_HPP

#include <filesystem>

#include "noisekit/audio.hpp"

namespace noisekit {

/// Reads a RIFF/WAVE file. Only 16-bit integer PCM, mono, 16 kHz is
/// accepted; anything else is rejected with a diagnostic naming the
/// offending field. Integer samples are scaled by 1/32768.
AudioClip read_wav(const std::filesystem::path& path);

/// Writes 16-bit PCM mono. All samples must already be in [-1, 1]
/// (run the clipping guard first). Quantization is round-to-nearest with a
/// scale of 32768, clamped to the int16 range, so a read-back differs from
/// the original by at most one quantization step.
void write_wav(const AudioClip& clip, const std::filesystem::path& path);

}  // namespace noisekit

#endif  // NOISEKIT_WAV_HPP
