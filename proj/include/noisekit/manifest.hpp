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

#ifndef NOISEKIT_MANIFEST_HPP
#define NOISEKIT_MANIFEST_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace noisekit {

/// One corpus clip. Serialized as one JSON object per line.
///
/// `start_s` is an extension over the base schema: segment entries produced
/// by segment_clips reference a span of their source file instead of a
/// physical copy, so curation stays a manifest-level transformation.
/// `rt60_ms` carries room-impulse-response decay metadata for RIR manifests.
struct ClipManifestEntry {
  std::string clip_id;
  std::string path;
  double duration_s = 0.0;
  std::set<std::string> labels;
  std::optional<std::string> speaker_id;
  std::optional<std::string> chapter_id;
  std::optional<double> start_s;
  std::optional<double> rt60_ms;
};

std::string to_json_line(const ClipManifestEntry& entry);
ClipManifestEntry entry_from_json_line(const std::string& line);

std::vector<ClipManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<ClipManifestEntry>& entries,
                    const std::filesystem::path& path);

}  // namespace noisekit

#endif  // NOISEKIT_MANIFEST_HPP
