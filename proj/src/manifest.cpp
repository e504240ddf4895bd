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

#include "noisekit/manifest.hpp"

#include <fstream>

#include "json.hpp"
#include "noisekit/error.hpp"

namespace noisekit {

using nlohmann::json;

std::string to_json_line(const ClipManifestEntry& entry) {
  json j;
  j["clip_id"] = entry.clip_id;
  j["path"] = entry.path;
  j["duration_s"] = entry.duration_s;
  j["labels"] = entry.labels;
  if (entry.speaker_id) j["speaker_id"] = *entry.speaker_id;
  if (entry.chapter_id) j["chapter_id"] = *entry.chapter_id;
  if (entry.start_s) j["start_s"] = *entry.start_s;
  if (entry.rt60_ms) j["rt60_ms"] = *entry.rt60_ms;
  return j.dump();
}

ClipManifestEntry entry_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("manifest: bad JSON line: ") + e.what());
  }
  ClipManifestEntry e;
  try {
    e.clip_id = j.at("clip_id").get<std::string>();
    e.path = j.value("path", std::string{});
    e.duration_s = j.at("duration_s").get<double>();
    if (j.contains("labels")) e.labels = j["labels"].get<std::set<std::string>>();
    if (j.contains("speaker_id")) e.speaker_id = j["speaker_id"].get<std::string>();
    if (j.contains("chapter_id")) e.chapter_id = j["chapter_id"].get<std::string>();
    if (j.contains("start_s")) e.start_s = j["start_s"].get<double>();
    if (j.contains("rt60_ms")) e.rt60_ms = j["rt60_ms"].get<double>();
  } catch (const json::exception& ex) {
    throw InputError(std::string("manifest: bad entry: ") + ex.what());
  }
  if (e.duration_s <= 0.0) {
    throw InputError("manifest: entry " + e.clip_id + " has non-positive duration");
  }
  return e;
}

std::vector<ClipManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("manifest: cannot open " + path.string());
  std::vector<ClipManifestEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    entries.push_back(entry_from_json_line(line));
  }
  return entries;
}

void write_manifest(const std::vector<ClipManifestEntry>& entries,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("manifest: cannot open " + path.string());
  for (const auto& e : entries) out << to_json_line(e) << '\n';
}

}  // namespace noisekit
