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

#include "noisekit/synthesis.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

#include "json.hpp"
#include "noisekit/wav.hpp"

namespace noisekit {

using nlohmann::json;

namespace {

json recipe_to_json(const MixRecipe& r) {
  json j;
  j["speech_clip_ids"] = r.speech_clip_ids;
  j["noise_clip_ids"] = r.noise_clip_ids;
  j["snr_db"] = r.snr_db;
  j["target_level_dbfs"] = r.target_level_dbfs.value;
  if (r.rir_id) j["rir_id"] = *r.rir_id;
  j["duration_s"] = r.duration_s;
  j["seed"] = r.seed;
  return j;
}

MixRecipe recipe_from_json(const json& j) {
  MixRecipe r;
  r.speech_clip_ids = j.at("speech_clip_ids").get<std::vector<std::string>>();
  r.noise_clip_ids = j.at("noise_clip_ids").get<std::vector<std::string>>();
  r.snr_db = j.at("snr_db").get<double>();
  r.target_level_dbfs = LevelDbfs{j.at("target_level_dbfs").get<double>()};
  if (j.contains("rir_id")) r.rir_id = j["rir_id"].get<std::string>();
  r.duration_s = j.at("duration_s").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(std::string("synthesize[") + stage + "]: " + e.what());
  }
}

}  // namespace

std::string to_json_line(const MixRecord& record) {
  json j;
  j["recipe"] = recipe_to_json(record.recipe);
  j["noise_gain"] = record.noise_gain;
  j["level_gain"] = record.level_gain;
  j["clipping_rescale"] = record.clipping_rescale;
  j["achieved_rms_dbfs"] = record.achieved_rms_dbfs.value;
  j["achieved_snr_db"] = record.achieved_snr_db;
  j["output_path"] = record.output_path;
  j["clean_path"] = record.clean_path;
  j["noise_path"] = record.noise_path;
  return j.dump();
}

MixRecord mix_record_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("mix record: bad JSON line: ") + e.what());
  }
  try {
    MixRecord r;
    r.recipe = recipe_from_json(j.at("recipe"));
    r.noise_gain = j.at("noise_gain").get<double>();
    r.level_gain = j.at("level_gain").get<double>();
    r.clipping_rescale = j.at("clipping_rescale").get<double>();
    r.achieved_rms_dbfs = LevelDbfs{j.at("achieved_rms_dbfs").get<double>()};
    r.achieved_snr_db = j.at("achieved_snr_db").get<double>();
    r.output_path = j.value("output_path", std::string{});
    r.clean_path = j.value("clean_path", std::string{});
    r.noise_path = j.value("noise_path", std::string{});
    return r;
  } catch (const json::exception& ex) {
    throw InputError(std::string("mix record: bad entry: ") + ex.what());
  }
}

std::vector<MixRecord> read_mix_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("mix records: cannot open " + path.string());
  std::vector<MixRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(mix_record_from_json_line(line));
  }
  return records;
}

ManifestClipSource::ManifestClipSource(std::vector<ClipManifestEntry> entries,
                                       std::filesystem::path base_dir)
    : entries_(std::move(entries)), base_dir_(std::move(base_dir)) {}

AudioClip ManifestClipSource::load(const std::string& clip_id) const {
  const auto it =
      std::find_if(entries_.begin(), entries_.end(),
                   [&](const ClipManifestEntry& e) { return e.clip_id == clip_id; });
  if (it == entries_.end()) {
    throw InputError("clip source: unknown clip id " + clip_id);
  }
  std::filesystem::path p(it->path);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  AudioClip clip = read_wav(p);
  if (it->start_s) {
    const auto start =
        static_cast<Eigen::Index>(std::llround(*it->start_s * clip.sample_rate_hz));
    const auto len = static_cast<Eigen::Index>(
        std::llround(it->duration_s * clip.sample_rate_hz));
    if (start < 0 || start + len > clip.samples.size()) {
      throw InputError("clip source: span of " + clip_id +
                       " exceeds source file " + it->path);
    }
    clip.samples = clip.samples.segment(start, len).eval();
  }
  return clip;
}

AudioClip build_long_clip(const std::vector<AudioClip>& sources,
                          double duration_s, Rng& rng) {
  if (!(duration_s > 0.0)) throw Error("build_long_clip: duration must be > 0");
  if (sources.empty()) throw Error("build_long_clip: no source clips");
  const int rate = sources.front().sample_rate_hz;
  Eigen::Index total = 0;
  for (const auto& c : sources) {
    if (c.sample_rate_hz != rate) {
      throw Error("build_long_clip: sample rate mismatch among sources");
    }
    total += c.samples.size();
  }
  const auto need = static_cast<Eigen::Index>(std::llround(duration_s * rate));
  if (total < need) {
    const double deficit = static_cast<double>(need - total) / rate;
    throw Error("build_long_clip: sources cover " +
                std::to_string(static_cast<double>(total) / rate) + " s of " +
                std::to_string(duration_s) + " s requested (deficit " +
                std::to_string(deficit) + " s)");
  }

  std::vector<std::size_t> order(sources.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  AudioClip out;
  out.sample_rate_hz = rate;
  out.samples.resize(need);
  Eigen::Index filled = 0;
  for (std::size_t idx : order) {
    if (filled >= need) break;
    const auto& src = sources[idx].samples;
    const Eigen::Index take = std::min(src.size(), need - filled);
    out.samples.segment(filled, take) = src.head(take);
    filled += take;
  }
  return out;
}

MixAtSnrResult mix_at_segmental_snr(const AudioClip& speech,
                                    const AudioClip& noise, double snr_db,
                                    const ActivityParams& params) {
  if (speech.samples.size() != noise.samples.size()) {
    throw Error("mix_at_segmental_snr: length mismatch (" +
                std::to_string(speech.samples.size()) + " vs " +
                std::to_string(noise.samples.size()) + " samples)");
  }
  ActivityMask speech_mask = detect_activity(speech, params);
  ActivityMask noise_mask = detect_activity(noise, params);
  if (params.require_both_active) {
    const ActivityMask both = mask_intersection(speech_mask, noise_mask);
    if (both.active_count() == 0) {
      throw Error("mix_at_segmental_snr: no frame where both signals are active");
    }
    speech_mask = both;
    noise_mask = both;
  }
  if (speech_mask.active_count() == 0) {
    throw Error("mix_at_segmental_snr: no activity in speech");
  }
  if (noise_mask.active_count() == 0) {
    throw Error("mix_at_segmental_snr: no activity in noise");
  }

  const double speech_db = segmental_rms_dbfs(speech, speech_mask).value;
  const double noise_db = segmental_rms_dbfs(noise, noise_mask).value;
  const double noise_gain =
      std::pow(10.0, (speech_db - noise_db - snr_db) / 20.0);
  AudioClip mixture{speech.samples + noise_gain * noise.samples,
                    speech.sample_rate_hz};
  return MixAtSnrResult{std::move(mixture), noise_gain};
}

AudioClip convolve_rir(const AudioClip& clip, const AudioClip& rir) {
  if (rir.samples.size() == 0) throw Error("convolve_rir: empty RIR");
  if (rir.sample_rate_hz != clip.sample_rate_hz) {
    throw Error("convolve_rir: sample rate mismatch");
  }
  if ((rir.samples != 0.0).count() == 0) throw Error("convolve_rir: silent RIR");
  const double input_rms = rms(clip.samples);

  const Eigen::Index n = clip.samples.size();
  const Eigen::Index m = rir.samples.size();
  Eigen::Index fft_len = 1;
  while (fft_len < n + m - 1) fft_len <<= 1;

  std::vector<double> a(static_cast<std::size_t>(fft_len), 0.0);
  std::vector<double> b(static_cast<std::size_t>(fft_len), 0.0);
  std::copy(clip.samples.data(), clip.samples.data() + n, a.begin());
  std::copy(rir.samples.data(), rir.samples.data() + m, b.begin());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> conv;
  fft.inv(conv, fa);

  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  out.samples = Eigen::Map<const Eigen::ArrayXd>(conv.data(), n);

  const double out_rms = rms(out.samples);
  if (out_rms <= 0.0) throw Error("convolve_rir: convolution output is silent");
  out.samples *= input_rms / out_rms;
  return out;
}

double measure_pair_snr(const AudioClip& clean, const AudioClip& noise,
                        const ActivityParams& params,
                        double clean_threshold_shift_db,
                        double noise_threshold_shift_db) {
  ActivityMask clean_mask = detect_activity(
      clean, LevelDbfs{params.threshold_dbfs + clean_threshold_shift_db},
      params.frame_ms);
  ActivityMask noise_mask = detect_activity(
      noise, LevelDbfs{params.threshold_dbfs + noise_threshold_shift_db},
      params.frame_ms);
  if (params.require_both_active) {
    const ActivityMask both = mask_intersection(clean_mask, noise_mask);
    clean_mask = both;
    noise_mask = both;
  }
  return segmental_rms_dbfs(clean, clean_mask).value -
         segmental_rms_dbfs(noise, noise_mask).value;
}

namespace {

std::vector<AudioClip> load_all(const ClipSource& source,
                                const std::vector<std::string>& ids) {
  std::vector<AudioClip> clips;
  clips.reserve(ids.size());
  for (const auto& id : ids) clips.push_back(source.load(id));
  return clips;
}

}  // namespace

SynthesizedBuffers synthesize_buffers(const MixRecipe& recipe,
                                      const SynthesisContext& ctx) {
  if (ctx.speech == nullptr || ctx.noise == nullptr) {
    throw Error("synthesize: speech and noise sources are required");
  }

  AudioClip speech = run_stage("speech", [&] {
    Rng rng = Rng::substream(recipe.seed, "speech-order");
    return build_long_clip(load_all(*ctx.speech, recipe.speech_clip_ids),
                           recipe.duration_s, rng);
  });

  AudioClip dry_clean = speech;
  if (recipe.rir_id) {
    speech = run_stage("reverb", [&] {
      if (ctx.rirs == nullptr) throw Error("recipe has rir_id but no RIR source");
      return convolve_rir(speech, ctx.rirs->load(*recipe.rir_id));
    });
  }

  AudioClip noise = run_stage("noise", [&] {
    Rng rng = Rng::substream(recipe.seed, "noise-order");
    return build_long_clip(load_all(*ctx.noise, recipe.noise_clip_ids),
                           recipe.duration_s, rng);
  });

  const MixAtSnrResult mixed = run_stage("mix", [&] {
    return mix_at_segmental_snr(speech, noise, recipe.snr_db, ctx.activity);
  });

  const GainResult leveled = run_stage("level", [&] {
    return apply_gain_to_level(mixed.mixture, recipe.target_level_dbfs);
  });

  // The guard covers the whole stored triple with one factor: the clean and
  // noise parts can peak above the mixture where they cancel, and a shared
  // rescale keeps clean + noise == noisy and leaves the SNR untouched.
  const double rescale = run_stage("clip-guard", [&] {
    double peak = leveled.clip.samples.abs().maxCoeff();
    peak = std::max(peak,
                    (speech.samples * leveled.applied_gain).abs().maxCoeff());
    if (ctx.store_dry_clean) {
      peak = std::max(
          peak, (dry_clean.samples * leveled.applied_gain).abs().maxCoeff());
    }
    peak = std::max(peak, (noise.samples * (mixed.noise_gain *
                                            leveled.applied_gain))
                              .abs()
                              .maxCoeff());
    return peak <= ctx.clip_ceiling ? 1.0 : ctx.clip_ceiling / peak;
  });

  const double total_gain = leveled.applied_gain * rescale;

  SynthesizedBuffers out;
  out.noisy = AudioClip{leveled.clip.samples * rescale, speech.sample_rate_hz};
  // The stored pair keeps clean + noise == noisy (reverberant reference by
  // default; the dry switch trades that identity for a dereverb target).
  const AudioClip reverberant_clean{speech.samples * total_gain,
                                    speech.sample_rate_hz};
  out.clean = ctx.store_dry_clean
                  ? AudioClip{dry_clean.samples * total_gain, speech.sample_rate_hz}
                  : reverberant_clean;
  out.noise = AudioClip{noise.samples * (mixed.noise_gain * total_gain),
                        noise.sample_rate_hz};

  MixRecord& record = out.record;
  record.recipe = recipe;
  record.noise_gain = mixed.noise_gain;
  record.level_gain = leveled.applied_gain;
  record.clipping_rescale = rescale;
  record.achieved_rms_dbfs = rms_dbfs(out.noisy);
  record.achieved_snr_db = run_stage("measure", [&] {
    const double pair_gain_db = 20.0 * std::log10(total_gain);
    const double noise_gain_db = 20.0 * std::log10(mixed.noise_gain);
    return measure_pair_snr(reverberant_clean, out.noise, ctx.activity,
                            pair_gain_db, pair_gain_db + noise_gain_db);
  });
  return out;
}

MixRecord synthesize(const MixRecipe& recipe, int recipe_index,
                     const SynthesisContext& ctx) {
  SynthesizedBuffers buffers = synthesize_buffers(recipe, ctx);

  char name[128];
  std::snprintf(name, sizeof(name), "%s_%d_snr%.1f_tl%.1f.wav",
                ctx.set_name.c_str(), recipe_index, recipe.snr_db,
                recipe.target_level_dbfs.value);

  const auto write_one = [&](const char* sub, const AudioClip& clip,
                             std::string& path_out) {
    const std::filesystem::path dir = ctx.out_dir / sub;
    std::filesystem::create_directories(dir);
    const std::filesystem::path p = dir / name;
    write_wav(clip, p);
    path_out = p.string();
  };
  run_stage("write", [&] {
    write_one("noisy", buffers.noisy, buffers.record.output_path);
    write_one("clean", buffers.clean, buffers.record.clean_path);
    write_one("noise", buffers.noise, buffers.record.noise_path);
    return 0;
  });
  return buffers.record;
}

std::vector<MixRecipe> sample_recipes(const RecipeSampling& cfg,
                                      const std::vector<ClipManifestEntry>& speech,
                                      const std::vector<ClipManifestEntry>& noise,
                                      const std::vector<ClipManifestEntry>& rirs,
                                      int count, std::uint64_t master_seed) {
  if (count < 0) throw Error("sample_recipes: negative count");
  if (!(cfg.snr_lo <= cfg.snr_hi) || !(cfg.level_lo <= cfg.level_hi)) {
    throw ConfigError("sample_recipes: degenerate snr/level range");
  }
  if (speech.empty()) throw Error("sample_recipes: empty speech corpus");
  if (noise.empty()) throw Error("sample_recipes: empty noise corpus");

  // Speakers eligible for a recipe must cover the full duration on their own.
  std::map<std::string, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < speech.size(); ++i) {
    if (!speech[i].speaker_id) {
      throw Error("sample_recipes: speech entry " + speech[i].clip_id +
                  " has no speaker_id");
    }
    by_speaker[*speech[i].speaker_id].push_back(i);
  }
  std::vector<std::vector<std::size_t>> speakers;
  for (const auto& [speaker, idxs] : by_speaker) {
    double total = 0.0;
    for (std::size_t i : idxs) total += speech[i].duration_s;
    if (total >= cfg.duration_s) speakers.push_back(idxs);
  }
  if (speakers.empty()) {
    throw Error("sample_recipes: no speaker has " + std::to_string(cfg.duration_s) +
                " s of speech");
  }
  double noise_total = 0.0;
  for (const auto& e : noise) noise_total += e.duration_s;
  if (noise_total < cfg.duration_s) {
    throw Error("sample_recipes: noise corpus shorter than clip duration");
  }

  // Partial Fisher-Yates: draw without replacement until the duration is met.
  const auto draw_cover = [&](Rng& rng, const std::vector<std::size_t>& pool,
                              const std::vector<ClipManifestEntry>& entries) {
    std::vector<std::size_t> idx = pool;
    std::vector<std::string> ids;
    double covered = 0.0;
    for (std::size_t i = 0; i < idx.size() && covered < cfg.duration_s; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
      std::swap(idx[i], idx[j]);
      ids.push_back(entries[idx[i]].clip_id);
      covered += entries[idx[i]].duration_s;
    }
    return ids;
  };

  std::vector<std::size_t> noise_pool(noise.size());
  std::iota(noise_pool.begin(), noise_pool.end(), std::size_t{0});

  std::vector<MixRecipe> recipes;
  recipes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::substream(master_seed, "recipe", static_cast<std::uint64_t>(i));
    MixRecipe r;
    r.snr_db = rng.uniform(cfg.snr_lo, cfg.snr_hi);
    r.target_level_dbfs = LevelDbfs{rng.uniform(cfg.level_lo, cfg.level_hi)};
    r.duration_s = cfg.duration_s;
    const auto& speaker = speakers[rng.below(speakers.size())];
    r.speech_clip_ids = draw_cover(rng, speaker, speech);
    r.noise_clip_ids = draw_cover(rng, noise_pool, noise);
    if (!rirs.empty() && rng.uniform01() < cfg.reverb_probability) {
      r.rir_id = rirs[rng.below(rirs.size())].clip_id;
    }
    r.seed = derive_seed(master_seed, "recipe-seed", static_cast<std::uint64_t>(i));
    recipes.push_back(std::move(r));
  }
  return recipes;
}

}  // namespace noisekit
