// Copyright 2026 The fracstep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// On-disk cache of reference solutions. Each entry is a pair of files:
//
//   <stem>.bin   little-endian IEEE-754 doubles, row-major U[k][i]
//   <stem>.meta  text, one key=value per line, carrying the dimensions and
//                every parameter of the key
//
// An entry is used only when its metadata matches the requested key
// exactly; anything else counts as a miss and is overwritten on store.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fracstep/space_time.hpp"

namespace fracstep {

struct CacheKey {
  std::map<std::string, std::string> entries;

  /// Readable prefix plus a 64-bit FNV-1a digest of all entries.
  std::string file_stem() const;
};

class ReferenceCache {
 public:
  explicit ReferenceCache(std::filesystem::path directory);

  /// Reads FRACSTEP_CACHE_DIR; empty when unset or blank.
  static std::optional<ReferenceCache> from_environment();

  const std::filesystem::path& directory() const { return directory_; }

  std::optional<SpaceTimeField> load(const CacheKey& key,
                                     const TemporalGrid& grid,
                                     const Mesh1D& mesh) const;

  /// Writes both files; ConfigError if the directory cannot be written.
  void store(const CacheKey& key, const SpaceTimeField& field) const;

 private:
  std::filesystem::path directory_;
};

/// Serialized metadata for a key and field dimensions.
std::string cache_metadata(const CacheKey& key, std::size_t rows,
                           std::size_t cols);

}  // namespace fracstep
