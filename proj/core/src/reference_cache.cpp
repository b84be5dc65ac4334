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

#include "fracstep/reference_cache.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "fracstep/errors.hpp"

namespace fracstep {
namespace {

constexpr char kFormat[] = "fracstep-reference-v1";

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) {
    return bits;
  } else {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out = (out << 8) | ((bits >> (8 * b)) & 0xffu);
    return out;
  }
}

std::optional<std::string> read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

std::string CacheKey::file_stem() const {
  std::string serialized;
  for (const auto& [k, v] : entries) serialized += k + '=' + v + '\n';
  std::string prefix = "reference";
  if (auto it = entries.find("experiment"); it != entries.end()) {
    prefix.clear();
    for (char c : it->second) {
      const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_';
      prefix += keep ? c : '_';
    }
  }
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(fnv1a(serialized)));
  return prefix + '-' + digest;
}

std::string cache_metadata(const CacheKey& key, std::size_t rows,
                           std::size_t cols) {
  std::ostringstream out;
  out << "format=" << kFormat << '\n'
      << "rows=" << rows << '\n'
      << "cols=" << cols << '\n';
  for (const auto& [k, v] : key.entries) out << k << '=' << v << '\n';
  return out.str();
}

ReferenceCache::ReferenceCache(std::filesystem::path directory)
    : directory_(std::move(directory)) {}

std::optional<ReferenceCache> ReferenceCache::from_environment() {
  const char* dir = std::getenv("FRACSTEP_CACHE_DIR");
  if (!dir || std::string_view(dir).find_first_not_of(" \t") == std::string_view::npos) {
    return std::nullopt;
  }
  return ReferenceCache(dir);
}

std::optional<SpaceTimeField> ReferenceCache::load(const CacheKey& key,
                                                   const TemporalGrid& grid,
                                                   const Mesh1D& mesh) const {
  const std::string stem = key.file_stem();
  const auto meta = read_text(directory_ / (stem + ".meta"));
  if (!meta || *meta != cache_metadata(key, grid.steps(), mesh.unknowns())) {
    return std::nullopt;
  }
  const auto blob = read_text(directory_ / (stem + ".bin"));
  SpaceTimeField field(grid, mesh);
  auto data = field.coefficients.data();
  if (!blob || blob->size() != data.size() * sizeof(double)) return std::nullopt;
  for (std::size_t n = 0; n < data.size(); ++n) {
    std::uint64_t bits;
    std::memcpy(&bits, blob->data() + n * sizeof bits, sizeof bits);
    data[n] = std::bit_cast<double>(to_little_endian(bits));
  }
  return field;
}

void ReferenceCache::store(const CacheKey& key, const SpaceTimeField& field) const {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) {
    throw ConfigError("reference cache: cannot create " + directory_.string() +
                      ": " + ec.message());
  }
  const std::string stem = key.file_stem();
  const auto bin = directory_ / (stem + ".bin");
  const auto meta = directory_ / (stem + ".meta");
  // Drop stale metadata first so a torn write is never taken for a hit.
  std::filesystem::remove(meta, ec);

  std::string blob(field.coefficients.data().size() * sizeof(double), '\0');
  const auto data = field.coefficients.data();
  for (std::size_t n = 0; n < data.size(); ++n) {
    const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(data[n]));
    std::memcpy(blob.data() + n * sizeof bits, &bits, sizeof bits);
  }
  {
    std::ofstream out(bin, std::ios::binary | std::ios::trunc);
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw ConfigError("reference cache: cannot write " + bin.string());
  }
  {
    std::ofstream out(meta, std::ios::binary | std::ios::trunc);
    out << cache_metadata(key, field.coefficients.rows(), field.coefficients.cols());
    if (!out) throw ConfigError("reference cache: cannot write " + meta.string());
  }
}

}  // namespace fracstep
