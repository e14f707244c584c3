// Manifest records and their CSV serialization. One row per clip; UTF-8,
// LF line endings, no quoting (no field may contain a comma or newline,
// which the writer enforces).

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jazzpat/catalog.h"

namespace jazzpat {

struct ManifestRecord {
  std::string filename;  // relative path: <type>s/<mode>/<root>-<mode>-<form>.mid
  PatternType type;
  std::string mode;
  std::string rootName;
  int rootMidi;
  std::string inversion;  // form index, or dash-joined combination
  int durationS;
  std::string split;  // empty, "train", "valid" or "test"

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

inline constexpr std::string_view MANIFEST_HEADER =
    "filename,pattern_type,mode,root_name,root_midi,inversion,duration_s,split";

std::string toCsvRow(const ManifestRecord& r);
ManifestRecord fromCsvRow(const std::string& line, std::size_t lineNo);

/// Atomic write (temp file + rename); LF endings regardless of platform.
void writeManifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records);
std::vector<ManifestRecord> readManifest(const std::filesystem::path& path);

}  // namespace jazzpat
