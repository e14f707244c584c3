// Dataset assembly: canonical manifests, file emission with resumable
// chunked builds, count/duration verification, subset sampling and
// train/valid/test splitting.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jazzpat/manifest.h"

namespace jazzpat {

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A filesystem operation failed; message carries path and cause.
struct IoError : DatasetError {
  using DatasetError::DatasetError;
};

struct EmptySelection : DatasetError {
  using DatasetError::DatasetError;
};

/// A subset quota exceeds the records available in one mode.
struct InsufficientPopulation : DatasetError {
  using DatasetError::DatasetError;
};

struct ManifestMissing : DatasetError {
  using DatasetError::DatasetError;
};

/// Progressions added per subset on top of the 15640 other clips.
struct SubsetSpec {
  std::string name;
  std::int64_t progressions;
};

const std::vector<SubsetSpec>& subsetSpecs();  // small 5876, medium 14688, large 36720
const SubsetSpec* findSubset(std::string_view name);

/// The full record list for the selected types in canonical order
/// (type, then catalog mode order, then base, then form), split column
/// empty. Pure; no filesystem access.
std::vector<ManifestRecord> manifestRecords(const std::vector<PatternType>& types,
                                            bool shortFinalChord = false);

/// All non-progression records plus a per-mode stratified draw of
/// progression records. Quotas are proportional to mode sizes with
/// largest-remainder rounding (ties by catalog order); within a mode the
/// draw is the quota-length prefix of a Fisher-Yates shuffle seeded from
/// (seed, mode name), which makes subsets nest: small within medium
/// within large for the same seed. Output keeps canonical order.
std::vector<ManifestRecord> sampleSubset(const std::vector<ManifestRecord>& full,
                                         std::string_view size, std::uint64_t seed);

/// Per-(type, mode) stratified 80/10/10 assignment, largest-remainder
/// rounding with valid before test on ties; strata shuffled by streams
/// seeded from (seed, "split/<type>/<mode>").
void assignSplits(std::vector<ManifestRecord>& records, std::uint64_t seed);

/// Rebuild the instance a record describes (catalog modes only).
PatternInstance instanceFor(const ManifestRecord& r);

struct BuildOptions {
  std::filesystem::path outDir;
  std::vector<PatternType> types;  // non-empty
  std::string subset;              // empty or "full" for everything
  std::uint64_t seed = 1;
  int velocity = 90;
  int tempoBpm = 60;
  bool shortFinalChord = false;
  int jobs = 1;
  std::string renderCmd;  // optional: "{in}" MIDI path, "{out}" WAV path
};

struct BuildReport {
  std::map<PatternType, std::int64_t> perType;
  std::int64_t written = 0;   // files created or rewritten
  std::int64_t reused = 0;    // already present with identical bytes
  std::int64_t rendered = 0;  // render command invocations
  std::int64_t total() const { return written + reused; }
};

/// Emit every selected clip plus metadata.csv. Chunked and resumable:
/// .build_state records progress and the options fingerprint, and a
/// matching interrupted build continues where it stopped. Rebuilding a
/// finished tree is idempotent (byte-identical, files reused).
BuildReport build(const BuildOptions& opts);

/// Emit one user-defined mode: files under its mode directory plus a
/// manifest fragment metadata.<name>.csv. No resume state.
BuildReport buildMode(const std::filesystem::path& outDir, const PatternMode& mode,
                      const BuildOptions& opts);
BuildReport buildMode(const std::filesystem::path& outDir, const ProgressionMode& mode,
                      const BuildOptions& opts);

struct VerifyRow {
  std::string label;          // type name or "total"
  std::int64_t expected;      // published target
  std::int64_t manifestRows;
  std::int64_t diskFiles;
  bool pass() const { return manifestRows == expected && diskFiles == expected; }
};

struct VerifyReport {
  std::vector<VerifyRow> rows;                // one per present type + total
  std::vector<std::string> modeMismatches;    // per-mode count problems
  std::vector<std::string> durationProblems;  // decoded files off the table
  std::vector<std::string> missingFiles;
  std::int64_t decodedFiles = 0;

  bool pass() const;
  std::string summary() const;  // "5/5 rows PASS" style
};

/// Check a built tree against the published statistics: per-type and
/// per-mode counts from the manifest and from files on disk, plus the
/// duration table on every stride-th file (decoded from bytes).
VerifyReport verify(const std::filesystem::path& dir, int stride = 97);

}  // namespace jazzpat
