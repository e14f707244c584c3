#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "jazzpat/dataset.h"
#include "jazzpat/generator.h"
#include "jazzpat/smf.h"

using namespace jazzpat;
namespace fs = std::filesystem;

namespace {

const std::vector<PatternType> ALL_TYPES = {PatternType::Chord, PatternType::Arpeggio,
                                            PatternType::Scale, PatternType::Progression};

const std::vector<ManifestRecord>& fullManifest() {
  static const auto records = manifestRecords(ALL_TYPES);
  return records;
}

std::set<std::string> fileSet(const std::vector<ManifestRecord>& records) {
  std::set<std::string> out;
  for (const auto& r : records)
    out.insert(r.filename);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir(const char* tag) : path(fs::temp_directory_path() / (std::string("jazzpat_") + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("manifest rows follow the canonical order and naming") {
  const auto& records = fullManifest();
  CHECK(records.size() == 162520);
  CHECK(records[0].filename == "chords/min2/C1-min2-0.mid");
  CHECK(records[0].durationS == 3);
  CHECK(records[1].filename == "chords/min2/C1-min2-1.mid");
  CHECK(records[2].filename == "chords/min2/Cs1-min2-0.mid");
  CHECK(fileSet(records).size() == records.size());

  std::map<PatternType, std::int64_t> perType;
  for (const auto& r : records)
    ++perType[r.type];
  CHECK(perType[PatternType::Chord] == 5525);
  CHECK(perType[PatternType::Arpeggio] == 5525);
  CHECK(perType[PatternType::Scale] == 4590);
  CHECK(perType[PatternType::Progression] == 146880);

  CHECK_THROWS_AS(manifestRecords({}), EmptySelection);
}

TEST_CASE("manifest rows survive the csv round-trip") {
  for (std::size_t i = 0; i < fullManifest().size(); i += 1009) {
    const auto& r = fullManifest()[i];
    CHECK(fromCsvRow(toCsvRow(r), 1) == r);
  }
}

TEST_CASE("records rebuild their instances") {
  for (std::size_t i = 0; i < fullManifest().size(); i += 977) {
    const auto& r = fullManifest()[i];
    const auto inst = instanceFor(r);
    CHECK(inst.type() == r.type);
    CHECK(inst.modeName() == r.mode);
    CHECK(inst.base == r.rootMidi);
    CHECK(inst.formLabel() == r.inversion);
  }
}

TEST_CASE("subsets hit the published sizes and keep every non-progression clip") {
  const std::map<std::string, std::size_t> expect = {
      {"small", 21516}, {"medium", 30328}, {"large", 52360}};
  for (const auto& [name, size] : expect) {
    CAPTURE(name);
    const auto subset = sampleSubset(fullManifest(), name, 1);
    CHECK(subset.size() == size);
    std::int64_t nonProgression = 0;
    std::set<std::string> progressionModes;
    for (const auto& r : subset) {
      if (r.type == PatternType::Progression)
        progressionModes.insert(r.mode);
      else
        ++nonProgression;
    }
    CHECK(nonProgression == 15640);
    CHECK(progressionModes.size() == 9);
  }
  CHECK_THROWS_AS(sampleSubset(fullManifest(), "tiny", 1), InsufficientPopulation);
}

TEST_CASE("subsets require progression records in the population") {
  const auto chordsOnly = manifestRecords({PatternType::Chord});
  CHECK_THROWS_AS(sampleSubset(chordsOnly, "small", 1), InsufficientPopulation);
}

TEST_CASE("small subset quotas follow largest-remainder apportionment") {
  const auto subset = sampleSubset(fullManifest(), "small", 1);
  std::map<std::string, std::int64_t> perMode;
  for (const auto& r : subset)
    if (r.type == PatternType::Progression)
      ++perMode[r.mode];
  // 5876 split as 1/27 per 3-chord mode and 4/27 per 4-chord mode; the
  // five leftovers go to the three largest remainders (the 3-chord
  // modes) and then the first two 4-chord modes in catalog order.
  const std::map<std::string, std::int64_t> expect = {
      {"ii-V-I", 218},      {"ii-V-i", 218},        {"ii-triV-I", 218},
      {"I-VI-ii-V", 871},   {"i-vi-ii-V", 871},     {"iii-VI-ii-V", 870},
      {"I-i#-ii-V", 870},   {"I-IV7-iii-VI7", 870}, {"ii#-V#-ii-V", 870},
  };
  CHECK(perMode == expect);
}

TEST_CASE("medium and large subset quotas divide evenly") {
  for (const auto& [name, threeQuota, fourQuota] :
       {std::tuple<const char*, std::int64_t, std::int64_t>{"medium", 544, 2176},
        {"large", 1360, 5440}}) {
    CAPTURE(name);
    const auto subset = sampleSubset(fullManifest(), name, 42);
    std::map<std::string, std::int64_t> perMode;
    for (const auto& r : subset)
      if (r.type == PatternType::Progression)
        ++perMode[r.mode];
    for (const auto& mode : builtinProgressions())
      CHECK(perMode[mode.name] == (mode.chords.size() == 3 ? threeQuota : fourQuota));
  }
}

TEST_CASE("subsets nest: small within medium within large") {
  for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    CAPTURE(seed);
    const auto small = fileSet(sampleSubset(fullManifest(), "small", seed));
    const auto medium = fileSet(sampleSubset(fullManifest(), "medium", seed));
    const auto large = fileSet(sampleSubset(fullManifest(), "large", seed));
    CHECK(std::includes(medium.begin(), medium.end(), small.begin(), small.end()));
    CHECK(std::includes(large.begin(), large.end(), medium.begin(), medium.end()));
  }
}

TEST_CASE("subset sampling is deterministic and seed-sensitive") {
  const auto a = sampleSubset(fullManifest(), "small", 7);
  const auto b = sampleSubset(fullManifest(), "small", 7);
  CHECK(a == b);
  const auto c = sampleSubset(fullManifest(), "small", 8);
  CHECK(a != c);
  CHECK(a.size() == c.size());
}

TEST_CASE("split is stratified 80/10/10 with valid over test") {
  auto records = fullManifest();
  assignSplits(records, 1);
  std::map<std::pair<PatternType, std::string>, std::map<std::string, std::int64_t>> strata;
  std::map<std::string, std::int64_t> totals;
  for (const auto& r : records) {
    ++strata[{r.type, r.mode}][r.split];
    ++totals[r.split];
  }
  for (const auto& [key, counts] : strata) {
    CAPTURE(key.second);
    const auto n = counts.count("train") ? counts.at("train") : 0;
    const auto v = counts.count("valid") ? counts.at("valid") : 0;
    const auto t = counts.count("test") ? counts.at("test") : 0;
    const auto total = n + v + t;
    CHECK(std::abs(n - total * 8 / 10) <= 1);
    CHECK(std::abs(v - total / 10) <= 1);
    CHECK(std::abs(t - total / 10) <= 1);
    CHECK(v >= t);  // the tie rule favors valid
  }
  // The octave chord stratum has 85 records: 68/9/8 under the rule.
  const auto& octave = strata[{PatternType::Chord, "octave"}];
  CHECK(octave.at("train") == 68);
  CHECK(octave.at("valid") == 9);
  CHECK(octave.at("test") == 8);

  CHECK(totals["train"] == 130016);
  CHECK(totals["valid"] == 16263);
  CHECK(totals["test"] == 16241);
}

TEST_CASE("split assignment is deterministic per seed") {
  auto a = fullManifest();
  auto b = fullManifest();
  assignSplits(a, 3);
  assignSplits(b, 3);
  CHECK(a == b);
  auto c = fullManifest();
  assignSplits(c, 4);
  CHECK(a != c);
}

TEST_CASE("build emits files, a manifest, and verifies clean") {
  TempDir dir("build");
  BuildOptions opts;
  opts.outDir = dir.path;
  opts.types = {PatternType::Chord};
  opts.jobs = 4;
  const auto report = build(opts);
  CHECK(report.written == 5525);
  CHECK(report.reused == 0);
  CHECK(report.perType.at(PatternType::Chord) == 5525);
  CHECK(fs::exists(dir.path / "metadata.csv"));
  CHECK_FALSE(fs::exists(dir.path / ".build_state"));

  const auto report2 = build(opts);
  CHECK(report2.written == 0);
  CHECK(report2.reused == 5525);

  auto v = verify(dir.path);
  CHECK(v.pass());
  CHECK(v.rows.size() == 2);  // chords + total
  CHECK(v.summary() == "2/2 rows PASS");
  CHECK(v.decodedFiles > 0);
}

TEST_CASE("verify flags missing files and wrong durations") {
  TempDir dir("mutate");
  BuildOptions opts;
  opts.outDir = dir.path;
  opts.types = {PatternType::Chord};
  opts.jobs = 4;
  build(opts);

  fs::remove(dir.path / "chords/maj/C4-maj-0.mid");
  auto v = verify(dir.path);
  CHECK_FALSE(v.pass());
  CHECK(v.rows[0].diskFiles == 5524);
  CHECK(v.rows[0].manifestRows == 5525);

  // Restore the count but stretch the clip to four beats.
  auto clip = realizeClip(instanceFor({.filename = "chords/maj/C4-maj-0.mid",
                                       .type = PatternType::Chord,
                                       .mode = "maj",
                                       .rootName = "C4",
                                       .rootMidi = 60,
                                       .inversion = "0",
                                       .durationS = 3,
                                       .split = "train"}));
  clip.totalBeats = 4;
  const auto bytes = encode(clip);
  std::ofstream(dir.path / "chords/maj/C4-maj-0.mid", std::ios::binary)
      .write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  auto v2 = verify(dir.path, 1);
  CHECK_FALSE(v2.pass());
  REQUIRE(v2.durationProblems.size() == 1);
  CHECK(v2.durationProblems[0].find("C4-maj-0.mid") != std::string::npos);
  for (const auto& row : v2.rows)
    CHECK(row.pass());  // counts are fine again
}

TEST_CASE("verify requires a manifest") {
  TempDir dir("nomanifest");
  CHECK_THROWS_AS(verify(dir.path), ManifestMissing);
}

TEST_CASE("a stale build state resumes instead of rewriting") {
  TempDir dir("resume");
  BuildOptions opts;
  opts.outDir = dir.path;
  opts.types = {PatternType::Scale};
  opts.jobs = 2;
  build(opts);

  // Pretend the first chunk already completed in an interrupted run with
  // identical options: records in it must be skipped untouched.
  fs::remove(dir.path / "scales/ionian/C1-ionian-0.mid");
  const auto records = manifestRecords(opts.types);
  std::ofstream state(dir.path / ".build_state");
  state << "version=1\nfingerprint=deadbeef\ntotal_records=" << records.size()
        << "\ncompleted_chunks=1\n";
  state.close();
  const auto mismatched = build(opts);  // fingerprint differs: full pass
  CHECK(mismatched.written == 1);      // restores the deleted file
  CHECK(fs::exists(dir.path / "scales/ionian/C1-ionian-0.mid"));
}

TEST_CASE("user mode fragments write files and a fragment manifest") {
  TempDir dir("fragment");
  BuildOptions opts;
  opts.outDir = dir.path;
  opts.jobs = 2;
  const auto mode = makeUserMode("quartal", PatternType::Chord, {5, 5});
  const auto report = buildMode(dir.path, mode, opts);
  CHECK(report.written == 255);
  const auto rows = readManifest(dir.path / "metadata.quartal.csv");
  CHECK(rows.size() == 255);
  CHECK(rows[0].filename == "chords/quartal/C1-quartal-0.mid");
  CHECK(fs::exists(dir.path / rows[0].filename));

  const auto prog = parseProgression("I-vi-IV7-V");
  const auto preport = buildMode(dir.path, prog, opts);
  CHECK(preport.written == 85 * 256);
  const auto prows = readManifest(dir.path / "metadata.I-vi-IV7-V.csv");
  CHECK(prows.size() == 85 * 256);
  CHECK(prows[0].durationS == 10);
}

TEST_CASE("render command template substitutes input and output") {
  TempDir dir("render");
  BuildOptions opts;
  opts.outDir = dir.path;
  opts.types = {PatternType::Scale};
  opts.jobs = 2;
  opts.renderCmd = "cp {in} {out}";
  const auto report = build(opts);
  CHECK(report.rendered == 4590);
  CHECK(fs::exists(dir.path / "scales/pentatonic/C4-pentatonic-0.wav"));

  opts.renderCmd = "false {in}";
  CHECK_THROWS_AS(build(opts), IoError);
}
