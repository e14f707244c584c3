#include "jazzpat/dataset.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "jazzpat/generator.h"
#include "jazzpat/rng.h"
#include "jazzpat/smf.h"

namespace jazzpat {

namespace {

constexpr std::size_t CHUNK_RECORDS = 4096;
constexpr const char* STATE_FILE = ".build_state";

std::string fileNameFor(const ManifestRecord& r) {
  return std::string(patternTypeDir(r.type)) + "/" + r.mode + "/" + r.rootName + "-" + r.mode +
         "-" + r.inversion + ".mid";
}

ManifestRecord recordFor(const PatternInstance& inst, bool shortFinalChord) {
  ManifestRecord r;
  r.type = inst.type();
  r.mode = inst.modeName();
  r.rootName = noteName(Pitch(inst.base));
  r.rootMidi = inst.base;
  r.inversion = inst.formLabel();
  r.durationS = clipBeats(inst, shortFinalChord);
  r.filename = fileNameFor(r);
  return r;
}

std::vector<std::uint8_t> readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void writeFileAtomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw IoError("cannot open " + tmp + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw IoError("write failed on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot rename " + tmp + ": " + ec.message());
}

std::string renderTarget(const std::string& midiPath) {
  std::string out = midiPath;
  if (out.size() >= 4 && out.compare(out.size() - 4, 4, ".mid") == 0)
    out.replace(out.size() - 4, 4, ".wav");
  else
    out += ".wav";
  return out;
}

std::string substitute(std::string tmpl, const std::string& in, const std::string& out) {
  for (const auto& [key, value] : {std::pair<std::string, const std::string&>{"{in}", in},
                                   {"{out}", out}}) {
    std::size_t pos = 0;
    while ((pos = tmpl.find(key, pos)) != std::string::npos) {
      tmpl.replace(pos, key.size(), value);
      pos += value.size();
    }
  }
  return tmpl;
}

/// Writes one clip; returns true if bytes were (re)written, false if the
/// file already held exactly these bytes.
bool emitClip(const std::filesystem::path& root, const ManifestRecord& record,
              const PatternInstance& inst, const BuildOptions& opts) {
  const auto path = root / record.filename;
  const auto bytes = encode(realizeClip(inst, {opts.velocity, opts.shortFinalChord}),
                            opts.tempoBpm);
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) == bytes.size()) {
    if (readFile(path) == bytes)
      return false;
  }
  writeFileAtomic(path, bytes);
  return true;
}

struct StateFile {
  std::uint64_t fingerprint = 0;
  std::size_t totalRecords = 0;
  std::size_t completedChunks = 0;
};

std::optional<StateFile> readState(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  StateFile s;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      continue;
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    try {
      if (key == "fingerprint")
        s.fingerprint = std::stoull(value, nullptr, 16);
      else if (key == "total_records")
        s.totalRecords = std::stoul(value);
      else if (key == "completed_chunks")
        s.completedChunks = std::stoul(value);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return s;
}

void writeState(const std::filesystem::path& path, const StateFile& s) {
  std::ostringstream out;
  out << "version=1\n";
  out << "fingerprint=" << std::hex << s.fingerprint << std::dec << '\n';
  out << "total_records=" << s.totalRecords << '\n';
  out << "completed_chunks=" << s.completedChunks << '\n';
  const std::string text = out.str();
  writeFileAtomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::uint64_t optionsFingerprint(const BuildOptions& opts, std::size_t records) {
  std::string key = "v1|";
  for (PatternType t : opts.types) {
    key += patternTypeName(t);
    key += ',';
  }
  key += '|' + opts.subset + '|' + std::to_string(opts.seed) + '|' +
         std::to_string(opts.velocity) + '|' + std::to_string(opts.tempoBpm) + '|' +
         (opts.shortFinalChord ? '1' : '0');
  key += '|' + std::to_string(records);
  return fnv1a64(key);
}

/// Parallel emission of records[begin..end); instances resolved per
/// record. Throws the first worker error after all workers stop.
void emitRange(const std::filesystem::path& root, const std::vector<ManifestRecord>& records,
               std::size_t begin, std::size_t end, const BuildOptions& opts,
               BuildReport& report) {
  const int jobs = std::max(1, opts.jobs);
  std::atomic<std::size_t> cursor{begin};
  std::atomic<std::int64_t> written{0};
  std::atomic<std::int64_t> rendered{0};
  std::mutex errorLock;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t i = cursor.fetch_add(1); i < end; i = cursor.fetch_add(1)) {
        if (error)
          return;
        const auto& record = records[i];
        if (emitClip(root, record, instanceFor(record), opts))
          ++written;
        if (!opts.renderCmd.empty()) {
          const auto in = (root / record.filename).string();
          const auto cmd = substitute(opts.renderCmd, in, renderTarget(in));
          if (std::system(cmd.c_str()) != 0)
            throw IoError("render command failed: " + cmd);
          ++rendered;
        }
      }
    } catch (...) {
      std::scoped_lock lock(errorLock);
      if (!error)
        error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  report.written += written;
  report.reused += static_cast<std::int64_t>(end - begin) - written;
  report.rendered += rendered;
}

void createModeDirs(const std::filesystem::path& root,
                    const std::vector<ManifestRecord>& records) {
  std::set<std::filesystem::path> dirs;
  for (const auto& r : records)
    dirs.insert((root / r.filename).parent_path());
  for (const auto& d : dirs) {
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec)
      throw IoError("cannot create " + d.string() + ": " + ec.message());
  }
}

}  // namespace

std::vector<ManifestRecord> manifestRecords(const std::vector<PatternType>& types,
                                            bool shortFinalChord) {
  if (types.empty())
    throw EmptySelection("no pattern types selected");
  // Canonical type order regardless of the caller's flag order.
  std::vector<ManifestRecord> out;
  for (PatternType t : {PatternType::Chord, PatternType::Arpeggio, PatternType::Scale,
                        PatternType::Progression}) {
    if (std::find(types.begin(), types.end(), t) == types.end())
      continue;
    for (const auto& inst : enumerateType(t))
      out.push_back(recordFor(inst, shortFinalChord));
  }
  return out;
}

PatternInstance instanceFor(const ManifestRecord& r) {
  if (r.type == PatternType::Progression) {
    const ProgressionMode* mode = findProgression(r.mode);
    if (!mode)
      throw DatasetError("unknown progression mode '" + r.mode + "'");
    std::vector<int> combo;
    std::size_t start = 0;
    while (start <= r.inversion.size()) {
      const auto dash = r.inversion.find('-', start);
      combo.push_back(std::stoi(r.inversion.substr(start, dash - start)));
      if (dash == std::string::npos)
        break;
      start = dash + 1;
    }
    if (combo.size() != mode->chords.size())
      throw DatasetError("combination '" + r.inversion + "' does not fit mode '" + r.mode + "'");
    return {nullptr, mode, r.rootMidi, 0, std::move(combo)};
  }
  const PatternMode* mode = findMode(r.type, r.mode);
  if (!mode)
    throw DatasetError("unknown " + std::string(patternTypeName(r.type)) + " mode '" + r.mode +
                       "'");
  return {mode, nullptr, r.rootMidi, std::stoi(r.inversion), {}};
}

BuildReport build(const BuildOptions& opts) {
  auto records = manifestRecords(opts.types, opts.shortFinalChord);
  if (!opts.subset.empty() && opts.subset != "full")
    records = sampleSubset(records, opts.subset, opts.seed);
  assignSplits(records, opts.seed);

  std::error_code ec;
  std::filesystem::create_directories(opts.outDir, ec);
  if (ec)
    throw IoError("cannot create " + opts.outDir.string() + ": " + ec.message());
  createModeDirs(opts.outDir, records);

  const auto statePath = opts.outDir / STATE_FILE;
  StateFile state{optionsFingerprint(opts, records.size()), records.size(), 0};
  if (const auto prev = readState(statePath);
      prev && prev->fingerprint == state.fingerprint && prev->totalRecords == records.size())
    state.completedChunks = prev->completedChunks;

  BuildReport report;
  for (const auto& r : records)
    ++report.perType[r.type];

  const std::size_t chunks = (records.size() + CHUNK_RECORDS - 1) / CHUNK_RECORDS;
  // Records before the resume point count as reused without re-reading.
  const std::size_t resumeAt = std::min(state.completedChunks * CHUNK_RECORDS, records.size());
  report.reused += static_cast<std::int64_t>(resumeAt);
  for (std::size_t c = state.completedChunks; c < chunks; ++c) {
    const std::size_t begin = c * CHUNK_RECORDS;
    const std::size_t end = std::min(begin + CHUNK_RECORDS, records.size());
    emitRange(opts.outDir, records, begin, end, opts, report);
    state.completedChunks = c + 1;
    writeState(statePath, state);
  }

  writeManifest(opts.outDir / "metadata.csv", records);
  std::filesystem::remove(statePath, ec);
  return report;
}

namespace {

BuildReport buildFragment(const std::filesystem::path& outDir, const std::string& name,
                          std::vector<PatternInstance> instances, const BuildOptions& opts) {
  std::vector<ManifestRecord> records;
  records.reserve(instances.size());
  for (const auto& inst : instances)
    records.push_back(recordFor(inst, opts.shortFinalChord));
  assignSplits(records, opts.seed);

  std::error_code ec;
  std::filesystem::create_directories(outDir, ec);
  if (ec)
    throw IoError("cannot create " + outDir.string() + ": " + ec.message());
  createModeDirs(outDir, records);

  BuildReport report;
  for (const auto& r : records)
    ++report.perType[r.type];
  const int jobs = std::max(1, opts.jobs);
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::int64_t> written{0};
  std::mutex errorLock;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t i = cursor.fetch_add(1); i < records.size(); i = cursor.fetch_add(1)) {
        if (error)
          return;
        if (emitClip(outDir, records[i], instances[i], opts))
          ++written;
      }
    } catch (...) {
      std::scoped_lock lock(errorLock);
      if (!error)
        error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  report.written = written;
  report.reused = static_cast<std::int64_t>(records.size()) - written;

  writeManifest(outDir / ("metadata." + name + ".csv"), records);
  return report;
}

}  // namespace

BuildReport buildMode(const std::filesystem::path& outDir, const PatternMode& mode,
                      const BuildOptions& opts) {
  return buildFragment(outDir, mode.name, enumerateInstances(mode), opts);
}

BuildReport buildMode(const std::filesystem::path& outDir, const ProgressionMode& mode,
                      const BuildOptions& opts) {
  return buildFragment(outDir, mode.name, enumerateInstances(mode), opts);
}

bool VerifyReport::pass() const {
  if (rows.empty())
    return false;
  for (const auto& r : rows)
    if (!r.pass())
      return false;
  return modeMismatches.empty() && durationProblems.empty() && missingFiles.empty();
}

std::string VerifyReport::summary() const {
  std::size_t passing = 0;
  for (const auto& r : rows)
    passing += r.pass() ? 1 : 0;
  std::ostringstream out;
  out << passing << "/" << rows.size() << " rows " << (pass() ? "PASS" : "FAIL");
  return out.str();
}

VerifyReport verify(const std::filesystem::path& dir, int stride) {
  if (stride < 1)
    stride = 1;
  const auto records = readManifest(dir / "metadata.csv");
  VerifyReport report;

  // Count manifest rows and on-disk files per type and per mode.
  std::map<PatternType, std::int64_t> rowsPerType;
  std::map<std::pair<PatternType, std::string>, std::int64_t> rowsPerMode;
  for (const auto& r : records) {
    ++rowsPerType[r.type];
    ++rowsPerMode[{r.type, r.mode}];
  }
  std::map<PatternType, std::int64_t> filesPerType;
  std::map<std::pair<PatternType, std::string>, std::int64_t> filesPerMode;
  for (const auto& [type, count] : rowsPerType) {
    const auto typeDir = dir / patternTypeDir(type);
    std::error_code ec;
    for (std::filesystem::recursive_directory_iterator it(typeDir, ec), endIt;
         !ec && it != endIt; it.increment(ec)) {
      if (!it->is_regular_file() || it->path().extension() != ".mid")
        continue;
      ++filesPerType[type];
      const auto mode = it->path().parent_path().filename().string();
      ++filesPerMode[{type, mode}];
    }
  }

  // Published per-type targets; pinned numbers, not derived.
  const std::map<PatternType, std::int64_t> targets = {
      {PatternType::Chord, 5525},
      {PatternType::Arpeggio, 5525},
      {PatternType::Scale, 4590},
      {PatternType::Progression, 146880},
  };
  std::int64_t expectedTotal = 0;
  std::int64_t rowTotal = 0;
  std::int64_t fileTotal = 0;
  for (const auto& [type, target] : targets) {
    if (rowsPerType.find(type) == rowsPerType.end())
      continue;  // type not built; verify what is present
    expectedTotal += target;
    rowTotal += rowsPerType[type];
    fileTotal += filesPerType[type];
    report.rows.push_back(
        {std::string(patternTypeDir(type)), target, rowsPerType[type], filesPerType[type]});
  }
  report.rows.push_back({"total", expectedTotal, rowTotal, fileTotal});

  // Per-mode counts from the catalog's form arithmetic.
  for (const auto& [key, rowCount] : rowsPerMode) {
    const auto& [type, mode] = key;
    std::int64_t expected = 0;
    if (type == PatternType::Progression) {
      if (const ProgressionMode* m = findProgression(mode))
        expected = std::int64_t{85} * m->combinations();
    } else if (const PatternMode* m = findMode(type, mode)) {
      expected = std::int64_t{85} * formCount(*m);
    }
    const std::int64_t onDisk = filesPerMode[{type, mode}];
    if (expected == 0)
      report.modeMismatches.push_back("unknown mode " + std::string(patternTypeName(type)) +
                                      "/" + mode);
    else if (rowCount != expected || onDisk != expected)
      report.modeMismatches.push_back(
          std::string(patternTypeName(type)) + "/" + mode + ": expected " +
          std::to_string(expected) + ", manifest " + std::to_string(rowCount) + ", disk " +
          std::to_string(onDisk));
  }

  // Decode every stride-th file and check the duration table.
  for (std::size_t i = 0; i < records.size(); i += static_cast<std::size_t>(stride)) {
    const auto& r = records[i];
    const auto path = dir / r.filename;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      report.missingFiles.push_back(r.filename);
      continue;
    }
    try {
      const auto doc = decode(readFile(path));
      ++report.decodedFiles;
      const int expectSeconds = expectedClipSeconds(r.type, r.mode);
      if (doc.endTick != expectSeconds * TICKS_PER_QUARTER)
        report.durationProblems.push_back(r.filename + ": " + std::to_string(doc.endTick) +
                                          " ticks, expected " +
                                          std::to_string(expectSeconds * TICKS_PER_QUARTER));
      if (r.durationS != expectSeconds)
        report.durationProblems.push_back(r.filename + ": manifest says " +
                                          std::to_string(r.durationS) + " s, table says " +
                                          std::to_string(expectSeconds) + " s");
    } catch (const SmfError& e) {
      report.durationProblems.push_back(r.filename + ": " + e.what());
    } catch (const std::exception& e) {
      report.modeMismatches.push_back(r.filename + ": " + e.what());
    }
  }
  return report;
}

}  // namespace jazzpat
