// Command-line surface: generate, verify, subset, split, describe, and
// the user-defined pattern commands. Exit codes: 0 success, 1 runtime or
// I/O failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "jazzpat/dataset.h"
#include "jazzpat/generator.h"
#include "jazzpat/smf.h"

namespace {

using namespace jazzpat;

constexpr int EXIT_RUNTIME = 1;
constexpr int EXIT_USAGE = 2;

std::vector<PatternType> parseTypes(const std::string& list) {
  std::vector<PatternType> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty())
      continue;
    out.push_back(parsePatternType(item));
  }
  return out;
}

DistanceVector parseDistances(const std::string& list) {
  std::vector<int> values;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ','))
    values.push_back(std::stoi(item));
  return DistanceVector(values);
}

void printReport(const BuildReport& report) {
  for (const auto& [type, count] : report.perType)
    std::cout << std::left << std::setw(14) << patternTypeDir(type) << count << '\n';
  std::cout << std::left << std::setw(14) << "total" << report.total() << " files (written "
            << report.written << ", reused " << report.reused;
  if (report.rendered)
    std::cout << ", rendered " << report.rendered;
  std::cout << ")\n";
}

std::string distanceText(const DistanceVector& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(d[i]);
  }
  return out;
}

void describeFamily(const char* title, const std::vector<PatternMode>& modes) {
  std::cout << title << " (" << modes.size() << " modes)\n";
  std::cout << "  " << std::left << std::setw(12) << "mode" << std::setw(12) << "category"
            << std::setw(14) << "distances" << std::setw(7) << "forms" << std::setw(9)
            << "seconds" << "clips\n";
  for (const auto& m : modes) {
    const char* category = m.category == Category::Dyad       ? "dyad"
                           : m.category == Category::Triad    ? "triad"
                           : m.category == Category::Tetrad   ? "tetrad"
                           : m.category == Category::Diatonic ? "diatonic"
                                                              : "pentatonic";
    std::cout << "  " << std::left << std::setw(12) << m.name << std::setw(12) << category
              << std::setw(14) << distanceText(m.distances) << std::setw(7) << formCount(m)
              << std::setw(9) << expectedClipSeconds(m.type, m.name)
              << formCount(m) * BASE_PITCH_COUNT << '\n';
  }
  std::cout << '\n';
}

int cmdDescribe() {
  describeFamily("chords", chordModes());
  describeFamily("arpeggios", arpeggioModes());
  describeFamily("scales", scaleModes());
  const auto& progressions = builtinProgressions();
  std::cout << "progressions (" << progressions.size() << " modes)\n";
  std::cout << "  " << std::left << std::setw(16) << "mode" << std::setw(36) << "chords"
            << std::setw(8) << "combos" << std::setw(9) << "seconds" << "clips\n";
  for (const auto& m : progressions) {
    std::string chords;
    for (const auto& c : m.chords) {
      if (!chords.empty())
        chords += ' ';
      chords += c.label + ":" + std::string(qualityName(c.quality));
    }
    std::cout << "  " << std::left << std::setw(16) << m.name << std::setw(36) << chords
              << std::setw(8) << m.combinations() << std::setw(9)
              << expectedClipSeconds(PatternType::Progression, m.name)
              << std::int64_t{BASE_PITCH_COUNT} * m.combinations() << '\n';
  }
  const std::size_t modeCount = chordModes().size() + arpeggioModes().size() +
                                scaleModes().size() + progressions.size();
  std::cout << '\n' << modeCount << " modes, " << expectedTotalCount() << " clips\n";
  return 0;
}

int cmdGenerate(const BuildOptions& opts) {
  try {
    printReport(build(opts));
    return 0;
  } catch (const EmptySelection& e) {
    std::cerr << "--types: " << e.what() << '\n';
    return EXIT_USAGE;
  } catch (const std::exception& e) {
    std::cerr << "generate: " << e.what() << '\n';
    return EXIT_RUNTIME;
  }
}

int cmdVerify(const std::filesystem::path& dir, int stride) {
  VerifyReport report;
  try {
    report = verify(dir, stride);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return EXIT_RUNTIME;
  }
  for (const auto& row : report.rows)
    std::cout << "  " << std::left << std::setw(14) << row.label << "expected " << std::setw(8)
              << row.expected << "manifest " << std::setw(8) << row.manifestRows << "disk "
              << std::setw(8) << row.diskFiles << (row.pass() ? "PASS" : "FAIL") << '\n';
  const auto printCapped = [](const char* title, const std::vector<std::string>& lines) {
    if (lines.empty())
      return;
    std::cout << title << ":\n";
    for (std::size_t i = 0; i < lines.size() && i < 20; ++i)
      std::cout << "  " << lines[i] << '\n';
    if (lines.size() > 20)
      std::cout << "  +" << lines.size() - 20 << " more\n";
  };
  printCapped("mode mismatches", report.modeMismatches);
  printCapped("missing files", report.missingFiles);
  printCapped("duration problems", report.durationProblems);
  std::cout << report.summary() << " (" << report.decodedFiles << " files decoded)\n";
  return report.pass() ? 0 : EXIT_RUNTIME;
}

int cmdSubset(const std::filesystem::path& dir, const std::string& size, std::uint64_t seed) {
  try {
    const auto records = readManifest(dir / "metadata.csv");
    std::vector<std::string> sizes;
    if (!size.empty())
      sizes.push_back(size);
    else
      for (const auto& spec : subsetSpecs())
        sizes.push_back(spec.name);
    for (const auto& s : sizes) {
      const auto subset = sampleSubset(records, s, seed);
      writeManifest(dir / ("subset_" + s + ".csv"), subset);
      std::cout << "subset_" << s << ".csv: " << subset.size() << " rows\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "subset: " << e.what() << '\n';
    return EXIT_RUNTIME;
  }
}

int cmdSplit(const std::filesystem::path& dir, std::uint64_t seed) {
  try {
    auto records = readManifest(dir / "metadata.csv");
    assignSplits(records, seed);
    writeManifest(dir / "metadata.csv", records);
    std::map<std::string, std::int64_t> totals;
    for (const auto& r : records)
      ++totals[r.split];
    for (const char* name : {"train", "valid", "test"})
      std::cout << std::left << std::setw(7) << name << totals[name] << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "split: " << e.what() << '\n';
    return EXIT_RUNTIME;
  }
}

int cmdNewPattern(const std::filesystem::path& outDir, const std::string& name,
                  const std::string& distances, const std::string& type,
                  const BuildOptions& opts) {
  PatternMode mode;
  try {
    mode = makeUserMode(name, parsePatternType(type), parseDistances(distances));
  } catch (const std::exception& e) {
    std::cerr << "new-pattern: " << e.what() << '\n';
    return EXIT_USAGE;
  }
  try {
    const auto report = buildMode(outDir, mode, opts);
    std::cout << mode.name << ": " << report.total() << " files\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "new-pattern: " << e.what() << '\n';
    return EXIT_RUNTIME;
  }
}

int cmdProgression(const std::filesystem::path& outDir, const std::string& spec,
                   const BuildOptions& opts) {
  ProgressionMode mode;
  try {
    mode = parseProgression(spec);
  } catch (const ParseError& e) {
    std::cerr << "progression: " << e.what() << '\n';
    return EXIT_USAGE;
  }
  try {
    const auto report = buildMode(outDir, mode, opts);
    std::cout << mode.name << ": " << report.total() << " files\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "progression: " << e.what() << '\n';
    return EXIT_RUNTIME;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic generator and verifier for fundamental jazz piano patterns"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --config appear after the subcommand name
  app.set_config("--config", "", "key=value config file ([subcommand] sections)");

  const unsigned hw = std::thread::hardware_concurrency();
  BuildOptions opts;
  opts.jobs = hw ? static_cast<int>(hw) : 1;

  std::string outDir;
  std::string typeList = "chords,arpeggios,scales,progressions";
  std::string subsetName = "full";

  auto* gen = app.add_subcommand("generate", "build the dataset tree and metadata.csv");
  gen->add_option("--out", outDir, "output directory")->envname("JAZZPAT_OUT")->required();
  gen->add_option("--types", typeList, "comma-separated pattern types");
  gen->add_option("--subset", subsetName, "small, medium, large or full")
      ->check(CLI::IsMember({"small", "medium", "large", "full"}));
  gen->add_option("--seed", opts.seed, "subset/split seed");
  gen->add_option("--velocity", opts.velocity, "note-on velocity")->check(CLI::Range(1, 127));
  gen->add_option("--tempo", opts.tempoBpm, "tempo in bpm")->check(CLI::Range(1, 100000));
  gen->add_flag("--short-final-chord", opts.shortFinalChord,
                "3-chord progressions end on a 1-beat chord (7 s clips)");
  gen->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::Range(1, 4096));
  gen->add_option("--render-cmd", opts.renderCmd,
                  "external render command; {in} MIDI path, {out} WAV path");

  std::string verifyDir;
  int stride = 97;
  auto* ver = app.add_subcommand("verify", "check a tree against the published statistics");
  ver->add_option("--dir", verifyDir, "dataset directory")->required();
  ver->add_option("--stride", stride, "decode every Nth file")->check(CLI::Range(1, 1000000));

  std::string subsetDir;
  std::string subsetSize;
  std::uint64_t subsetSeed = 1;
  auto* sub = app.add_subcommand("subset", "write subset_<size>.csv from metadata.csv");
  sub->add_option("--dir", subsetDir, "dataset directory")->required();
  sub->add_option("--size", subsetSize, "small, medium or large (default: all three)")
      ->check(CLI::IsMember({"small", "medium", "large"}));
  sub->add_option("--seed", subsetSeed, "sampling seed");

  std::string splitDir;
  std::uint64_t splitSeed = 1;
  auto* spl = app.add_subcommand("split", "reassign the split column of metadata.csv");
  spl->add_option("--dir", splitDir, "dataset directory")->required();
  spl->add_option("--seed", splitSeed, "split seed");

  app.add_subcommand("describe", "print the full mode taxonomy");

  std::string npName, npDistances, npType = "chord", npOut;
  auto* np = app.add_subcommand("new-pattern", "generate a user-defined pattern in every key");
  np->add_option("--name", npName, "mode name")->required();
  np->add_option("--distances", npDistances, "comma-separated semitone distances")->required();
  np->add_option("--type", npType, "chord, arpeggio or scale")
      ->check(CLI::IsMember({"chord", "arpeggio", "scale"}));
  np->add_option("--out", npOut, "output directory")->envname("JAZZPAT_OUT")->required();

  std::string progSpec, progOut;
  auto* prog = app.add_subcommand("progression", "generate a progression spec in every key");
  prog->add_option("--spec", progSpec, "Roman-numeral spec, e.g. ii-V-I")->required();
  prog->add_option("--out", progOut, "output directory")->envname("JAZZPAT_OUT")->required();

  for (CLI::App* sub : {np, prog}) {
    sub->add_option("--velocity", opts.velocity, "note-on velocity")->check(CLI::Range(1, 127));
    sub->add_option("--tempo", opts.tempoBpm, "tempo in bpm")->check(CLI::Range(1, 100000));
    sub->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::Range(1, 4096));
    sub->add_option("--render-cmd", opts.renderCmd,
                    "external render command; {in} MIDI path, {out} WAV path");
  }
  prog->add_flag("--short-final-chord", opts.shortFinalChord,
                 "3-chord progressions end on a 1-beat chord (7 s clips)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return EXIT_USAGE;
  }

  if (gen->parsed()) {
    try {
      opts.types = parseTypes(typeList);
    } catch (const std::exception& e) {
      std::cerr << "--types: " << e.what() << '\n';
      return EXIT_USAGE;
    }
    opts.outDir = outDir;
    opts.subset = subsetName;
    return cmdGenerate(opts);
  }
  if (ver->parsed())
    return cmdVerify(verifyDir, stride);
  if (sub->parsed())
    return cmdSubset(subsetDir, subsetSize, subsetSeed);
  if (spl->parsed())
    return cmdSplit(splitDir, splitSeed);
  if (np->parsed()) {
    opts.outDir = npOut;
    return cmdNewPattern(npOut, npName, npDistances, npType, opts);
  }
  if (prog->parsed()) {
    opts.outDir = progOut;
    return cmdProgression(progOut, progSpec, opts);
  }
  return cmdDescribe();
}
