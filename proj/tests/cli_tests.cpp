// End-to-end tests of the command-line binary. JAZZPAT_BIN is the
// absolute path of the built executable, injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "jazzpat/dataset.h"
#include "jazzpat/smf.h"

namespace fs = std::filesystem;
using namespace jazzpat;

namespace {

struct RunResult {
  int exitCode;
  std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(JAZZPAT_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
    output.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("describe prints the 65-mode taxonomy") {
  const auto r = run("describe");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "chords (24 modes)"));
  CHECK(contains(r.output, "arpeggios (24 modes)"));
  CHECK(contains(r.output, "scales (8 modes)"));
  CHECK(contains(r.output, "progressions (9 modes)"));
  CHECK(contains(r.output, "65 modes, 162520 clips"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exitCode == 2);
  CHECK(run("frobnicate").exitCode == 2);
  CHECK(run("--help").exitCode == 0);
  CHECK(run("generate --help").exitCode == 0);

  const auto dir = scratch("usage");
  const auto none = run("generate --out " + dir.string() + " --types none");
  CHECK(none.exitCode == 2);
  CHECK(contains(none.output, "--types"));
  CHECK(run("generate --out " + dir.string() + " --velocity 300").exitCode == 2);
  CHECK(run("generate --out " + dir.string() + " --subset gigantic").exitCode == 2);
  CHECK(run("generate --types chords").exitCode == 2);  // --out missing, no env
}

TEST_CASE("generate, verify, split and rebuild reuse") {
  const auto dir = scratch("tree");
  const auto gen = run("generate --out " + dir.string() + " --types chords --jobs 4");
  CHECK(gen.exitCode == 0);
  CHECK(contains(gen.output, "5525"));
  CHECK(contains(gen.output, "written 5525"));

  const auto ver = run("verify --dir " + dir.string());
  CHECK(ver.exitCode == 0);
  CHECK(contains(ver.output, "2/2 rows PASS"));

  const auto again = run("generate --out " + dir.string() + " --types chords --jobs 4");
  CHECK(again.exitCode == 0);
  CHECK(contains(again.output, "reused 5525"));

  const auto spl = run("split --dir " + dir.string() + " --seed 7");
  CHECK(spl.exitCode == 0);
  CHECK(contains(spl.output, "train"));
  const auto records = readManifest(dir / "metadata.csv");
  std::int64_t train = 0;
  for (const auto& r : records)
    train += r.split == "train";
  CHECK(records.size() == 5525);
  CHECK(train == 4420);
  CHECK(run("verify --dir " + dir.string()).exitCode == 0);

  // Subsets are progression quotas; a chords-only tree cannot satisfy one.
  const auto sub = run("subset --dir " + dir.string() + " --size small");
  CHECK(sub.exitCode == 1);
  CHECK(contains(sub.output, "progression"));
}

TEST_CASE("verify on a missing tree exits 1") {
  const auto r = run("verify --dir cli_scratch/absent");
  CHECK(r.exitCode == 1);
  CHECK(contains(r.output, "metadata.csv"));
}

TEST_CASE("new-pattern emits one mode and honors velocity and tempo") {
  const auto dir = scratch("quartal");
  const auto r = run("new-pattern --name quartal --distances 5,5,5 --type chord --out " +
                     dir.string() + " --velocity 64 --tempo 120");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "quartal: 85 files"));

  std::ifstream in(dir / "chords/quartal/C1-quartal-0.mid", std::ios::binary);
  REQUIRE(in.good());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  const auto doc = decode(bytes);
  REQUIRE(!doc.notes.empty());
  CHECK(doc.notes[0].velocity == 64);
  CHECK(doc.tempoUsPerQuarter == 500000);

  CHECK(run("new-pattern --name bad --distances 4,0 --type chord --out " + dir.string())
            .exitCode == 2);
  CHECK(run("new-pattern --name maj --distances 1,1 --type chord --out " + dir.string())
            .exitCode == 2);  // clashes with the builtin triad
  const auto redefine =
      run("new-pattern --name maj --distances 4,3 --type chord --out " + dir.string());
  CHECK(redefine.exitCode == 0);  // same distances as the builtin is fine
}

TEST_CASE("progression command parses specs and writes fragments") {
  const auto dir = scratch("prog");
  const auto bad = run("progression --spec x-y --out " + dir.string());
  CHECK(bad.exitCode == 2);
  CHECK(contains(bad.output, "token 0"));

  const auto r = run("progression --spec ii-V-I --out " + dir.string() + " --jobs 4");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "ii-V-I: 5440 files"));
  CHECK(fs::exists(dir / "metadata.ii-V-I.csv"));
}

TEST_CASE("JAZZPAT_OUT provides the output directory") {
  const auto dir = scratch("envout");
  const std::string cmd = "JAZZPAT_OUT=" + dir.string() +
                          " " JAZZPAT_BIN " new-pattern --name fourths --distances 5,5 --type "
                          "arpeggio 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fread(buf, 1, sizeof buf, pipe)) {
  }
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(fs::exists(dir / "arpeggios/fourths/C1-fourths-0.mid"));
}

TEST_CASE("config file supplies options and flags override it") {
  const auto dir = scratch("cfg");
  const fs::path ini = dir / "jazzpat.ini";
  {
    std::ofstream out(ini);
    out << "[generate]\nout=" << (dir / "tree").string() << "\ntypes=scales\njobs=4\n";
  }
  const auto viaConfig = run("generate --config " + ini.string());
  CHECK(viaConfig.exitCode == 0);
  CHECK(contains(viaConfig.output, "scales        4590"));
  CHECK(fs::exists(dir / "tree/scales/ionian/C1-ionian-0.mid"));

  const auto overridden = run("generate --config " + ini.string() + " --types chords");
  CHECK(overridden.exitCode == 0);
  CHECK(contains(overridden.output, "chords        5525"));
  CHECK(run("verify --dir " + (dir / "tree").string()).exitCode == 0);
}
