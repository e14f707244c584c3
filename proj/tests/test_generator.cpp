#include <doctest.h>

#include <map>
#include <set>

#include "jazzpat/generator.h"

using namespace jazzpat;

namespace {

PatternInstance simpleInstance(PatternType t, const char* mode, int base, int form) {
  return {findMode(t, mode), nullptr, base, form, {}};
}

PatternInstance progInstance(const char* mode, int base, std::vector<int> combo) {
  return {nullptr, findProgression(mode), base, 0, std::move(combo)};
}

}  // namespace

TEST_CASE("chord clips strike all notes at once for one beat") {
  const auto clip = realizeClip(simpleInstance(PatternType::Chord, "maj", 60, 0));
  CHECK(clip.events == std::vector<NoteEvent>{{60, 0, 1, 90}, {64, 0, 1, 90}, {67, 0, 1, 90}});
  CHECK(clip.totalBeats == 3);
  CHECK(clip.type == PatternType::Chord);
  CHECK(clip.mode == "maj");
  CHECK(clip.root == 60);
  CHECK(clip.form == "0");
}

TEST_CASE("arpeggio clips play one note per beat") {
  const auto clip = realizeClip(simpleInstance(PatternType::Arpeggio, "maj7", 60, 0));
  CHECK(clip.events == std::vector<NoteEvent>{
                           {60, 0, 1, 90}, {64, 1, 1, 90}, {67, 2, 1, 90}, {71, 3, 1, 90}});
  CHECK(clip.totalBeats == 6);
}

TEST_CASE("scale clips follow the rotation") {
  const auto clip = realizeClip(simpleInstance(PatternType::Scale, "pentatonic", 60, 0));
  CHECK(clip.events == std::vector<NoteEvent>{
                           {60, 0, 1, 90}, {62, 1, 1, 90}, {64, 2, 1, 90}, {67, 3, 1, 90},
                           {69, 4, 1, 90}});
  CHECK(clip.totalBeats == 7);

  const auto dorianish = realizeClip(simpleInstance(PatternType::Scale, "ionian", 60, 1));
  std::vector<int> pitches;
  for (const auto& e : dorianish.events)
    pitches.push_back(e.pitch);
  CHECK(pitches == std::vector<int>{60, 62, 63, 65, 67, 69, 70});
  CHECK(dorianish.totalBeats == 9);
}

TEST_CASE("progression chords land two beats apart") {
  const auto clip = realizeClip(progInstance("ii-V-I", 60, {0, 0, 0}));
  REQUIRE(clip.events.size() == 12);
  const std::vector<std::vector<int>> expect = {
      {62, 65, 69, 72}, {67, 71, 74, 77}, {60, 64, 67, 71}};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      const auto& e = clip.events[static_cast<std::size_t>(4 * j + i)];
      CHECK(e.pitch == expect[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      CHECK(e.onset == 2 * j);
      CHECK(e.duration == 2);
    }
  CHECK(clip.totalBeats == 8);
  CHECK(clip.form == "0-0-0");
}

TEST_CASE("tritone substitution roots a dominant a semitone above the tonic") {
  const auto clip = realizeClip(progInstance("ii-triV-I", 60, {0, 0, 0}));
  std::vector<int> secondChord;
  for (const auto& e : clip.events)
    if (e.onset == 2)
      secondChord.push_back(e.pitch);
  CHECK(secondChord == std::vector<int>{61, 65, 68, 71});
}

TEST_CASE("four chord progressions span ten seconds") {
  const auto clip = realizeClip(progInstance("I-VI-ii-V", 60, {0, 0, 0, 0}));
  CHECK(clip.events.size() == 16);
  std::set<int> onsets;
  for (const auto& e : clip.events)
    onsets.insert(e.onset);
  CHECK(onsets == std::set<int>{0, 2, 4, 6});
  CHECK(clip.totalBeats == 10);
}

TEST_CASE("short final chord trims only three chord progressions") {
  GeneratorOptions opts;
  opts.shortFinalChord = true;
  const auto three = realizeClip(progInstance("ii-V-I", 60, {0, 0, 0}), opts);
  CHECK(three.totalBeats == 7);
  for (const auto& e : three.events)
    CHECK(e.duration == (e.onset == 4 ? 1 : 2));
  const auto four = realizeClip(progInstance("I-VI-ii-V", 60, {0, 0, 0, 0}), opts);
  CHECK(four.totalBeats == 10);
}

TEST_CASE("high inversions of high references drop an octave into range") {
  // vi of i-vi-ii-V at reference 108 is rooted at 117; its first
  // inversion would top out at 129 before the drop.
  const auto& mode = *findProgression("i-vi-ii-V");
  const auto pitches = progressionChordPitches(mode.chords[1], 108, 1);
  CHECK(pitches.midis() == std::vector<int>{108, 112, 115, 117});
  const auto root = progressionChordPitches(mode.chords[1], 108, 0);
  CHECK(root.midis() == std::vector<int>{117, 120, 124, 127});
}

TEST_CASE("every template chord realizes at every reference and inversion") {
  for (const auto& mode : builtinProgressions())
    for (const auto& chord : mode.chords)
      for (int ref = 24; ref <= 108; ++ref)
        for (int inv = 0; inv < 4; ++inv) {
          const auto p = progressionChordPitches(chord, ref, inv);
          CHECK(p.size() == 4);
          CHECK(p.top().midi() <= 127);
        }
}

TEST_CASE("chord and arpeggio of the same form share pitches") {
  for (const char* mode : {"maj", "min7", "octave", "tritone", "sixth"}) {
    const auto chords = enumerateInstances(*findMode(PatternType::Chord, mode));
    for (std::size_t i = 0; i < chords.size(); i += 17) {
      const auto& c = chords[i];
      const auto chord = realizeClip(c);
      const auto arp = realizeClip(simpleInstance(PatternType::Arpeggio, mode, c.base, c.form));
      std::multiset<int> a, b;
      for (const auto& e : chord.events)
        a.insert(e.pitch);
      for (const auto& e : arp.events)
        b.insert(e.pitch);
      CHECK(a == b);
    }
  }
}

TEST_CASE("no two events of one pitch overlap") {
  for (const auto& mode : builtinProgressions()) {
    const auto instances = enumerateInstances(mode);
    for (std::size_t i = 0; i < instances.size(); i += 301) {
      const auto clip = realizeClip(instances[i]);
      std::map<int, std::vector<std::pair<int, int>>> spans;
      for (const auto& e : clip.events)
        spans[e.pitch].push_back({e.onset, e.onset + e.duration});
      for (auto& [pitch, list] : spans) {
        std::sort(list.begin(), list.end());
        for (std::size_t k = 1; k < list.size(); ++k)
          CHECK(list[k - 1].second <= list[k].first);
      }
    }
  }
}

TEST_CASE("duration oracle matches realized clips") {
  const std::map<std::pair<PatternType, std::string>, int> table = {
      {{PatternType::Chord, "maj"}, 3},        {{PatternType::Chord, "octave"}, 3},
      {{PatternType::Arpeggio, "min3"}, 4},    {{PatternType::Arpeggio, "sus4"}, 5},
      {{PatternType::Arpeggio, "min7b5"}, 6},  {{PatternType::Scale, "pentatonic"}, 7},
      {{PatternType::Scale, "locrian"}, 9},    {{PatternType::Progression, "ii-V-i"}, 8},
      {{PatternType::Progression, "iii-VI-ii-V"}, 10},
  };
  for (const auto& [key, seconds] : table) {
    CAPTURE(key.second);
    CHECK(expectedClipSeconds(key.first, key.second) == seconds);
  }
  CHECK(expectedClipSeconds(PatternType::Progression, "ii-V-i", true) == 7);
  CHECK(expectedClipSeconds(PatternType::Progression, "iii-VI-ii-V", true) == 10);
  CHECK_THROWS(expectedClipSeconds(PatternType::Chord, "nope"));

  for (PatternType t : {PatternType::Chord, PatternType::Arpeggio, PatternType::Scale,
                        PatternType::Progression}) {
    const auto instances = enumerateType(t);
    for (std::size_t i = 0; i < instances.size(); i += 997) {
      const auto clip = realizeClip(instances[i]);
      CHECK(clip.totalBeats == clipBeats(instances[i]));
      CHECK(clip.totalBeats == expectedClipSeconds(t, clip.mode));
    }
  }
}

TEST_CASE("velocity is validated") {
  GeneratorOptions opts;
  opts.velocity = 0;
  CHECK_THROWS_AS(realizeClip(simpleInstance(PatternType::Chord, "maj", 60, 0), opts),
                  std::invalid_argument);
  opts.velocity = 128;
  CHECK_THROWS_AS(realizeClip(simpleInstance(PatternType::Chord, "maj", 60, 0), opts),
                  std::invalid_argument);
  opts.velocity = 1;
  CHECK(realizeClip(simpleInstance(PatternType::Chord, "maj", 60, 0), opts).events[0].velocity ==
        1);
}
