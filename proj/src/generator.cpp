#include "jazzpat/generator.h"

#include <algorithm>
#include <stdexcept>

namespace jazzpat {

PitchSet formPitches(const PatternMode& m, int base, int form) {
  if (m.type == PatternType::Scale)
    return realize(Pitch(base), scaleRotation(m.distances, form));
  return invert(realize(Pitch(base), m.distances), form);
}

PitchSet progressionChordPitches(const ChordTemplate& c, int ref, int inversion) {
  const DistanceVector& d = qualityDistances(c.quality);
  const int m = static_cast<int>(d.size()) + 1;
  if (inversion < 0 || inversion >= m)
    throw InvalidDistance("inversion " + std::to_string(inversion) + " of a " +
                          std::to_string(m) + "-note chord");
  // Work on raw integers: intermediate notes may pass 127 before the
  // octave drop brings the chord back into range.
  std::vector<int> notes{ref + c.offset};
  for (int step : d)
    notes.push_back(notes.back() + step);
  std::rotate(notes.begin(), notes.begin() + inversion, notes.end());
  for (int i = m - inversion; i < m; ++i)
    notes[static_cast<std::size_t>(i)] += 12;
  while (notes.back() > Pitch::kMax)
    for (int& n : notes)
      n -= 12;
  return PitchSet::fromMidi(notes);
}

Clip realizeClip(const PatternInstance& inst, const GeneratorOptions& opts) {
  if (opts.velocity < 1 || opts.velocity > 127)
    throw std::invalid_argument("velocity " + std::to_string(opts.velocity) +
                                " outside 1..127");
  Clip clip{inst.type(), inst.modeName(), inst.base, inst.formLabel(), {}, 0};
  if (inst.progression) {
    const auto& chords = inst.progression->chords;
    const int n = static_cast<int>(chords.size());
    for (int j = 0; j < n; ++j) {
      const bool finalShort = opts.shortFinalChord && n == 3 && j == n - 1;
      const int duration = finalShort ? 1 : 2;
      const auto pitches = progressionChordPitches(chords[static_cast<std::size_t>(j)],
                                                   inst.base, inst.combo[static_cast<std::size_t>(j)]);
      for (Pitch p : pitches.pitches())
        clip.events.push_back({p.midi(), 2 * j, duration, opts.velocity});
    }
  } else {
    const auto pitches = formPitches(*inst.mode, inst.base, inst.form);
    const bool melodic = inst.mode->type != PatternType::Chord;
    int i = 0;
    for (Pitch p : pitches.pitches())
      clip.events.push_back({p.midi(), melodic ? i++ : 0, 1, opts.velocity});
  }
  int lastOff = 0;
  for (const auto& e : clip.events)
    lastOff = std::max(lastOff, e.onset + e.duration);
  clip.totalBeats = lastOff + 2;
  return clip;
}

int clipBeats(const PatternInstance& inst, bool shortFinalChord) {
  if (inst.progression) {
    const int n = static_cast<int>(inst.progression->chords.size());
    return shortFinalChord && n == 3 ? 7 : 2 * n + 2;
  }
  if (inst.mode->type == PatternType::Chord)
    return 3;
  return static_cast<int>(inst.mode->distances.size()) + 1 + 2;
}

int expectedClipSeconds(PatternType type, const std::string& mode, bool shortFinalChord) {
  if (type == PatternType::Progression) {
    const ProgressionMode* builtin = findProgression(mode);
    const int n = builtin ? static_cast<int>(builtin->chords.size())
                          : static_cast<int>(parseProgression(mode).chords.size());
    return shortFinalChord && n == 3 ? 7 : 2 * n + 2;
  }
  const PatternMode* m = findMode(type, mode);
  if (!m)
    throw std::invalid_argument("unknown " + std::string(patternTypeName(type)) + " mode '" +
                                mode + "'");
  if (type == PatternType::Chord)
    return 3;
  return static_cast<int>(m->distances.size()) + 1 + 2;
}

}  // namespace jazzpat
