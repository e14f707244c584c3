// Timed realization of pattern instances: one note per beat for arpeggios
// and scales, simultaneous onsets for chords, two chords per measure for
// progressions, always with two beats of decay at 60 bpm.

#pragma once

#include <string>
#include <vector>

#include "jazzpat/catalog.h"
#include "jazzpat/theory.h"

namespace jazzpat {

struct NoteEvent {
  int pitch;     // MIDI pitch 0..127
  int onset;     // beats
  int duration;  // beats
  int velocity;

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

/// A realized clip plus the labels the manifest needs.
struct Clip {
  PatternType type;
  std::string mode;
  int root;          // base/reference MIDI pitch
  std::string form;  // inversion index or combination label
  std::vector<NoteEvent> events;
  int totalBeats;    // last note-off + 2; equals seconds at 60 bpm
};

struct GeneratorOptions {
  int velocity = 90;
  bool shortFinalChord = false;  // 3-chord progressions: final chord 1 beat
};

/// Pitches of one form of a chord/arpeggio/scale mode.
PitchSet formPitches(const PatternMode& m, int base, int form);

/// Pitches of one progression chord: root at ref + offset, tetrad realized
/// and inverted, then dropped an octave while its top exceeds the MIDI
/// range (high inversions of high references need this).
PitchSet progressionChordPitches(const ChordTemplate& c, int ref, int inversion);

Clip realizeClip(const PatternInstance& inst, const GeneratorOptions& opts = {});

/// Clip length in beats without realizing events; the duration oracle.
int clipBeats(const PatternInstance& inst, bool shortFinalChord = false);

/// Duration in seconds from labels alone, for verifying built trees.
/// Resolves the mode through the catalog (progressions via the grammar).
int expectedClipSeconds(PatternType type, const std::string& mode, bool shortFinalChord = false);

}  // namespace jazzpat
