// The fixed pattern-family tables (24 chord, 24 arpeggio, 8 scale and
// 9 progression modes) and the Roman-numeral progression notation parser.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jazzpat/theory.h"

namespace jazzpat {

enum class PatternType { Chord, Arpeggio, Scale, Progression };
enum class Category { Dyad, Triad, Tetrad, Diatonic, Pentatonic };
enum class Quality { Maj7, Min7, Dom7, Min7b5, Dim7 };

/// Base pitches iterate the 85 keys 24..108 (C1..C8).
inline constexpr int BASE_PITCH_MIN = 24;
inline constexpr int BASE_PITCH_MAX = 108;
inline constexpr int BASE_PITCH_COUNT = BASE_PITCH_MAX - BASE_PITCH_MIN + 1;

std::string_view patternTypeName(PatternType t);   // "chord"
std::string_view patternTypeDir(PatternType t);    // "chords"
PatternType parsePatternType(std::string_view s);  // accepts both forms

/// A named chord/arpeggio/scale family: distance vector plus form arity.
struct PatternMode {
  std::string name;
  PatternType type;
  Category category;
  DistanceVector distances;
  int inversions;  // non-root forms

  friend bool operator==(const PatternMode&, const PatternMode&) = default;
};

/// Usable forms of a mode: root + inversions, except the octave dyad
/// whose single inversion is degenerate.
int formCount(const PatternMode& m);

/// One chord slot of a progression: semitone offset of its root above the
/// reference key (0..11) plus a tetrad quality.
struct ChordTemplate {
  std::string label;  // canonical numeral token, e.g. "triV"
  int offset;
  Quality quality;

  friend bool operator==(const ChordTemplate&, const ChordTemplate&) = default;
};

struct ProgressionMode {
  std::string name;  // canonical dash-joined spec, e.g. "ii-V-I"
  std::vector<ChordTemplate> chords;

  /// Every chord is a tetrad with 4 forms: 4^n inversion combinations.
  int combinations() const { return 1 << (2 * chords.size()); }

  friend bool operator==(const ProgressionMode&, const ProgressionMode&) = default;
};

const std::vector<PatternMode>& chordModes();
const std::vector<PatternMode>& arpeggioModes();
const std::vector<PatternMode>& scaleModes();
const std::vector<ProgressionMode>& builtinProgressions();

/// Modes of one non-progression type, or null if the name is unknown.
const PatternMode* findMode(PatternType t, std::string_view name);
const ProgressionMode* findProgression(std::string_view name);

const DistanceVector& qualityDistances(Quality q);
std::string_view qualityName(Quality q);

/// A progression spec string failed to parse; tokenIndex is the
/// zero-based position of the offending dash-separated token.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int token);
  int tokenIndex;
};

/// A user-supplied mode name clashes with a builtin of the same type but
/// different distances.
struct NameCollision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse a dash-separated Roman-numeral spec under the grammar
///   token := ["tri"] numeral ["#" | "s"] ["7" | "maj7" | "b5"]
/// Numeral case picks the default quality (lowercase min7, uppercase
/// maj7); "7" on an uppercase numeral makes it dominant; bare V and VI
/// are dominant; "ii" before a final minor tonic is half-diminished;
/// "i#" inside a 4-chord spec is diminished. "#" and "s" both sharpen
/// and normalize to "#" in canonical labels. Round-trips all builtins.
ProgressionMode parseProgression(std::string_view spec);

/// Validate a user-defined mode; throws InvalidDistance or NameCollision.
/// Redefining a builtin with its own distances is allowed.
PatternMode makeUserMode(std::string_view name, PatternType type, DistanceVector distances);

/// One concrete clip: mode x base pitch x form choice. Mode pointers
/// reference the catalog (or a caller-owned user mode).
struct PatternInstance {
  const PatternMode* mode = nullptr;             // chord/arpeggio/scale
  const ProgressionMode* progression = nullptr;  // progressions
  int base = 60;
  int form = 0;            // inversion or rotation index
  std::vector<int> combo;  // per-chord inversions, progressions only

  PatternType type() const;
  const std::string& modeName() const;
  std::string formLabel() const;  // "2" or dash-joined "0-2-1"
};

/// All instances of one mode in canonical order: base ascending, then
/// form index (lexicographic combination for progressions).
std::vector<PatternInstance> enumerateInstances(const PatternMode& m);
std::vector<PatternInstance> enumerateInstances(const ProgressionMode& m);

/// All instances of one type over the builtin catalog, mode-table order.
std::vector<PatternInstance> enumerateType(PatternType t);

/// Closed-form per-type totals the enumeration must land on.
std::int64_t expectedTypeCount(PatternType t);
std::int64_t expectedTotalCount();

}  // namespace jazzpat
