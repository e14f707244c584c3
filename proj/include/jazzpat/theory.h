// Pitch arithmetic and distance-based pattern realization.
//
// A pattern is described by the list of semitone distances between its
// successive notes ("distance vector"). Realizing a vector from a base
// pitch yields an ascending pitch set; inversion, rotation, extension and
// alteration operators derive the remaining playable forms.

#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jazzpat {

struct TheoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A realized or lifted note falls outside the MIDI pitch range 0..127.
struct RangeExceeded : TheoryError {
  using TheoryError::TheoryError;
};

/// A distance vector element is non-positive, or the vector is unusable
/// for the requested operation.
struct InvalidDistance : TheoryError {
  using TheoryError::TheoryError;
};

/// An inversion would duplicate a pitch (octave dyad, first inversion).
struct DegenerateInversion : TheoryError {
  using TheoryError::TheoryError;
};

/// An edit broke the strictly-ascending ordering of a pitch set.
struct OrderingViolated : TheoryError {
  using TheoryError::TheoryError;
};

/// A MIDI pitch number, valid by construction (0..127). Pitch 60 is C4.
class Pitch {
 public:
  static constexpr int kMin = 0;
  static constexpr int kMax = 127;

  explicit Pitch(int midi);

  int midi() const { return value_; }
  int pitchClass() const { return value_ % 12; }
  int octave() const { return value_ / 12 - 1; }

  friend bool operator==(Pitch a, Pitch b) { return a.value_ == b.value_; }
  friend auto operator<=>(Pitch a, Pitch b) { return a.value_ <=> b.value_; }

 private:
  int value_;
};

/// Semitone distances between successive notes of a pattern.
/// Elements are >= 1; at most 11 distances (12-note patterns).
class DistanceVector {
 public:
  DistanceVector() = default;
  DistanceVector(std::initializer_list<int> distances);
  explicit DistanceVector(std::vector<int> distances);

  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  int sum() const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  int operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const DistanceVector& a, const DistanceVector& b) = default;

 private:
  std::vector<int> values_;
};

/// A strictly ascending set of pitches (a chord, arpeggio or scale form).
class PitchSet {
 public:
  explicit PitchSet(std::vector<Pitch> pitches);
  static PitchSet fromMidi(const std::vector<int>& midis);

  const std::vector<Pitch>& pitches() const { return pitches_; }
  std::vector<int> midis() const;
  std::size_t size() const { return pitches_.size(); }
  Pitch bottom() const { return pitches_.front(); }
  Pitch top() const { return pitches_.back(); }

  friend bool operator==(const PitchSet& a, const PitchSet& b) = default;

 private:
  std::vector<Pitch> pitches_;
};

enum class Extension { Dom7, Maj7 };
enum class Alteration { Flat5 };

/// Realize a distance vector from a base pitch: [base, base+d0, base+d0+d1, ...].
PitchSet realize(Pitch base, const DistanceVector& distances);

/// Inversion k: lift the lowest k notes by an octave.
/// [p0..pm) -> [pk..pm, p0+12..pk+12). k = 0 is the identity.
PitchSet invert(const PitchSet& p, int k);

/// Rotation k of a scale's interval cycle. The cycle is the distance
/// vector closed to the octave (sum + closing interval = 12); rotation k
/// starts the cycle at its k-th interval and drops the new closing step.
/// Realizing the rotated vector from the same base keeps the form inside
/// a single octave. Requires sum(distances) <= 11.
DistanceVector scaleRotation(const DistanceVector& distances, int k);

/// Append a seventh above the top note: +3 semitones (Dom7) or +4 (Maj7).
PitchSet applyExtension(const PitchSet& p, Extension ext);

/// Flat5: lower the third note (index 2) by one semitone.
PitchSet applyAlteration(const PitchSet& p, Alteration alt);

/// Scientific pitch notation, sharps only, "s" for sharp: 60 -> "C4", 61 -> "Cs4".
std::string noteName(Pitch p);

/// Inverse of noteName; accepts any name the former emits.
Pitch parseNoteName(std::string_view name);

}  // namespace jazzpat
