// Standard MIDI File (format 0) encoding and decoding for clips.
// Output is bit-exact: fixed 480-tick division, explicit status bytes,
// note-offs before note-ons at equal ticks, end-of-track two beats after
// the last note-off. The decoder is tolerant enough for round-trip
// verification, including running status on input.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "jazzpat/generator.h"

namespace jazzpat {

inline constexpr int TICKS_PER_QUARTER = 480;

struct SmfError : std::runtime_error {
  SmfError(const std::string& msg, std::size_t offset);
  std::size_t offset;
};

struct MalformedHeader : SmfError {
  using SmfError::SmfError;
};

struct TruncatedTrack : SmfError {
  using SmfError::SmfError;
};

struct InvalidVlq : SmfError {
  using SmfError::SmfError;
};

/// One note on/off with absolute tick time, as stored in the file.
struct SmfNote {
  int tick;
  bool on;
  int pitch;
  int velocity;

  friend bool operator==(const SmfNote&, const SmfNote&) = default;
};

/// Decoded structural view: enough for round-trip tests and verification.
struct SmfDocument {
  int format = 0;
  int division = TICKS_PER_QUARTER;
  int tempoUsPerQuarter = 0;  // 0 when the file carries no tempo event
  std::vector<SmfNote> notes;
  int endTick = 0;

  friend bool operator==(const SmfDocument&, const SmfDocument&) = default;
};

/// A matched note pair in absolute ticks.
struct TimedNote {
  int pitch;
  int onsetTick;
  int durationTick;
  int velocity;

  friend bool operator==(const TimedNote&, const TimedNote&) = default;
  friend auto operator<=>(const TimedNote&, const TimedNote&) = default;
};

std::vector<std::uint8_t> encode(const Clip& clip, int tempoBpm = 60);

SmfDocument decode(const std::vector<std::uint8_t>& bytes);

/// Pair ons with offs (FIFO per pitch) into timed notes, onset order.
std::vector<TimedNote> notePairs(const SmfDocument& doc);

/// The clip's events as timed notes in ticks, for comparison against a
/// decoded file.
std::vector<TimedNote> clipNotes(const Clip& clip);

}  // namespace jazzpat
