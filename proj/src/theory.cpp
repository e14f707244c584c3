#include "jazzpat/theory.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

namespace jazzpat {

namespace {

// Pitch-class spellings, sharps only. "s" stands in for the sharp sign so
// the names are filesystem-safe.
constexpr std::array<std::string_view, 12> PC_NAMES = {
    "C", "Cs", "D", "Ds", "E", "F", "Fs", "G", "Gs", "A", "As", "B"};

}  // namespace

Pitch::Pitch(int midi) : value_(midi) {
  if (midi < kMin || midi > kMax)
    throw RangeExceeded("pitch " + std::to_string(midi) + " outside 0..127");
}

DistanceVector::DistanceVector(std::initializer_list<int> distances)
    : DistanceVector(std::vector<int>(distances)) {}

DistanceVector::DistanceVector(std::vector<int> distances) : values_(std::move(distances)) {
  if (values_.size() > 11)
    throw InvalidDistance("distance vector longer than 11");
  for (int d : values_)
    if (d < 1)
      throw InvalidDistance("distance " + std::to_string(d) + " is not positive");
}

int DistanceVector::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0);
}

PitchSet::PitchSet(std::vector<Pitch> pitches) : pitches_(std::move(pitches)) {
  if (pitches_.empty())
    throw OrderingViolated("pitch set is empty");
  for (std::size_t i = 1; i < pitches_.size(); ++i)
    if (!(pitches_[i - 1] < pitches_[i]))
      throw OrderingViolated("pitches not strictly ascending at index " + std::to_string(i));
}

PitchSet PitchSet::fromMidi(const std::vector<int>& midis) {
  std::vector<Pitch> ps;
  ps.reserve(midis.size());
  for (int m : midis)
    ps.emplace_back(m);
  return PitchSet(std::move(ps));
}

std::vector<int> PitchSet::midis() const {
  std::vector<int> out;
  out.reserve(pitches_.size());
  for (Pitch p : pitches_)
    out.push_back(p.midi());
  return out;
}

PitchSet realize(Pitch base, const DistanceVector& distances) {
  std::vector<Pitch> out;
  out.reserve(distances.size() + 1);
  int cur = base.midi();
  out.emplace_back(cur);
  for (int d : distances) {
    cur += d;
    out.emplace_back(cur);  // Pitch ctor throws RangeExceeded past 127
  }
  return PitchSet(std::move(out));
}

PitchSet invert(const PitchSet& p, int k) {
  const auto m = static_cast<int>(p.size());
  if (k < 0 || k >= m)
    throw InvalidDistance("inversion " + std::to_string(k) + " of " + std::to_string(m) +
                          " notes");
  if (k == 0)
    return p;
  std::vector<Pitch> out;
  out.reserve(p.size());
  for (int i = k; i < m; ++i)
    out.push_back(p.pitches()[i]);
  for (int i = 0; i < k; ++i)
    out.emplace_back(p.pitches()[i].midi() + 12);
  // The lift duplicates a pitch exactly when the span wraps onto an
  // existing note (octave dyad, first inversion).
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i - 1] == out[i])
      throw DegenerateInversion("inversion " + std::to_string(k) + " duplicates pitch " +
                                std::to_string(out[i].midi()));
  return PitchSet(std::move(out));
}

DistanceVector scaleRotation(const DistanceVector& distances, int k) {
  const int n = static_cast<int>(distances.size()) + 1;  // note count
  if (k < 0 || k >= n)
    throw InvalidDistance("rotation " + std::to_string(k) + " of " + std::to_string(n) +
                          " notes");
  const int closing = 12 - distances.sum();
  if (closing < 1)
    throw InvalidDistance("distances span " + std::to_string(distances.sum()) +
                          " semitones, cannot close to an octave");
  std::vector<int> cycle(distances.begin(), distances.end());
  cycle.push_back(closing);
  std::rotate(cycle.begin(), cycle.begin() + k, cycle.end());
  cycle.pop_back();
  return DistanceVector(std::move(cycle));
}

PitchSet applyExtension(const PitchSet& p, Extension ext) {
  const int step = ext == Extension::Dom7 ? 3 : 4;
  std::vector<Pitch> out = p.pitches();
  out.emplace_back(p.top().midi() + step);
  return PitchSet(std::move(out));
}

PitchSet applyAlteration(const PitchSet& p, Alteration) {
  if (p.size() < 3)
    throw InvalidDistance("flat5 needs at least 3 notes");
  std::vector<Pitch> out = p.pitches();
  out[2] = Pitch(out[2].midi() - 1);
  return PitchSet(std::move(out));
}

std::string noteName(Pitch p) {
  return std::string(PC_NAMES[static_cast<std::size_t>(p.pitchClass())]) +
         std::to_string(p.octave());
}

Pitch parseNoteName(std::string_view name) {
  std::size_t best = PC_NAMES.size();
  std::size_t bestLen = 0;
  for (std::size_t i = 0; i < PC_NAMES.size(); ++i) {
    const auto& pc = PC_NAMES[i];
    if (name.substr(0, pc.size()) == pc && pc.size() > bestLen) {
      best = i;
      bestLen = pc.size();
    }
  }
  if (best == PC_NAMES.size())
    throw InvalidDistance("unknown note name '" + std::string(name) + "'");
  const std::string_view rest = name.substr(bestLen);
  int octave = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), octave);
  if (ec != std::errc{} || ptr != rest.data() + rest.size())
    throw InvalidDistance("unknown note name '" + std::string(name) + "'");
  return Pitch((octave + 1) * 12 + static_cast<int>(best));
}

}  // namespace jazzpat
