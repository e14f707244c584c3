#include "jazzpat/catalog.h"

#include <algorithm>

namespace jazzpat {

namespace {

std::vector<PatternMode> makeChordFamily(PatternType type) {
  std::vector<PatternMode> out;
  // Dyads: one interval each, a semitone through the octave.
  const char* dyads[] = {"min2", "maj2",  "min3", "maj3", "perf4",  "tritone",
                         "perf5", "min6", "maj6", "aug6", "maj7_2", "octave"};
  for (int k = 1; k <= 12; ++k)
    out.push_back({dyads[k - 1], type, Category::Dyad, DistanceVector{k}, 1});
  out.push_back({"maj", type, Category::Triad, {4, 3}, 2});
  out.push_back({"min", type, Category::Triad, {3, 4}, 2});
  out.push_back({"aug", type, Category::Triad, {4, 4}, 2});
  out.push_back({"dim", type, Category::Triad, {3, 3}, 2});
  out.push_back({"sus2", type, Category::Triad, {2, 5}, 2});
  out.push_back({"sus4", type, Category::Triad, {5, 2}, 2});
  out.push_back({"dim7", type, Category::Tetrad, {3, 3, 3}, 3});
  out.push_back({"maj7", type, Category::Tetrad, {4, 3, 4}, 3});
  out.push_back({"min7", type, Category::Tetrad, {3, 4, 3}, 3});
  out.push_back({"min7b5", type, Category::Tetrad, {3, 3, 4}, 3});
  out.push_back({"seventh", type, Category::Tetrad, {4, 3, 3}, 3});
  out.push_back({"sixth", type, Category::Tetrad, {4, 3, 2}, 3});
  return out;
}

std::vector<PatternMode> makeScales() {
  std::vector<PatternMode> out;
  const auto diatonic = [&](const char* name, int rotation) {
    out.push_back({name, PatternType::Scale, Category::Diatonic,
                   scaleRotation({2, 2, 1, 2, 2, 2}, rotation), 6});
  };
  diatonic("ionian", 0);
  diatonic("dorian", 1);
  diatonic("phrygian", 2);
  diatonic("lydian", 3);
  diatonic("mixolydian", 4);
  diatonic("aeolian", 5);
  diatonic("locrian", 6);
  out.push_back({"pentatonic", PatternType::Scale, Category::Pentatonic, {2, 2, 3, 2}, 4});
  return out;
}

}  // namespace

std::string_view patternTypeName(PatternType t) {
  switch (t) {
    case PatternType::Chord: return "chord";
    case PatternType::Arpeggio: return "arpeggio";
    case PatternType::Scale: return "scale";
    case PatternType::Progression: return "progression";
  }
  return "";
}

std::string_view patternTypeDir(PatternType t) {
  switch (t) {
    case PatternType::Chord: return "chords";
    case PatternType::Arpeggio: return "arpeggios";
    case PatternType::Scale: return "scales";
    case PatternType::Progression: return "progressions";
  }
  return "";
}

PatternType parsePatternType(std::string_view s) {
  for (PatternType t : {PatternType::Chord, PatternType::Arpeggio, PatternType::Scale,
                        PatternType::Progression})
    if (s == patternTypeName(t) || s == patternTypeDir(t))
      return t;
  throw std::invalid_argument("unknown pattern type '" + std::string(s) + "'");
}

int formCount(const PatternMode& m) {
  // Lifting any prefix of a chord spanning an octave or more duplicates or
  // crosses the lifted root; only the octave dyad hits this among builtins.
  if (m.type != PatternType::Scale && m.distances.sum() >= 12)
    return 1;
  return 1 + m.inversions;
}

const std::vector<PatternMode>& chordModes() {
  static const auto modes = makeChordFamily(PatternType::Chord);
  return modes;
}

const std::vector<PatternMode>& arpeggioModes() {
  static const auto modes = makeChordFamily(PatternType::Arpeggio);
  return modes;
}

const std::vector<PatternMode>& scaleModes() {
  static const auto modes = makeScales();
  return modes;
}

const PatternMode* findMode(PatternType t, std::string_view name) {
  const std::vector<PatternMode>* table = nullptr;
  switch (t) {
    case PatternType::Chord: table = &chordModes(); break;
    case PatternType::Arpeggio: table = &arpeggioModes(); break;
    case PatternType::Scale: table = &scaleModes(); break;
    case PatternType::Progression: return nullptr;
  }
  for (const auto& m : *table)
    if (m.name == name)
      return &m;
  return nullptr;
}

const ProgressionMode* findProgression(std::string_view name) {
  for (const auto& m : builtinProgressions())
    if (m.name == name)
      return &m;
  return nullptr;
}

const DistanceVector& qualityDistances(Quality q) {
  static const DistanceVector maj7{4, 3, 4};
  static const DistanceVector min7{3, 4, 3};
  static const DistanceVector dom7{4, 3, 3};
  static const DistanceVector min7b5{3, 3, 4};
  static const DistanceVector dim7{3, 3, 3};
  switch (q) {
    case Quality::Maj7: return maj7;
    case Quality::Min7: return min7;
    case Quality::Dom7: return dom7;
    case Quality::Min7b5: return min7b5;
    case Quality::Dim7: return dim7;
  }
  return maj7;
}

std::string_view qualityName(Quality q) {
  switch (q) {
    case Quality::Maj7: return "maj7";
    case Quality::Min7: return "min7";
    case Quality::Dom7: return "dom7";
    case Quality::Min7b5: return "min7b5";
    case Quality::Dim7: return "dim7";
  }
  return "";
}

PatternMode makeUserMode(std::string_view name, PatternType type, DistanceVector distances) {
  if (type == PatternType::Progression)
    throw std::invalid_argument("user modes are chord, arpeggio or scale");
  if (name.empty())
    throw std::invalid_argument("mode name is empty");
  if (distances.empty())
    throw InvalidDistance("mode needs at least one distance");
  Category category;
  if (type == PatternType::Scale) {
    if (distances.sum() > 11)
      throw InvalidDistance("scale distances must stay inside one octave");
    category = distances.size() == 4 ? Category::Pentatonic : Category::Diatonic;
  } else {
    category = distances.size() == 1   ? Category::Dyad
               : distances.size() == 2 ? Category::Triad
                                       : Category::Tetrad;
  }
  if (const PatternMode* builtin = findMode(type, name); builtin && !(builtin->distances == distances))
    throw NameCollision("mode '" + std::string(name) + "' is a builtin " +
                        std::string(patternTypeName(type)) + " with different distances");
  const int inversions = static_cast<int>(distances.size());
  PatternMode m{std::string(name), type, category, std::move(distances), inversions};
  // Every form must be realizable in every key; the highest base is the
  // tight case, so range problems surface at definition time.
  for (int form = 0; form < formCount(m); ++form) {
    if (type == PatternType::Scale)
      realize(Pitch(BASE_PITCH_MAX), scaleRotation(m.distances, form));
    else
      invert(realize(Pitch(BASE_PITCH_MAX), m.distances), form);
  }
  return m;
}

PatternType PatternInstance::type() const {
  return progression ? PatternType::Progression : mode->type;
}

const std::string& PatternInstance::modeName() const {
  return progression ? progression->name : mode->name;
}

std::string PatternInstance::formLabel() const {
  if (!progression)
    return std::to_string(form);
  std::string out;
  for (std::size_t i = 0; i < combo.size(); ++i) {
    if (i)
      out += '-';
    out += std::to_string(combo[i]);
  }
  return out;
}

std::vector<PatternInstance> enumerateInstances(const PatternMode& m) {
  std::vector<PatternInstance> out;
  const int forms = formCount(m);
  out.reserve(static_cast<std::size_t>(forms) * BASE_PITCH_COUNT);
  for (int base = BASE_PITCH_MIN; base <= BASE_PITCH_MAX; ++base)
    for (int form = 0; form < forms; ++form)
      out.push_back({&m, nullptr, base, form, {}});
  return out;
}

std::vector<PatternInstance> enumerateInstances(const ProgressionMode& m) {
  std::vector<PatternInstance> out;
  const int n = static_cast<int>(m.chords.size());
  out.reserve(static_cast<std::size_t>(m.combinations()) * BASE_PITCH_COUNT);
  for (int base = BASE_PITCH_MIN; base <= BASE_PITCH_MAX; ++base) {
    std::vector<int> combo(static_cast<std::size_t>(n), 0);
    for (;;) {
      out.push_back({nullptr, &m, base, 0, combo});
      // lexicographic successor over base-4 digits
      int i = n - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == 3)
        combo[static_cast<std::size_t>(i--)] = 0;
      if (i < 0)
        break;
      ++combo[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

std::vector<PatternInstance> enumerateType(PatternType t) {
  std::vector<PatternInstance> out;
  if (t == PatternType::Progression) {
    for (const auto& m : builtinProgressions()) {
      auto part = enumerateInstances(m);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto& table = t == PatternType::Chord      ? chordModes()
                      : t == PatternType::Arpeggio ? arpeggioModes()
                                                   : scaleModes();
  for (const auto& m : table) {
    auto part = enumerateInstances(m);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::int64_t expectedTypeCount(PatternType t) {
  std::int64_t forms = 0;
  switch (t) {
    case PatternType::Chord:
    case PatternType::Arpeggio:
      for (const auto& m : chordModes())
        forms += formCount(m);
      break;
    case PatternType::Scale:
      for (const auto& m : scaleModes())
        forms += formCount(m);
      break;
    case PatternType::Progression:
      for (const auto& m : builtinProgressions())
        forms += m.combinations();
      break;
  }
  return forms * BASE_PITCH_COUNT;
}

std::int64_t expectedTotalCount() {
  return expectedTypeCount(PatternType::Chord) + expectedTypeCount(PatternType::Arpeggio) +
         expectedTypeCount(PatternType::Scale) + expectedTypeCount(PatternType::Progression);
}

}  // namespace jazzpat
