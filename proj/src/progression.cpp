// Roman-numeral progression notation: grammar, quality inference and the
// nine builtin progression modes.

#include <array>
#include <cctype>

#include "jazzpat/catalog.h"

namespace jazzpat {

namespace {

struct NumeralDef {
  std::string_view text;
  int offset;
};

// Longest first so prefix matching is greedy.
constexpr std::array<NumeralDef, 14> NUMERALS = {{
    {"III", 4}, {"iii", 4}, {"VII", 11}, {"vii", 11},
    {"II", 2},  {"ii", 2},  {"IV", 5},   {"iv", 5},
    {"VI", 9},  {"vi", 9},  {"I", 0},    {"i", 0},
    {"V", 7},   {"v", 7},
}};

enum class Suffix { None, Seven, Maj7, B5 };

struct Token {
  bool tri = false;
  std::string_view numeral;
  bool sharp = false;
  Suffix suffix = Suffix::None;

  bool uppercase() const { return std::isupper(static_cast<unsigned char>(numeral[0])) != 0; }
  bool bare() const { return !tri && !sharp && suffix == Suffix::None; }
};

Token lexToken(std::string_view text, int index) {
  Token t;
  std::string_view rest = text;
  if (rest.substr(0, 3) == "tri") {
    t.tri = true;
    rest.remove_prefix(3);
  }
  for (const auto& n : NUMERALS) {
    if (rest.substr(0, n.text.size()) == n.text) {
      t.numeral = n.text;
      rest.remove_prefix(n.text.size());
      break;
    }
  }
  if (t.numeral.empty())
    throw ParseError("token " + std::to_string(index) + ": no Roman numeral in '" +
                         std::string(text) + "'",
                     index);
  if (!rest.empty() && (rest[0] == '#' || rest[0] == 's')) {
    t.sharp = true;
    rest.remove_prefix(1);
  }
  if (rest == "maj7")
    t.suffix = Suffix::Maj7;
  else if (rest == "b5")
    t.suffix = Suffix::B5;
  else if (rest == "7")
    t.suffix = Suffix::Seven;
  else if (!rest.empty())
    throw ParseError("token " + std::to_string(index) + ": trailing '" + std::string(rest) +
                         "' after '" + std::string(t.numeral) + "'",
                     index);
  return t;
}

int numeralOffset(std::string_view numeral) {
  for (const auto& n : NUMERALS)
    if (n.text == numeral)
      return n.offset;
  return 0;
}

// Context-sensitive quality inference over the whole token list.
Quality inferQuality(const Token& t, const std::vector<Token>& all) {
  switch (t.suffix) {
    case Suffix::Maj7: return Quality::Maj7;
    case Suffix::B5: return Quality::Min7b5;
    case Suffix::Seven: return t.uppercase() ? Quality::Dom7 : Quality::Min7;
    case Suffix::None: break;
  }
  if (t.tri)
    return Quality::Dom7;  // tritone substitution keeps the dominant function
  if (t.uppercase())
    // V and VI act as dominants in progression context; other uppercase
    // numerals default to major sevenths.
    return (t.numeral == "V" || t.numeral == "VI") ? Quality::Dom7 : Quality::Maj7;
  if (t.numeral == "i" && t.sharp && all.size() == 4)
    return Quality::Dim7;  // the passing chord of I-i#-ii-V
  if (t.numeral == "ii" && t.bare()) {
    // A two chord before a minor tonic is half-diminished.
    const Token& last = all.back();
    if (last.numeral == "i" && last.bare())
      return Quality::Min7b5;
  }
  return Quality::Min7;
}

std::string canonicalLabel(const Token& t) {
  std::string out;
  if (t.tri)
    out += "tri";
  out += t.numeral;
  if (t.sharp)
    out += '#';
  switch (t.suffix) {
    case Suffix::Seven: out += '7'; break;
    case Suffix::Maj7: out += "maj7"; break;
    case Suffix::B5: out += "b5"; break;
    case Suffix::None: break;
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& msg, int token)
    : std::runtime_error(msg), tokenIndex(token) {}

ProgressionMode parseProgression(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = spec.find('-', start);
    parts.push_back(spec.substr(start, dash - start));
    if (dash == std::string_view::npos)
      break;
    start = dash + 1;
  }
  std::vector<Token> tokens;
  tokens.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty())
      throw ParseError("token " + std::to_string(i) + ": empty", static_cast<int>(i));
    tokens.push_back(lexToken(parts[i], static_cast<int>(i)));
  }
  if (tokens.size() < 3 || tokens.size() > 4)
    throw ParseError("progression has " + std::to_string(tokens.size()) +
                         " chords, expected 3 or 4",
                     0);
  ProgressionMode mode;
  for (const Token& t : tokens) {
    const int raw = numeralOffset(t.numeral) + (t.sharp ? 1 : 0) + (t.tri ? 6 : 0);
    mode.chords.push_back({canonicalLabel(t), raw % 12, inferQuality(t, tokens)});
  }
  for (std::size_t i = 0; i < mode.chords.size(); ++i) {
    if (i)
      mode.name += '-';
    mode.name += mode.chords[i].label;
  }
  return mode;
}

const std::vector<ProgressionMode>& builtinProgressions() {
  static const std::vector<ProgressionMode> modes = [] {
    std::vector<ProgressionMode> out;
    for (std::string_view spec :
         {"ii-V-I", "ii-V-i", "ii-triV-I", "I-VI-ii-V", "i-vi-ii-V", "iii-VI-ii-V",
          "I-i#-ii-V", "I-IV7-iii-VI7", "ii#-V#-ii-V"})
      out.push_back(parseProgression(spec));
    return out;
  }();
  return modes;
}

}  // namespace jazzpat
