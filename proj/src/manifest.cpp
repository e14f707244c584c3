#include "jazzpat/manifest.h"

#include <fstream>
#include <sstream>

#include "jazzpat/dataset.h"

namespace jazzpat {

namespace {

void checkField(const std::string& s) {
  if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
    throw IoError("manifest field '" + s + "' contains a separator");
}

}  // namespace

std::string toCsvRow(const ManifestRecord& r) {
  for (const std::string* s : {&r.filename, &r.mode, &r.rootName, &r.inversion, &r.split})
    checkField(*s);
  std::string out;
  out += r.filename;
  out += ',';
  out += patternTypeName(r.type);
  out += ',';
  out += r.mode;
  out += ',';
  out += r.rootName;
  out += ',';
  out += std::to_string(r.rootMidi);
  out += ',';
  out += r.inversion;
  out += ',';
  out += std::to_string(r.durationS);
  out += ',';
  out += r.split;
  return out;
}

ManifestRecord fromCsvRow(const std::string& line, std::size_t lineNo) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  if (fields.size() != 8)
    throw IoError("manifest line " + std::to_string(lineNo) + " has " +
                  std::to_string(fields.size()) + " fields, expected 8");
  try {
    return {fields[0],          parsePatternType(fields[1]),
            fields[2],          fields[3],
            std::stoi(fields[4]), fields[5],
            std::stoi(fields[6]), fields[7]};
  } catch (const std::exception& e) {
    throw IoError("manifest line " + std::to_string(lineNo) + ": " + e.what());
  }
}

void writeManifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw IoError("cannot open " + tmp + " for writing");
    out << MANIFEST_HEADER << '\n';
    for (const auto& r : records)
      out << toCsvRow(r) << '\n';
    if (!out)
      throw IoError("write failed on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot rename " + tmp + " to " + path.string() + ": " + ec.message());
}

std::vector<ManifestRecord> readManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ManifestMissing("no manifest at " + path.string());
  std::vector<ManifestRecord> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (lineNo == 1) {
      if (line != MANIFEST_HEADER)
        throw IoError("unexpected manifest header in " + path.string());
      continue;
    }
    if (line.empty())
      continue;
    out.push_back(fromCsvRow(line, lineNo));
  }
  return out;
}

}  // namespace jazzpat
