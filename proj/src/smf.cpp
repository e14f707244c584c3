#include "jazzpat/smf.h"

#include <algorithm>
#include <map>

namespace jazzpat {

namespace {

void putU16(std::vector<std::uint8_t>& out, unsigned v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void putU32(std::vector<std::uint8_t>& out, unsigned long v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
}

void putVlq(std::vector<std::uint8_t>& out, unsigned v) {
  std::uint8_t buf[4];
  int n = 0;
  buf[n++] = static_cast<std::uint8_t>(v & 0x7F);
  while ((v >>= 7) != 0)
    buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
  while (n--)
    out.push_back(buf[n]);
}

struct Cursor {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos = 0;

  std::uint8_t u8(const char* what) {
    if (pos >= bytes.size())
      throw TruncatedTrack(std::string("unexpected end of file reading ") + what +
                               " at offset " + std::to_string(pos),
                           pos);
    return bytes[pos++];
  }

  unsigned u16(const char* what) {
    const unsigned hi = u8(what);
    const unsigned lo = u8(what);
    return (hi << 8) | lo;
  }

  unsigned long u32(const char* what) {
    unsigned long v = 0;
    for (int i = 0; i < 4; ++i)
      v = (v << 8) | u8(what);
    return v;
  }

  unsigned vlq() {
    const std::size_t start = pos;
    unsigned v = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8("variable-length quantity");
      v = (v << 7) | (b & 0x7F);
      if ((b & 0x80) == 0)
        return v;
    }
    throw InvalidVlq("variable-length quantity longer than 4 bytes at offset " +
                         std::to_string(start),
                     start);
  }

  void skip(std::size_t n, const char* what) {
    if (pos + n > bytes.size())
      throw TruncatedTrack(std::string("unexpected end of file skipping ") + what +
                               " at offset " + std::to_string(pos),
                           pos);
    pos += n;
  }
};

}  // namespace

SmfError::SmfError(const std::string& msg, std::size_t off) : std::runtime_error(msg), offset(off) {}

std::vector<std::uint8_t> encode(const Clip& clip, int tempoBpm) {
  if (tempoBpm < 1)
    throw std::invalid_argument("tempo " + std::to_string(tempoBpm) + " bpm");
  // (tick, off-before-on, pitch) event order; offs carry velocity 0.
  std::vector<SmfNote> notes;
  notes.reserve(clip.events.size() * 2);
  for (const auto& e : clip.events) {
    notes.push_back({e.onset * TICKS_PER_QUARTER, true, e.pitch, e.velocity});
    notes.push_back({(e.onset + e.duration) * TICKS_PER_QUARTER, false, e.pitch, 0});
  }
  std::sort(notes.begin(), notes.end(), [](const SmfNote& a, const SmfNote& b) {
    if (a.tick != b.tick)
      return a.tick < b.tick;
    if (a.on != b.on)
      return !a.on;
    return a.pitch < b.pitch;
  });

  std::vector<std::uint8_t> track;
  const unsigned tempo = 60000000u / static_cast<unsigned>(tempoBpm);
  track.insert(track.end(), {0x00, 0xFF, 0x51, 0x03});
  track.push_back(static_cast<std::uint8_t>((tempo >> 16) & 0xFF));
  track.push_back(static_cast<std::uint8_t>((tempo >> 8) & 0xFF));
  track.push_back(static_cast<std::uint8_t>(tempo & 0xFF));
  track.insert(track.end(), {0x00, 0xC0, 0x00});  // acoustic grand, channel 0
  int tick = 0;
  for (const auto& n : notes) {
    putVlq(track, static_cast<unsigned>(n.tick - tick));
    tick = n.tick;
    track.push_back(n.on ? 0x90 : 0x80);
    track.push_back(static_cast<std::uint8_t>(n.pitch));
    track.push_back(static_cast<std::uint8_t>(n.velocity));
  }
  const int endTick = clip.totalBeats * TICKS_PER_QUARTER;
  putVlq(track, static_cast<unsigned>(endTick - tick));
  track.insert(track.end(), {0xFF, 0x2F, 0x00});

  std::vector<std::uint8_t> out;
  out.reserve(14 + 8 + track.size());
  out.insert(out.end(), {'M', 'T', 'h', 'd'});
  putU32(out, 6);
  putU16(out, 0);  // format 0
  putU16(out, 1);  // one track
  putU16(out, TICKS_PER_QUARTER);
  out.insert(out.end(), {'M', 'T', 'r', 'k'});
  putU32(out, track.size());
  out.insert(out.end(), track.begin(), track.end());
  return out;
}

SmfDocument decode(const std::vector<std::uint8_t>& bytes) {
  Cursor c{bytes};
  if (bytes.size() < 4 || bytes[0] != 'M' || bytes[1] != 'T' || bytes[2] != 'h' ||
      bytes[3] != 'd')
    throw MalformedHeader("missing MThd magic at offset 0", 0);
  c.pos = 4;
  const unsigned long headerLen = c.u32("header length");
  if (headerLen != 6)
    throw MalformedHeader("header length " + std::to_string(headerLen) + " at offset 4", 4);
  SmfDocument doc;
  doc.format = static_cast<int>(c.u16("format"));
  const unsigned ntrks = c.u16("track count");
  doc.division = static_cast<int>(c.u16("division"));

  for (unsigned t = 0; t < ntrks; ++t) {
    const std::size_t magicAt = c.pos;
    if (c.u8("track magic") != 'M' || c.u8("track magic") != 'T' ||
        c.u8("track magic") != 'r' || c.u8("track magic") != 'k')
      throw MalformedHeader("missing MTrk magic at offset " + std::to_string(magicAt), magicAt);
    const unsigned long trackLen = c.u32("track length");
    const std::size_t trackEnd = c.pos + trackLen;
    if (trackEnd > bytes.size())
      throw TruncatedTrack("track length " + std::to_string(trackLen) +
                               " overruns the file at offset " + std::to_string(c.pos - 4),
                           c.pos - 4);
    int tick = 0;
    std::uint8_t status = 0;
    while (c.pos < trackEnd) {
      tick += static_cast<int>(c.vlq());
      std::uint8_t head = c.u8("event status");
      if (head < 0x80) {  // running status
        if (status == 0)
          throw TruncatedTrack("data byte without status at offset " + std::to_string(c.pos - 1),
                               c.pos - 1);
        --c.pos;
        head = status;
      }
      if (head == 0xFF) {
        const std::uint8_t type = c.u8("meta type");
        const unsigned len = c.vlq();
        if (type == 0x51 && len == 3) {
          unsigned v = 0;
          for (int i = 0; i < 3; ++i)
            v = (v << 8) | c.u8("tempo");
          doc.tempoUsPerQuarter = static_cast<int>(v);
        } else if (type == 0x2F) {
          doc.endTick = tick;
          c.skip(len, "end of track");
        } else {
          c.skip(len, "meta event");
        }
        status = 0;  // meta events cancel running status
        continue;
      }
      if (head == 0xF0 || head == 0xF7) {
        c.skip(c.vlq(), "sysex");
        status = 0;
        continue;
      }
      status = head;
      const int kind = head >> 4;
      const int dataBytes = (kind == 0xC || kind == 0xD) ? 1 : 2;
      const std::uint8_t d0 = c.u8("event data");
      const std::uint8_t d1 = dataBytes == 2 ? c.u8("event data") : 0;
      if (kind == 0x9 && d1 > 0)
        doc.notes.push_back({tick, true, d0, d1});
      else if (kind == 0x8 || kind == 0x9)
        doc.notes.push_back({tick, false, d0, 0});
    }
  }
  return doc;
}

std::vector<TimedNote> notePairs(const SmfDocument& doc) {
  std::vector<TimedNote> out;
  std::map<int, std::vector<std::size_t>> open;  // pitch -> indices, FIFO
  for (const auto& n : doc.notes) {
    if (n.on) {
      open[n.pitch].push_back(out.size());
      out.push_back({n.pitch, n.tick, 0, n.velocity});
    } else {
      auto it = open.find(n.pitch);
      if (it == open.end() || it->second.empty())
        continue;  // unmatched off; ignore for verification purposes
      const std::size_t idx = it->second.front();
      it->second.erase(it->second.begin());
      out[idx].durationTick = n.tick - out[idx].onsetTick;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TimedNote& a, const TimedNote& b) {
    return a.onsetTick != b.onsetTick ? a.onsetTick < b.onsetTick : a.pitch < b.pitch;
  });
  return out;
}

std::vector<TimedNote> clipNotes(const Clip& clip) {
  std::vector<TimedNote> out;
  out.reserve(clip.events.size());
  for (const auto& e : clip.events)
    out.push_back({e.pitch, e.onset * TICKS_PER_QUARTER, e.duration * TICKS_PER_QUARTER,
                   e.velocity});
  std::stable_sort(out.begin(), out.end(), [](const TimedNote& a, const TimedNote& b) {
    return a.onsetTick != b.onsetTick ? a.onsetTick < b.onsetTick : a.pitch < b.pitch;
  });
  return out;
}

}  // namespace jazzpat
