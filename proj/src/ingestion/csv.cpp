#include "vrid/ingestion/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>

#include "vrid/error.hpp"
#include "vrid/util/files.hpp"
#include "vrid/util/format.hpp"

namespace vrid::ingestion {
namespace {

constexpr std::size_t kMovementColumns = 1 + kPoseChannels;

std::string read_source(const std::filesystem::path& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw FormatError(path.string(), 0, e.what());
  }
}

std::string build_movement_header() {
  static constexpr const char* kSuffix[] = {"px", "py", "pz", "qw", "qx", "qy", "qz"};
  std::string h = "t";
  for (Device d : kDevices) {
    for (const char* s : kSuffix) {
      h += ',';
      h += device_name(d);
      h += '_';
      h += s;
    }
  }
  return h;
}

/// Splits contents into lines; a single trailing LF is allowed.
class LineReader {
 public:
  LineReader(std::string_view contents) : rest_(contents) {}

  bool next(std::string_view& line) {
    if (rest_.empty()) return false;
    const auto pos = rest_.find('\n');
    if (pos == std::string_view::npos) {
      line = rest_;
      rest_ = {};
    } else {
      line = rest_.substr(0, pos);
      rest_.remove_prefix(pos + 1);
    }
    ++number_;
    return true;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::string_view rest_;
  std::size_t number_ = 0;
};

std::size_t split_fields(std::string_view line, std::string_view* out, std::size_t max) {
  std::size_t count = 0;
  std::size_t begin = 0;
  for (;;) {
    const auto pos = line.find(',', begin);
    const auto field = line.substr(begin, pos == std::string_view::npos ? pos : pos - begin);
    if (count < max) out[count] = field;
    ++count;
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return count;
}

double parse_real(std::string_view field, const std::string& source, std::size_t line,
                  std::string_view column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw FormatError(
        source, line,
        "column '" + std::string(column) + "': not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) {
    throw FormatError(source, line, "column '" + std::string(column) + "': non-finite value");
  }
  return v;
}

bool has_line(std::string_view contents) { return !contents.empty(); }

std::string_view header_name(const std::string& header, std::size_t index) {
  std::string_view h = header;
  for (std::size_t i = 0; i < index; ++i) h.remove_prefix(h.find(',') + 1);
  return h.substr(0, h.find(','));
}

}  // namespace

const std::string& movement_header() {
  static const std::string h = build_movement_header();
  return h;
}

const std::string& packet_header() {
  static const std::string h = "t,size_bytes,dir";
  return h;
}

std::vector<MovementSample> parse_movement_csv(std::string_view contents,
                                               const std::string& source) {
  LineReader reader(contents);
  std::string_view line;
  if (!has_line(contents) || !reader.next(line)) {
    throw FormatError(source, 1, "missing header row");
  }
  if (line != movement_header()) {
    throw FormatError(source, 1, "header mismatch: expected '" + movement_header() + "'");
  }
  std::vector<MovementSample> out;
  std::string_view fields[kMovementColumns];
  double prev_t = -std::numeric_limits<double>::infinity();
  while (reader.next(line)) {
    const std::size_t n = split_fields(line, fields, kMovementColumns);
    if (n != kMovementColumns) {
      throw FormatError(
          source, reader.number(),
          "expected " + std::to_string(kMovementColumns) + " fields, got " + std::to_string(n));
    }
    double v[kMovementColumns];
    for (std::size_t i = 0; i < kMovementColumns; ++i) {
      v[i] = parse_real(fields[i], source, reader.number(), header_name(movement_header(), i));
    }
    if (v[0] < 0.0) throw FormatError(source, reader.number(), "negative timestamp");
    if (v[0] < prev_t) throw FormatError(source, reader.number(), "timestamps decrease");
    prev_t = v[0];
    MovementSample s;
    s.t = v[0];
    for (std::size_t d = 0; d < kDevices.size(); ++d) {
      const double* p = v + 1 + d * kChannelsPerDevice;
      Pose& pose = s.pose(kDevices[d]);
      pose.position = {p[0], p[1], p[2]};
      pose.orientation = {p[3], p[4], p[5], p[6]};
    }
    out.push_back(s);
  }
  return out;
}

std::vector<MovementSample> read_movement_csv(const std::filesystem::path& path) {
  return parse_movement_csv(read_source(path), path.string());
}

std::vector<PacketRecord> parse_packet_csv(std::string_view contents, const std::string& source) {
  LineReader reader(contents);
  std::string_view line;
  if (!has_line(contents) || !reader.next(line)) {
    throw FormatError(source, 1, "missing header row");
  }
  if (line != packet_header()) {
    throw FormatError(source, 1, "header mismatch: expected '" + packet_header() + "'");
  }
  std::vector<PacketRecord> out;
  std::string_view fields[3];
  double prev_t = -std::numeric_limits<double>::infinity();
  while (reader.next(line)) {
    const std::size_t n = split_fields(line, fields, 3);
    if (n != 3) {
      throw FormatError(source, reader.number(), "expected 3 fields, got " + std::to_string(n));
    }
    PacketRecord p;
    p.t = parse_real(fields[0], source, reader.number(), "t");
    if (p.t < 0.0) throw FormatError(source, reader.number(), "negative timestamp");
    if (p.t < prev_t) throw FormatError(source, reader.number(), "timestamps decrease");
    prev_t = p.t;

    std::uint64_t size = 0;
    const auto f = fields[1];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), size);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
      throw FormatError(source, reader.number(),
                        "column 'size_bytes': not an integer: '" + std::string(f) + "'");
    }
    if (size < 1 || size > UINT32_MAX) {
      throw FormatError(source, reader.number(), "column 'size_bytes': must be in [1, 2^32)");
    }
    p.size = static_cast<std::uint32_t>(size);

    if (fields[2] == "UL") {
      p.direction = Direction::Uplink;
    } else if (fields[2] == "DL") {
      p.direction = Direction::Downlink;
    } else {
      throw FormatError(source, reader.number(),
                        "column 'dir': expected UL or DL, got '" + std::string(fields[2]) + "'");
    }
    out.push_back(p);
  }
  return out;
}

std::vector<PacketRecord> read_packet_csv(const std::filesystem::path& path) {
  return parse_packet_csv(read_source(path), path.string());
}

std::string write_movement_csv(const std::vector<MovementSample>& samples) {
  std::string out;
  out.reserve(32 + samples.size() * kMovementColumns * 10);
  out += movement_header();
  out += '\n';
  for (const auto& s : samples) {
    append_fixed(out, s.t, 6);
    for (std::size_t c = 0; c < kPoseChannels; ++c) {
      out += ',';
      append_fixed(out, s.channel(c), 6);
    }
    out += '\n';
  }
  return out;
}

std::string write_packet_csv(const std::vector<PacketRecord>& packets) {
  std::string out;
  out.reserve(32 + packets.size() * 20);
  out += packet_header();
  out += '\n';
  char buf[16];
  for (const auto& p : packets) {
    append_fixed(out, p.t, 6);
    out += ',';
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.size);
    (void)ec;
    out.append(buf, end);
    out += p.direction == Direction::Uplink ? ",UL\n" : ",DL\n";
  }
  return out;
}

}  // namespace vrid::ingestion
