#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vrid/core/types.hpp"

namespace vrid::ingestion {

/// `t,head_px,head_py,...,right_qz` (22 columns).
const std::string& movement_header();
/// `t,size_bytes,dir`
const std::string& packet_header();

/// Parses a movement CSV. The header is validated verbatim; every row must have
/// 22 finite numeric fields and non-decreasing timestamps. Throws FormatError.
std::vector<MovementSample> parse_movement_csv(std::string_view contents,
                                               const std::string& source = "<memory>");
/// Reads and parses a file; an unreadable file is a FormatError at line 0.
std::vector<MovementSample> read_movement_csv(const std::filesystem::path& path);

/// Parses a packet CSV: finite t, integer size >= 1, direction exactly "UL" or "DL".
std::vector<PacketRecord> parse_packet_csv(std::string_view contents,
                                           const std::string& source = "<memory>");
std::vector<PacketRecord> read_packet_csv(const std::filesystem::path& path);

/// Canonical encoding: LF line endings, 6 fractional digits for reals.
std::string write_movement_csv(const std::vector<MovementSample>& samples);
std::string write_packet_csv(const std::vector<PacketRecord>& packets);

}  // namespace vrid::ingestion
