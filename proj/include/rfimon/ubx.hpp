#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfimon/types.hpp"

namespace rfimon {

/// One framed binary message: sync 0xB5 0x62, class, id, LE16 length,
/// payload, two Fletcher checksum bytes over class..payload.
struct RawFrame {
    std::uint8_t msg_class = 0;
    std::uint8_t msg_id = 0;
    std::vector<std::uint8_t> payload;
};

/// Two-accumulator mod-256 checksum over class, id, length, payload.
struct Checksum {
    std::uint8_t a = 0;
    std::uint8_t b = 0;
};

Checksum frame_checksum(const RawFrame& frame);

/// Parse one frame from the start of `bytes`. Throws BadSync, Truncated,
/// BadChecksum. On success `consumed` is set to header+payload+checksum size.
RawFrame parse_frame(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

std::vector<std::uint8_t> encode_frame(const RawFrame& frame);

/// Config-driven payload layout for the vendor spectrum message. Byte offsets
/// are receiver-specific and never documented publicly, so they live here.
struct DecodeLayout {
    std::uint8_t msg_class = 0x0A;
    std::uint8_t msg_id = 0x31;
    double center_hz = 1575.25e6;  // midpoint of first..last bin centers
    double span_hz = 4.5e6;        // last bin center minus first bin center
    std::size_t bin_count = 10;
    double power_scale_db = 1.0;   // dB per payload count
    double zero_offset_db = -160.0;
    std::size_t bins_offset = 8;   // one byte per bin
    std::size_t pga_offset = 4;
    std::size_t temp_offset = 5;   // LE16 deci-Kelvin; bin_count bytes follow bins_offset
    std::size_t timestamp_offset = 0;  // LE32 seconds
};

/// Decode a raw frame into a SpectrumRecord per the layout. Throws
/// LayoutMismatch when class/id disagree, PayloadTooShort otherwise.
SpectrumRecord decode_spectrum(const RawFrame& frame, const DecodeLayout& layout);

}  // namespace rfimon
