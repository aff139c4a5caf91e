#include "rfimon/ubx.hpp"

#include <cstring>

#include "rfimon/errors.hpp"

namespace rfimon {

namespace {
constexpr std::uint8_t kSync1 = 0xB5;
constexpr std::uint8_t kSync2 = 0x62;

void accumulate(Checksum& ck, std::uint8_t byte) {
    ck.a = static_cast<std::uint8_t>(ck.a + byte);
    ck.b = static_cast<std::uint8_t>(ck.b + ck.a);
}
}  // namespace

Checksum frame_checksum(const RawFrame& frame) {
    Checksum ck;
    accumulate(ck, frame.msg_class);
    accumulate(ck, frame.msg_id);
    const std::size_t len = frame.payload.size();
    accumulate(ck, static_cast<std::uint8_t>(len & 0xff));
    accumulate(ck, static_cast<std::uint8_t>((len >> 8) & 0xff));
    for (std::uint8_t b : frame.payload) accumulate(ck, b);
    return ck;
}

RawFrame parse_frame(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
    if (bytes.size() < 2 || bytes[0] != kSync1 || bytes[1] != kSync2)
        throw BadSync("no sync pattern at stream start");
    if (bytes.size() < 6) throw Truncated("frame header incomplete");

    RawFrame frame;
    frame.msg_class = bytes[2];
    frame.msg_id = bytes[3];
    const std::size_t len = bytes[4] | (static_cast<std::size_t>(bytes[5]) << 8);
    const std::size_t total = 6 + len + 2;
    if (bytes.size() < total) throw Truncated("declared payload exceeds available bytes");

    frame.payload.assign(bytes.begin() + 6, bytes.begin() + 6 + len);
    const Checksum ck = frame_checksum(frame);
    if (ck.a != bytes[6 + len] || ck.b != bytes[6 + len + 1])
        throw BadChecksum("stored checksum does not match recomputed value");

    if (consumed) *consumed = total;
    return frame;
}

std::vector<std::uint8_t> encode_frame(const RawFrame& frame) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + frame.payload.size());
    out.push_back(kSync1);
    out.push_back(kSync2);
    out.push_back(frame.msg_class);
    out.push_back(frame.msg_id);
    const std::size_t len = frame.payload.size();
    out.push_back(static_cast<std::uint8_t>(len & 0xff));
    out.push_back(static_cast<std::uint8_t>((len >> 8) & 0xff));
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    const Checksum ck = frame_checksum(frame);
    out.push_back(ck.a);
    out.push_back(ck.b);
    return out;
}

SpectrumRecord decode_spectrum(const RawFrame& frame, const DecodeLayout& layout) {
    if (frame.msg_class != layout.msg_class || frame.msg_id != layout.msg_id)
        throw LayoutMismatch("frame class/id does not match layout");
    if (layout.bin_count == 0) throw LayoutMismatch("layout declares zero bins");

    const auto& p = frame.payload;
    const std::size_t need_bins = layout.bins_offset + layout.bin_count;
    if (p.size() < need_bins || p.size() < layout.pga_offset + 1 ||
        p.size() < layout.temp_offset + 2 || p.size() < layout.timestamp_offset + 4)
        throw PayloadTooShort("payload shorter than layout requires");

    SpectrumRecord rec;
    rec.t = static_cast<double>(p[layout.timestamp_offset] |
                                (static_cast<std::uint32_t>(p[layout.timestamp_offset + 1]) << 8) |
                                (static_cast<std::uint32_t>(p[layout.timestamp_offset + 2]) << 16) |
                                (static_cast<std::uint32_t>(p[layout.timestamp_offset + 3]) << 24));
    rec.pga = static_cast<double>(p[layout.pga_offset]);
    const std::uint16_t deci_k =
        static_cast<std::uint16_t>(p[layout.temp_offset] | (p[layout.temp_offset + 1] << 8));
    rec.temp_k = deci_k / 10.0;

    const std::size_t n = layout.bin_count;
    rec.df_hz = n > 1 ? layout.span_hz / static_cast<double>(n - 1) : 0.0;
    rec.f0_hz = layout.center_hz - layout.span_hz / 2.0;
    rec.bins_db.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        rec.bins_db[i] = layout.zero_offset_db + layout.power_scale_db * p[layout.bins_offset + i];
    return rec;
}

}  // namespace rfimon
