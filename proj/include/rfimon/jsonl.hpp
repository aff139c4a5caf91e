#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rfimon/types.hpp"

namespace rfimon {

using StreamItem = std::variant<SpectrumRecord, ReceiverEpoch>;

struct SchemaViolation {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct StreamReadResult {
    std::vector<StreamItem> items;
    std::vector<SchemaViolation> violations;
    std::vector<std::string> warnings;  // e.g. non-monotone timestamps
};

/// Read the canonical JSONL stream. Malformed lines are collected with their
/// line numbers and the stream continues. Throws Unreadable for a bad source.
StreamReadResult read_epoch_stream(std::istream& in);
StreamReadResult read_epoch_stream_file(const std::string& path);

std::string to_jsonl(const SpectrumRecord& rec);
std::string to_jsonl(const ReceiverEpoch& epoch);

}  // namespace rfimon
