#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dnamem/assembly.hpp"
#include "dnamem/digest.hpp"
#include "dnamem/layout.hpp"
#include "dnamem/porescan.hpp"
#include "dnamem/seq.hpp"

namespace dnamem {

struct FastaRecord {
    std::string name;
    Strand seq;
};

std::string to_fasta(const std::vector<FastaRecord>& records);  // 60-column wrap
std::vector<FastaRecord> parse_fasta(std::string_view text);

nlohmann::json layout_to_json(const CarrierLayout& layout);
CarrierLayout layout_from_json(const nlohmann::json& j);  // validates on load

nlohmann::json assembly_to_json(const DuplexAssembly& assembly);  // embeds the layout
DuplexAssembly assembly_from_json(const nlohmann::json& j);

nlohmann::json lane_to_json(const GelLane& lane);
GelLane lane_from_json(const nlohmann::json& j);

nlohmann::json events_to_json(const std::vector<BlockadeEvent>& events);
std::vector<BlockadeEvent> events_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const DecodabilityReport& report);
nlohmann::json hits_to_json(const std::vector<CrossHybridizationHit>& hits);

// Two columns: time_seconds current_units. Lines starting with # are comments.
std::string trace_to_text(const BlockadeTrace& trace);
BlockadeTrace trace_from_text(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::string fnv1a64_hex(std::string_view bytes);  // manifest checksums

}  // namespace dnamem
