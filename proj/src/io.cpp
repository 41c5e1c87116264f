#include "dnamem/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dnamem/errors.hpp"

namespace dnamem {

namespace {

constexpr std::size_t kFastaWidth = 60;

std::string strip_cr(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
    return line;
}

char pair_char(PairState s) {
    switch (s) {
        case PairState::Unpaired: return 'U';
        case PairState::Paired: return 'P';
        default: return 'M';
    }
}

PairState pair_state(const std::string& c) {
    if (c == "U") return PairState::Unpaired;
    if (c == "P") return PairState::Paired;
    if (c == "M") return PairState::Mismatched;
    throw std::invalid_argument("unknown pairing state '" + c + "'");
}

// json accessor errors surface as invalid_argument with the document kind
template <typename F>
auto reading(const char* kind, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string(kind) + ": " + e.what());
    }
}

void check_format(const nlohmann::json& j, const char* kind, const std::string& tag) {
    if (!j.is_object() || j.value("format", std::string{}) != tag)
        throw std::invalid_argument(std::string(kind) + ": missing format tag \"" + tag + "\"");
    if (j.value("version", 0) != 1)
        throw std::invalid_argument(std::string(kind) + ": unsupported version");
}

}  // namespace

std::string to_fasta(const std::vector<FastaRecord>& records) {
    std::string out;
    for (const auto& rec : records) {
        out += '>';
        out += rec.name;
        out += '\n';
        const std::string seq = rec.seq.str();
        for (std::size_t i = 0; i < seq.size(); i += kFastaWidth) {
            out += seq.substr(i, kFastaWidth);
            out += '\n';
        }
    }
    return out;
}

std::vector<FastaRecord> parse_fasta(std::string_view text) {
    std::vector<FastaRecord> records;
    std::string name;
    std::string seq;
    bool open = false;

    auto flush = [&]() {
        if (!open) return;
        if (seq.empty())
            throw std::invalid_argument("fasta record \"" + name + "\" has no sequence");
        records.push_back({name, Strand(seq)});
        seq.clear();
    };

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            name = line.substr(1);
            open = true;
        } else {
            if (!open) throw std::invalid_argument("fasta sequence before any > header");
            seq += line;
        }
    }
    flush();
    return records;
}

nlohmann::json layout_to_json(const CarrierLayout& layout) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : layout.slots)
        slots.push_back({{"digit", s.digit},
                         {"left_addr", {s.left_addr.start, s.left_addr.length}},
                         {"site_start", s.site_start},
                         {"right_addr", {s.right_addr.start, s.right_addr.length}}});
    return {{"format", "dnamem-layout"},
            {"version", 1},
            {"carrier", layout.carrier.str()},
            {"address_len", layout.address_len},
            {"min_address_hamming", layout.min_address_hamming},
            {"palindromic", layout.palindromic},
            {"conventions",
             {{"coordinates", "0-based, half-open intervals"},
              {"cut", "site_start + 1"},
              {"bit_order", "bits[i] is digit i; lower digits sit closer to the 3' end"}}},
            {"slots", slots}};
}

CarrierLayout layout_from_json(const nlohmann::json& j) {
    check_format(j, "layout document", "dnamem-layout");
    CarrierLayout layout = reading("layout document", [&] {
        std::vector<MemorySlot> slots;
        for (const auto& s : j.at("slots")) {
            MemorySlot slot;
            slot.digit = s.at("digit").get<std::size_t>();
            slot.left_addr = {s.at("left_addr").at(0).get<std::size_t>(),
                              s.at("left_addr").at(1).get<std::size_t>()};
            slot.site_start = s.at("site_start").get<std::size_t>();
            slot.right_addr = {s.at("right_addr").at(0).get<std::size_t>(),
                               s.at("right_addr").at(1).get<std::size_t>()};
            slots.push_back(slot);
        }
        return CarrierLayout{Strand(j.at("carrier").get<std::string>()), std::move(slots),
                             j.at("address_len").get<std::size_t>(),
                             j.at("min_address_hamming").get<std::size_t>(),
                             j.at("palindromic").get<bool>()};
    });
    validate_layout(layout);
    return layout;
}

nlohmann::json assembly_to_json(const DuplexAssembly& assembly) {
    nlohmann::json runs = nlohmann::json::array();
    std::size_t i = 0;
    while (i < assembly.pairing.size()) {
        std::size_t j = i;
        while (j < assembly.pairing.size() && assembly.pairing[j] == assembly.pairing[i]) ++j;
        runs.push_back({std::string(1, pair_char(assembly.pairing[i])), j - i});
        i = j;
    }
    return {{"format", "dnamem-assembly"},
            {"version", 1},
            {"layout", layout_to_json(assembly.layout)},
            {"bits", assembly.bits},
            {"pairing", runs},
            {"nicks", assembly.nicks},
            {"sealed", assembly.sealed}};
}

DuplexAssembly assembly_from_json(const nlohmann::json& j) {
    check_format(j, "assembly document", "dnamem-assembly");
    CarrierLayout layout = layout_from_json(
        reading("assembly document", [&]() -> const nlohmann::json& { return j.at("layout"); }));
    return reading("assembly document", [&] {
        DuplexAssembly assembly{std::move(layout), j.at("bits").get<std::string>(), {},
                                j.at("nicks").get<std::vector<std::size_t>>(),
                                j.at("sealed").get<bool>()};
        for (const auto& run : j.at("pairing")) {
            const PairState state = pair_state(run.at(0).get<std::string>());
            assembly.pairing.insert(assembly.pairing.end(), run.at(1).get<std::size_t>(), state);
        }
        if (assembly.pairing.size() != assembly.layout.carrier.size())
            throw std::invalid_argument("assembly document: pairing length " +
                                        std::to_string(assembly.pairing.size()) +
                                        " does not cover the carrier");
        return assembly;
    });
}

nlohmann::json lane_to_json(const GelLane& lane) {
    nlohmann::json bands = nlohmann::json::array();
    for (const auto& band : lane.bands)
        bands.push_back({{"length_bp", band.length_bp}, {"count", band.merged_count}});
    return {{"format", "dnamem-gel"},
            {"version", 1},
            {"resolution_bp", lane.resolution_bp},
            {"ladder", lane.ladder},
            {"bands", bands}};
}

GelLane lane_from_json(const nlohmann::json& j) {
    check_format(j, "gel document", "dnamem-gel");
    return reading("gel document", [&] {
        GelLane lane;
        lane.resolution_bp = j.at("resolution_bp").get<std::size_t>();
        lane.ladder = j.at("ladder").get<std::vector<std::size_t>>();
        for (const auto& band : j.at("bands"))
            lane.bands.push_back(
                {band.at("length_bp").get<std::size_t>(), band.at("count").get<std::size_t>()});
        return lane;
    });
}

nlohmann::json events_to_json(const std::vector<BlockadeEvent>& events) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : events)
        out.push_back({{"start_s", e.start_time}, {"duration_s", e.duration}});
    return out;
}

std::vector<BlockadeEvent> events_from_json(const nlohmann::json& j) {
    return reading("event list", [&] {
        std::vector<BlockadeEvent> events;
        for (const auto& e : j)
            events.push_back({e.at("start_s").get<double>(), e.at("duration_s").get<double>()});
        return events;
    });
}

nlohmann::json report_to_json(const DecodabilityReport& report) {
    nlohmann::json collisions = nlohmann::json::array();
    for (const auto& [a, b] : report.collisions) collisions.push_back({a, b});
    return {{"n_states", report.n_states},
            {"distinct_signatures", report.distinct_signatures},
            {"decodable", report.decodable()},
            {"collisions", collisions}};
}

nlohmann::json hits_to_json(const std::vector<CrossHybridizationHit>& hits) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& hit : hits)
        out.push_back({{"slot", hit.slot_index},
                       {"bit", hit.bit},
                       {"window_start", hit.window_start},
                       {"identity", hit.identity}});
    return out;
}

std::string trace_to_text(const BlockadeTrace& trace) {
    std::string out = "# blockade trace\n# columns: time_s current\n";
    char line[64];
    for (std::size_t k = 0; k < trace.current.size(); ++k) {
        std::snprintf(line, sizeof line, "%.6f %.6f\n", trace.time_at(k), trace.current[k]);
        out += line;
    }
    return out;
}

BlockadeTrace trace_from_text(std::string_view text) {
    std::vector<double> times;
    std::vector<double> currents;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        double t = 0.0, c = 0.0;
        char tail = 0;
        const int got = std::sscanf(line.c_str(), "%lf %lf %c", &t, &c, &tail);
        if (got != 2) throw std::invalid_argument("trace line is not \"time current\": " + line);
        times.push_back(t);
        currents.push_back(c);
    }
    if (times.size() < 2)
        throw std::invalid_argument("a trace needs at least two samples");

    const double dt = times[1] - times[0];
    if (dt <= 0.0) throw std::invalid_argument("trace times must increase");
    double rate = 1.0 / dt;
    if (std::abs(rate - std::round(rate)) < 1e-3) rate = std::round(rate);
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - static_cast<double>(k) / rate) > dt / 2.0)
            throw std::invalid_argument("trace samples are not uniformly spaced");

    BlockadeTrace trace;
    trace.sample_rate = rate;
    trace.current = std::move(currents);
    return trace;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw Error("cannot read " + path);
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot create " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.good()) throw Error("cannot write " + path);
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace dnamem
