#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dnamem/assembly.hpp"
#include "dnamem/layout.hpp"

namespace dnamem {

struct TraceParams {
    double baseline_current = 1.0;
    double dna_block_fraction = 0.30;        // bare duplex blocks this much
    double stud_extra_block_fraction = 0.40; // additional drop under a stud
    double velocity = 100.0;                 // bases per second
    double sample_rate = 10000.0;            // samples per second
    double noise_sigma = 0.0;                // additive Gaussian, current units
    std::size_t stud_footprint = 20;         // bases occluded around a stud
    double lead_in_s = 0.02;                 // open-pore baseline before entry
    double lead_out_s = 0.02;

    double dna_level() const { return baseline_current * (1.0 - dna_block_fraction); }
    double stud_amplitude() const { return baseline_current * stud_extra_block_fraction; }
    double stud_level() const { return dna_level() - stud_amplitude(); }
};

void validate(const TraceParams& params, std::size_t carrier_len);

// Carrier with binding-only enzyme studs at every cut-eligible site.
struct StuddedComplex {
    CarrierLayout layout;
    std::string bits;
    std::vector<double> stud_positions;  // site centers, ascending
};

StuddedComplex stud(const DuplexAssembly& assembly);

enum class Orientation { Forward, Reverse };

struct BlockadeTrace {
    std::vector<double> current;
    double sample_rate = 0.0;

    double time_at(std::size_t i) const { return static_cast<double>(i) / sample_rate; }
    double duration() const { return static_cast<double>(current.size()) / sample_rate; }
};

BlockadeTrace translocate(const StuddedComplex& complex, const TraceParams& params,
                          Orientation orientation, std::uint64_t seed);

struct BlockadeEvent {
    double start_time = 0.0;
    double duration = 0.0;
    double center() const { return start_time + duration / 2.0; }
    bool operator==(const BlockadeEvent&) const = default;
};

struct DetectionParams {
    double enter_threshold = 0.0;  // open an event below this
    double exit_threshold = 0.0;   // close it above this; must sit higher
    double min_duration = 0.0;     // shorter dips are discarded
};

DetectionParams default_detection(const TraceParams& params);

std::vector<BlockadeEvent> detect_events(const BlockadeTrace& trace, const DetectionParams& det);

enum class OrientationHint { Unknown, Forward, Reverse };

// Maps event centers onto site centers and reads the bit pattern. Palindromic
// layouts vote per mirror pair and never need the orientation; otherwise
// Unknown tries both directions and a disagreement is an error.
std::string decode_trace(const std::vector<BlockadeEvent>& events, const CarrierLayout& layout,
                         const TraceParams& params,
                         OrientationHint hint = OrientationHint::Unknown);

}  // namespace dnamem
