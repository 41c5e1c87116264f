#include "dnamem/porescan.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "dnamem/errors.hpp"
#include "dnamem/rng.hpp"

namespace dnamem {

void validate(const TraceParams& params, std::size_t carrier_len) {
    if (params.baseline_current <= 0.0)
        throw std::invalid_argument("baseline current must be positive");
    if (params.dna_block_fraction <= 0.0 || params.dna_block_fraction >= 1.0)
        throw std::invalid_argument("dna block fraction must lie in (0, 1)");
    if (params.stud_extra_block_fraction <= 0.0 ||
        params.dna_block_fraction + params.stud_extra_block_fraction >= 1.0)
        throw std::invalid_argument("stud level must stay above zero current");
    if (params.velocity <= 0.0) throw std::invalid_argument("velocity must be positive");
    if (params.sample_rate <= 0.0) throw std::invalid_argument("sample rate must be positive");
    if (params.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
    if (params.stud_footprint == 0) throw std::invalid_argument("stud footprint must be positive");
    if (params.stud_footprint > carrier_len)
        throw std::invalid_argument("stud footprint exceeds the molecule");
    if (params.lead_in_s < 0.0 || params.lead_out_s < 0.0)
        throw std::invalid_argument("lead times must be >= 0");
    const double samples_per_stud =
        params.sample_rate * static_cast<double>(params.stud_footprint) / params.velocity;
    if (samples_per_stud < 4.0)
        throw std::invalid_argument("sample rate too low to resolve a stud dwell");
}

StuddedComplex stud(const DuplexAssembly& assembly) {
    StuddedComplex out{assembly.layout, assembly.bits, {}};
    for (const MemorySlot& slot : assembly.layout.slots) {
        bool duplexed = true;
        for (std::size_t i = 0; i < kDataFieldLen; ++i)
            if (assembly.pairing[slot.site_start + i] != PairState::Paired) {
                duplexed = false;
                break;
            }
        if (duplexed) out.stud_positions.push_back(slot.site_center());
    }
    std::sort(out.stud_positions.begin(), out.stud_positions.end());
    return out;
}

BlockadeTrace translocate(const StuddedComplex& complex, const TraceParams& params,
                          Orientation orientation, std::uint64_t seed) {
    const std::size_t L = complex.layout.carrier.size();
    validate(params, L);

    const double dna_time = static_cast<double>(L) / params.velocity;
    const double total = params.lead_in_s + dna_time + params.lead_out_s;
    const auto n_samples = static_cast<std::size_t>(std::llround(total * params.sample_rate));
    const double half_footprint = static_cast<double>(params.stud_footprint) / 2.0;

    Rng rng(seed);
    BlockadeTrace trace;
    trace.sample_rate = params.sample_rate;
    trace.current.reserve(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double t = static_cast<double>(k) / params.sample_rate;
        double level = params.baseline_current;
        if (t >= params.lead_in_s && t < params.lead_in_s + dna_time) {
            const double x = (t - params.lead_in_s) * params.velocity;
            const double pos = orientation == Orientation::Forward ? x : static_cast<double>(L) - x;
            level = params.dna_level();
            for (double c : complex.stud_positions)
                if (std::abs(pos - c) <= half_footprint) {
                    level = params.stud_level();
                    break;
                }
        }
        if (params.noise_sigma > 0.0) level += rng.gaussian(0.0, params.noise_sigma);
        trace.current.push_back(level);
    }
    return trace;
}

DetectionParams default_detection(const TraceParams& params) {
    return DetectionParams{params.dna_level() - 0.6 * params.stud_amplitude(),
                           params.dna_level() - 0.4 * params.stud_amplitude(),
                           0.5 * static_cast<double>(params.stud_footprint) / params.velocity};
}

std::vector<BlockadeEvent> detect_events(const BlockadeTrace& trace, const DetectionParams& det) {
    std::vector<BlockadeEvent> events;
    bool open = false;
    double start = 0.0;
    for (std::size_t k = 0; k < trace.current.size(); ++k) {
        const double t = trace.time_at(k);
        if (!open && trace.current[k] < det.enter_threshold) {
            open = true;
            start = t;
        } else if (open && trace.current[k] > det.exit_threshold) {
            if (t - start >= det.min_duration) events.push_back({start, t - start});
            open = false;
        }
    }
    if (open) {
        const double dur = trace.duration() - start;
        if (dur >= det.min_duration) events.push_back({start, dur});
    }
    return events;
}

namespace {

// Explains the events as stud passages under one direction of travel. Returns
// the bit string, or nothing when an event lands on no site, a site is hit
// twice, or two sites carrying the same digit disagree.
std::optional<std::string> explain(const std::vector<BlockadeEvent>& events,
                                   const CarrierLayout& layout, const TraceParams& params,
                                   Orientation orientation) {
    const double L = static_cast<double>(layout.carrier.size());
    const double tol = 2.0 / params.velocity;  // two bases of slack

    std::vector<double> site_times;
    for (const MemorySlot& slot : layout.slots) {
        const double c = slot.site_center();
        const double x = orientation == Orientation::Forward ? c : L - c;
        site_times.push_back(params.lead_in_s + x / params.velocity);
    }

    std::vector<int> hits(layout.slots.size(), 0);
    for (const BlockadeEvent& event : events) {
        std::size_t best = 0;
        double best_dist = std::abs(event.center() - site_times[0]);
        for (std::size_t k = 1; k < site_times.size(); ++k) {
            const double d = std::abs(event.center() - site_times[k]);
            if (d < best_dist) {
                best_dist = d;
                best = k;
            }
        }
        if (best_dist > tol) return std::nullopt;
        if (++hits[best] > 1) return std::nullopt;
    }

    std::string bits(layout.n_bits(), '?');
    for (std::size_t k = 0; k < layout.slots.size(); ++k) {
        const char value = hits[k] ? '0' : '1';
        char& digit = bits[layout.slots[k].digit];
        if (digit == '?') digit = value;
        else if (digit != value) return std::nullopt;
    }
    if (bits.find('?') != std::string::npos) return std::nullopt;
    return bits;
}

}  // namespace

std::string decode_trace(const std::vector<BlockadeEvent>& events, const CarrierLayout& layout,
                         const TraceParams& params, OrientationHint hint) {
    if (layout.palindromic) {
        // the mirrored site set makes both directions equivalent; the mirror
        // pair of each digit must agree, which replaces the orientation
        auto bits = explain(events, layout, params, Orientation::Forward);
        if (!bits)
            throw DecodeError(DecodeError::Kind::Unreadable,
                              "events do not match the mirrored site pattern");
        return *bits;
    }

    if (hint == OrientationHint::Forward || hint == OrientationHint::Reverse) {
        auto bits = explain(events, layout, params,
                            hint == OrientationHint::Forward ? Orientation::Forward
                                                             : Orientation::Reverse);
        if (!bits)
            throw DecodeError(DecodeError::Kind::Unreadable,
                              "events do not match the site pattern in the given direction");
        return *bits;
    }

    auto fwd = explain(events, layout, params, Orientation::Forward);
    auto rev = explain(events, layout, params, Orientation::Reverse);
    if (fwd && rev) {
        if (*fwd == *rev) return *fwd;
        std::vector<std::string> candidates{*fwd, *rev};
        std::sort(candidates.begin(), candidates.end());
        throw DecodeError(DecodeError::Kind::Ambiguous,
                          "both directions explain the events but read differently", candidates);
    }
    if (fwd) return *fwd;
    if (rev) return *rev;
    throw DecodeError(DecodeError::Kind::Unreadable,
                      "events do not match the site pattern in either direction");
}

}  // namespace dnamem
