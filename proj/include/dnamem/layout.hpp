#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dnamem/fragments.hpp"
#include "dnamem/seq.hpp"

namespace dnamem {

// All coordinates are 0-based, intervals half-open.
inline constexpr std::size_t kDataFieldLen = 6;
// The double-strand break sits after the first base of the recognition site,
// so a slot with site_start g cuts at coordinate g + 1.
inline constexpr std::size_t kCutOffset = 1;
inline constexpr std::size_t kMinAddressLen = 4;

const Strand& gaattc();  // data field written as "0" / recognition site
const Strand& gttaac();  // physical data field of a written "1"

struct Interval {
    std::size_t start = 0;
    std::size_t length = 0;
    std::size_t end() const { return start + length; }
    bool operator==(const Interval&) const = default;
};

// One memory sequence: left address | 6-base data field | right address,
// contiguous on the carrier. `digit` is the message bit position it stores
// (several slots share a digit in palindromic layouts).
struct MemorySlot {
    std::size_t digit = 0;
    Interval left_addr;
    std::size_t site_start = 0;
    Interval right_addr;

    std::size_t begin() const { return left_addr.start; }
    std::size_t end() const { return right_addr.end(); }
    std::size_t length() const { return end() - begin(); }
    std::size_t cut() const { return site_start + kCutOffset; }
    double site_center() const { return static_cast<double>(site_start) + kDataFieldLen / 2.0; }
    bool operator==(const MemorySlot&) const = default;
};

struct CarrierLayout {
    Strand carrier;
    std::vector<MemorySlot> slots;  // ascending carrier position
    std::size_t address_len = 0;
    std::size_t min_address_hamming = 0;
    bool palindromic = false;

    std::size_t n_bits() const;
    std::vector<std::size_t> slots_for_digit(std::size_t digit) const;
    Strand address_seq(const Interval& iv) const { return carrier.subseq(iv.start, iv.length); }
};

// Throws Error naming the first violated structural rule: slot geometry,
// address lengths/distances, stray GAATTC/GTTAAC, digit map shape,
// palindromic mirror relation.
void validate_layout(const CarrierLayout& layout);

struct DesignSpec {
    std::size_t n_bits = 0;

    // Explicit geometry: cut coordinates (site_start + 1), with total_length.
    std::vector<std::size_t> cut_positions;
    std::size_t total_length = 0;

    // Derived geometry when cut_positions is empty: slots tile left to right.
    std::size_t lead = 8;  // uncovered bases before the first slot
    std::size_t gap = 0;   // uncovered bases between adjacent slots
    std::size_t tail = 8;  // uncovered bases after the last slot

    std::size_t address_len = 0;  // 0 = auto (widest uniform fit, capped at 24)
    std::size_t min_address_hamming = 8;  // effectively capped at address_len
    std::size_t max_attempts = 10000;     // shared budget for all rejection draws
};

CarrierLayout design_carrier(const DesignSpec& spec, std::uint64_t seed);

// Prediction route: cut bookkeeping straight from the slot table.
FragmentSet expected_fragments(const CarrierLayout& layout, const std::string& bits);

struct DecodabilityReport {
    std::size_t n_states = 0;
    std::size_t distinct_signatures = 0;
    // One entry per colliding state, paired with the first state that produced
    // the same multiset.
    std::vector<std::pair<std::string, std::string>> collisions;
    bool decodable() const { return collisions.empty(); }
};

DecodabilityReport verify_decodable(const CarrierLayout& layout, std::size_t cap = 20);

// Mirrors the slot geometry around the molecule center: output carrier is the
// original, then `center_spacer` fresh bases, then the reflected slot layout
// with fresh addresses. Digit i drives physical sites i and 2n-1-i.
CarrierLayout palindromize(const CarrierLayout& layout, std::size_t center_spacer,
                           std::uint64_t seed, std::size_t max_attempts = 10000);

}  // namespace dnamem
