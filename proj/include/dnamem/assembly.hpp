#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dnamem/layout.hpp"
#include "dnamem/seq.hpp"

namespace dnamem {

// Writing oligo for one slot. `sequence` is stored carrier-aligned: position i
// faces carrier position slot.begin() + i and holds the base that would pair
// there. The synthesizable 5'->3' strand is the reverse of that.
struct AddressingOligo {
    std::size_t slot_index = 0;
    int bit = 0;
    Strand sequence;

    Strand physical() const;  // what goes in a tube / a FASTA record
};

// bit 0: exact complement of the slot region. bit 1: same, except the data
// field pairs only at its G and C ends (4 mismatches at offsets 1..4).
AddressingOligo make_oligo(const CarrierLayout& layout, std::size_t slot_index, int bit);

enum class PairState : unsigned char { Unpaired = 0, Paired = 1, Mismatched = 2 };

struct DuplexAssembly {
    CarrierLayout layout;
    std::string bits;
    std::vector<PairState> pairing;  // one state per carrier position
    std::vector<std::size_t> nicks;  // coordinates where two oligo ends abut
    bool sealed = false;
};

DuplexAssembly anneal(const CarrierLayout& layout, const std::string& bits);

// Seals the nicks. Every adjacent oligo pair must abut exactly; a gap or
// overlap raises LigationError naming the junction.
DuplexAssembly ligate(const DuplexAssembly& assembly);

struct CrossHybridizationHit {
    std::size_t slot_index = 0;
    int bit = 0;
    std::size_t window_start = 0;
    double identity = 0.0;
};

// Slides every oligo (both bit variants) along the carrier and reports
// off-target windows whose pairing identity reaches the threshold.
std::vector<CrossHybridizationHit> cross_hybridization_check(const CarrierLayout& layout,
                                                             double threshold = 0.75);

}  // namespace dnamem
