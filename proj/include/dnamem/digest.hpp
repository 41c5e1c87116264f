#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dnamem/assembly.hpp"
#include "dnamem/fragments.hpp"
#include "dnamem/seq.hpp"

namespace dnamem {

struct Enzyme {
    std::string name;
    Strand recognition;   // must be its own reverse complement
    std::size_t cut_offset = 0;
    bool requires_full_duplex = true;
};

// Throws if the recognition sequence is not palindromic or the offset falls
// outside it.
Enzyme make_enzyme(std::string name, Strand recognition, std::size_t cut_offset,
                   bool requires_full_duplex);
Enzyme ecori();

// Complete digestion. Scans the carrier for the recognition motif and cuts at
// every occurrence whose positions are all paired; nicks do not matter.
// This route is deliberately independent of expected_fragments.
FragmentSet digest(const DuplexAssembly& assembly, const Enzyme& enzyme);

struct GelBand {
    std::size_t length_bp = 0;   // longest member of the merged group
    std::size_t merged_count = 1;
    bool operator==(const GelBand&) const = default;
};

struct GelLane {
    std::vector<GelBand> bands;  // descending length
    std::size_t resolution_bp = 2;
    std::vector<std::size_t> ladder;  // descending reference lengths
    bool operator==(const GelLane&) const = default;
};

// Fragments closer than resolution_bp co-migrate: descending lengths are
// chain-grouped and each group becomes one band carrying its count.
// An empty ladder means 10 bp steps covering the largest fragment.
GelLane render_gel(const FragmentSet& fragments, std::size_t resolution_bp = 2,
                   std::vector<std::size_t> ladder = {});

std::string gel_text(const GelLane& lane);  // plain-text rendering

// Matches the lane against the rendered prediction of every state. Exactly one
// match decodes; none -> Unreadable; several -> Ambiguous with candidates.
std::string decode_gel(const GelLane& lane, const CarrierLayout& layout, const Enzyme& enzyme);

}  // namespace dnamem
