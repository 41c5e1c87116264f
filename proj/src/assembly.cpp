#include "dnamem/assembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dnamem/errors.hpp"

namespace dnamem {

namespace {

void check_bits(const CarrierLayout& layout, const std::string& bits) {
    if (bits.size() != layout.n_bits())
        throw std::invalid_argument("bit string length " + std::to_string(bits.size()) +
                                    ", layout stores " + std::to_string(layout.n_bits()));
    for (char c : bits)
        if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0s and 1s");
}

}  // namespace

Strand AddressingOligo::physical() const {
    std::vector<Base> rev(sequence.bases().rbegin(), sequence.bases().rend());
    return Strand(rev);
}

AddressingOligo make_oligo(const CarrierLayout& layout, std::size_t slot_index, int bit) {
    if (slot_index >= layout.slots.size())
        throw std::out_of_range("slot index " + std::to_string(slot_index) + " of " +
                                std::to_string(layout.slots.size()));
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");

    const MemorySlot& slot = layout.slots[slot_index];
    std::vector<Base> seq;
    seq.reserve(slot.length());
    for (std::size_t i = slot.begin(); i < slot.end(); ++i)
        seq.push_back(complement(layout.carrier[i]));
    if (bit == 1) {
        // leave the AATT core unpaired; only the site's G/C ends hold
        const std::size_t field = slot.site_start - slot.begin();
        for (std::size_t off = 1; off < 5; ++off)
            seq[field + off] = complement(seq[field + off]);
    }
    return AddressingOligo{slot_index, bit, Strand(std::move(seq))};
}

DuplexAssembly anneal(const CarrierLayout& layout, const std::string& bits) {
    check_bits(layout, bits);

    DuplexAssembly out{layout, bits, {}, {}, false};
    out.pairing.assign(layout.carrier.size(), PairState::Unpaired);
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
        const MemorySlot& slot = layout.slots[s];
        AddressingOligo oligo = make_oligo(layout, s, bits[slot.digit] - '0');
        for (std::size_t i = 0; i < oligo.sequence.size(); ++i) {
            const std::size_t pos = slot.begin() + i;
            out.pairing[pos] = oligo.sequence[i] == complement(layout.carrier[pos])
                                   ? PairState::Paired
                                   : PairState::Mismatched;
        }
    }
    for (std::size_t s = 0; s + 1 < layout.slots.size(); ++s)
        if (layout.slots[s].end() == layout.slots[s + 1].begin())
            out.nicks.push_back(layout.slots[s].end());
    return out;
}

DuplexAssembly ligate(const DuplexAssembly& assembly) {
    const auto& slots = assembly.layout.slots;
    for (std::size_t s = 0; s + 1 < slots.size(); ++s) {
        if (slots[s].end() != slots[s + 1].begin())
            throw LigationError("oligos " + std::to_string(s) + " and " + std::to_string(s + 1) +
                                    " do not abut at " + std::to_string(slots[s].end()),
                                slots[s].end(), s, s + 1);
    }
    DuplexAssembly out = assembly;
    out.nicks.clear();
    out.sealed = true;
    return out;
}

std::vector<CrossHybridizationHit> cross_hybridization_check(const CarrierLayout& layout,
                                                             double threshold) {
    std::vector<CrossHybridizationHit> hits;
    const std::size_t L = layout.carrier.size();
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
        for (int bit = 0; bit < 2; ++bit) {
            AddressingOligo oligo = make_oligo(layout, s, bit);
            const std::size_t len = oligo.sequence.size();
            if (len > L) continue;
            for (std::size_t w = 0; w + len <= L; ++w) {
                if (w == layout.slots[s].begin()) continue;  // intended binding site
                std::size_t matches = 0;
                for (std::size_t i = 0; i < len; ++i)
                    if (oligo.sequence[i] == complement(layout.carrier[w + i])) ++matches;
                const double identity = static_cast<double>(matches) / static_cast<double>(len);
                if (identity >= threshold)
                    hits.push_back({s, bit, w, identity});
            }
        }
    }
    return hits;
}

}  // namespace dnamem
