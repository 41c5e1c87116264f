#include "dnamem/layout.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "dnamem/errors.hpp"
#include "dnamem/rng.hpp"

namespace dnamem {

const Strand& gaattc() {
    static const Strand s("GAATTC");
    return s;
}

const Strand& gttaac() {
    static const Strand s("GTTAAC");
    return s;
}

std::size_t CarrierLayout::n_bits() const {
    std::size_t n = 0;
    for (const auto& slot : slots) n = std::max(n, slot.digit + 1);
    return n;
}

std::vector<std::size_t> CarrierLayout::slots_for_digit(std::size_t digit) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i].digit == digit) out.push_back(i);
    return out;
}

namespace {

std::vector<std::size_t> site_starts_of(const CarrierLayout& layout) {
    std::vector<std::size_t> out;
    for (const auto& slot : layout.slots) out.push_back(slot.site_start);
    return out;
}

// Slot region as it would read on the carrier after writing bit 1: the data
// field flips to GTTAAC. Scanning this variant for stray motifs covers the
// bit-1 oligo, whose physical strand is its reverse complement.
std::vector<Base> bit1_variant(const Strand& carrier, const MemorySlot& slot) {
    std::vector<Base> v(carrier.bases().begin() + slot.begin(),
                        carrier.bases().begin() + slot.end());
    const std::size_t off = slot.site_start - slot.begin();
    for (std::size_t i = 0; i < kDataFieldLen; ++i) v[off + i] = gttaac()[i];
    return v;
}

struct MotifCheck {
    bool ok = true;
    std::string what;
};

MotifCheck scan_carrier_motifs(const Strand& carrier, const std::vector<MemorySlot>& slots) {
    std::vector<std::size_t> expected;
    for (const auto& slot : slots) expected.push_back(slot.site_start);
    std::sort(expected.begin(), expected.end());

    if (find_sites(carrier, gaattc()) != expected)
        return {false, "GAATTC occurrences must be exactly the slot data fields"};
    if (!find_sites(carrier, gttaac()).empty())
        return {false, "GTTAAC must not occur on the carrier"};

    for (const auto& slot : slots) {
        Strand variant(bit1_variant(carrier, slot));
        if (!find_sites(variant, gaattc()).empty())
            return {false, "GAATTC must not appear on a written-1 slot"};
        if (find_sites(variant, gttaac()) !=
            std::vector<std::size_t>{slot.site_start - slot.begin()})
            return {false, "stray GTTAAC on a written-1 slot"};
    }
    return {};
}

// Everything random about a carrier: address draws first (in slot order, left
// then right), then filler bases. Each draw charges the shared attempt budget.
struct SequencePlan {
    std::size_t total_length = 0;
    std::vector<std::optional<Base>> fixed;  // pre-placed content incl. data fields
    std::vector<Interval> new_addresses;
    std::vector<Strand> fixed_addresses;  // constrain distances but are not drawn
    std::size_t address_len = 0;
    std::size_t min_hamming = 0;
    std::size_t max_attempts = 0;
};

Strand build_carrier(const SequencePlan& plan, const std::vector<MemorySlot>& slots, Rng& rng) {
    std::size_t attempts = 0;
    std::string last_failure = "unknown";
    const auto charge = [&](std::size_t k = 1) {
        attempts += k;
        if (attempts > plan.max_attempts)
            throw DesignError("carrier generation exhausted " +
                                  std::to_string(plan.max_attempts) +
                                  " attempts; last failing constraint: " + last_failure,
                              last_failure);
    };

    std::vector<bool> is_address(plan.total_length, false);
    for (const auto& iv : plan.new_addresses)
        for (std::size_t i = iv.start; i < iv.end(); ++i) is_address[i] = true;

    for (;;) {
        std::vector<Strand> accepted = plan.fixed_addresses;
        std::vector<std::vector<Base>> drawn;

        for (const auto& iv : plan.new_addresses) {
            for (;;) {
                charge();
                std::vector<Base> cand;
                cand.reserve(plan.address_len);
                for (std::size_t i = 0; i < plan.address_len; ++i) cand.push_back(rng.base());
                Strand candidate(cand);
                bool far_enough = true;
                for (const auto& other : accepted) {
                    if (hamming(candidate, other) < plan.min_hamming) {
                        far_enough = false;
                        break;
                    }
                }
                if (far_enough) {
                    accepted.push_back(candidate);
                    drawn.push_back(std::move(cand));
                    break;
                }
                last_failure = "address pairwise hamming >= " + std::to_string(plan.min_hamming);
            }
        }

        std::vector<Base> bases(plan.total_length, Base::A);
        for (std::size_t i = 0; i < plan.total_length; ++i)
            if (plan.fixed[i]) bases[i] = *plan.fixed[i];
        for (std::size_t k = 0; k < plan.new_addresses.size(); ++k) {
            const auto& iv = plan.new_addresses[k];
            for (std::size_t i = 0; i < iv.length; ++i) bases[iv.start + i] = drawn[k][i];
        }
        charge();
        for (std::size_t i = 0; i < plan.total_length; ++i)
            if (!plan.fixed[i] && !is_address[i]) bases[i] = rng.base();

        Strand carrier(bases);
        MotifCheck check = scan_carrier_motifs(carrier, slots);
        if (check.ok) return carrier;
        last_failure = check.what;
        charge();
    }
}

struct Geometry {
    std::size_t total_length = 0;
    std::size_t address_len = 0;
    std::vector<MemorySlot> slots;
};

void check_site_room(const std::vector<std::size_t>& site_starts, std::size_t address_len,
                     std::size_t total_length) {
    if (site_starts.front() < address_len)
        throw DesignError("no room for the left address of the first slot", "address room");
    if (site_starts.back() + kDataFieldLen + address_len > total_length)
        throw DesignError("no room for the right address of the last slot", "address room");
    for (std::size_t i = 0; i + 1 < site_starts.size(); ++i) {
        const std::size_t between = site_starts[i + 1] - site_starts[i];
        if (between < kDataFieldLen || between - kDataFieldLen < 2 * address_len)
            throw DesignError("slots would overlap between cuts " +
                                  std::to_string(site_starts[i] + kCutOffset) + " and " +
                                  std::to_string(site_starts[i + 1] + kCutOffset),
                              "slot overlap");
    }
}

Geometry geometry_from_cuts(const DesignSpec& spec) {
    if (spec.cut_positions.size() != spec.n_bits)
        throw std::invalid_argument("need exactly one cut position per bit");
    if (spec.total_length == 0)
        throw std::invalid_argument("total_length required with explicit cut positions");
    if (!std::is_sorted(spec.cut_positions.begin(), spec.cut_positions.end()) ||
        std::adjacent_find(spec.cut_positions.begin(), spec.cut_positions.end()) !=
            spec.cut_positions.end())
        throw std::invalid_argument("cut positions must be strictly ascending");
    if (spec.cut_positions.front() < kCutOffset)
        throw std::invalid_argument("cut position before the first base");

    std::vector<std::size_t> gs;
    for (std::size_t c : spec.cut_positions) gs.push_back(c - kCutOffset);
    if (gs.back() + kDataFieldLen > spec.total_length)
        throw DesignError("data field runs past the carrier end", "carrier bounds");

    std::size_t a = spec.address_len;
    if (a == 0) {
        // widest uniform address that fits everywhere, capped at 24
        std::size_t widest = std::min<std::size_t>(24, gs.front());
        widest = std::min(widest, spec.total_length - (gs.back() + kDataFieldLen));
        for (std::size_t i = 0; i + 1 < gs.size(); ++i)
            widest = std::min(widest, (gs[i + 1] - gs[i] - kDataFieldLen) / 2);
        if (widest < kMinAddressLen)
            throw DesignError("no uniform address length >= " + std::to_string(kMinAddressLen) +
                                  " fits this geometry",
                              "address_len");
        a = widest;
    }
    check_site_room(gs, a, spec.total_length);

    Geometry geo;
    geo.total_length = spec.total_length;
    geo.address_len = a;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        MemorySlot slot;
        slot.digit = spec.n_bits - 1 - i;  // digit 0 sits nearest the 3' end
        slot.left_addr = {gs[i] - a, a};
        slot.site_start = gs[i];
        slot.right_addr = {gs[i] + kDataFieldLen, a};
        geo.slots.push_back(slot);
    }
    return geo;
}

Geometry geometry_from_spacing(const DesignSpec& spec) {
    const std::size_t a = spec.address_len == 0 ? 12 : spec.address_len;
    const std::size_t pitch = 2 * a + kDataFieldLen + spec.gap;

    Geometry geo;
    geo.address_len = a;
    geo.total_length = spec.lead + spec.n_bits * (2 * a + kDataFieldLen) +
                       (spec.n_bits - 1) * spec.gap + spec.tail;
    for (std::size_t i = 0; i < spec.n_bits; ++i) {
        MemorySlot slot;
        slot.digit = spec.n_bits - 1 - i;
        slot.left_addr = {spec.lead + i * pitch, a};
        slot.site_start = spec.lead + i * pitch + a;
        slot.right_addr = {slot.site_start + kDataFieldLen, a};
        geo.slots.push_back(slot);
    }
    return geo;
}

std::vector<Strand> all_addresses(const CarrierLayout& layout) {
    std::vector<Strand> out;
    for (const auto& slot : layout.slots) {
        out.push_back(layout.address_seq(slot.left_addr));
        out.push_back(layout.address_seq(slot.right_addr));
    }
    return out;
}

}  // namespace

CarrierLayout design_carrier(const DesignSpec& spec, std::uint64_t seed) {
    if (spec.n_bits == 0) throw std::invalid_argument("n_bits must be positive");
    if (spec.address_len != 0 && spec.address_len < kMinAddressLen)
        throw std::invalid_argument("address_len must be 0 (auto) or >= 4");
    if (spec.min_address_hamming == 0)
        throw std::invalid_argument("min_address_hamming must be positive");

    Geometry geo = spec.cut_positions.empty() ? geometry_from_spacing(spec)
                                              : geometry_from_cuts(spec);

    SequencePlan plan;
    plan.total_length = geo.total_length;
    plan.fixed.assign(geo.total_length, std::nullopt);
    for (const auto& slot : geo.slots)
        for (std::size_t i = 0; i < kDataFieldLen; ++i)
            plan.fixed[slot.site_start + i] = gaattc()[i];
    for (const auto& slot : geo.slots) {
        plan.new_addresses.push_back(slot.left_addr);
        plan.new_addresses.push_back(slot.right_addr);
    }
    plan.address_len = geo.address_len;
    plan.min_hamming = std::min(spec.min_address_hamming, geo.address_len);
    plan.max_attempts = spec.max_attempts;

    Rng rng(seed);
    Strand carrier = build_carrier(plan, geo.slots, rng);
    CarrierLayout layout{std::move(carrier), std::move(geo.slots), geo.address_len,
                         plan.min_hamming, false};
    validate_layout(layout);
    return layout;
}

FragmentSet expected_fragments(const CarrierLayout& layout, const std::string& bits) {
    const std::size_t n = layout.n_bits();
    if (bits.size() != n)
        throw std::invalid_argument("bit string length " + std::to_string(bits.size()) +
                                    ", layout stores " + std::to_string(n));
    for (char c : bits)
        if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0s and 1s");

    std::vector<std::size_t> cuts;
    for (const auto& slot : layout.slots)
        if (bits[slot.digit] == '0') cuts.push_back(slot.cut());
    std::sort(cuts.begin(), cuts.end());

    FragmentSet fs;
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        fs.lengths.push_back(c - prev);
        prev = c;
    }
    fs.lengths.push_back(layout.carrier.size() - prev);
    std::sort(fs.lengths.begin(), fs.lengths.end());
    return fs;
}

DecodabilityReport verify_decodable(const CarrierLayout& layout, std::size_t cap) {
    const std::size_t n = layout.n_bits();
    if (n > cap)
        throw Error("exhaustive check refused: " + std::to_string(n) +
                    " bits exceeds the cap of " + std::to_string(cap));

    DecodabilityReport report;
    report.n_states = std::size_t{1} << n;

    std::map<std::vector<std::size_t>, std::string> seen;
    for (std::size_t state = 0; state < report.n_states; ++state) {
        std::string bits(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            bits[i] = char('0' + ((state >> (n - 1 - i)) & 1));
        FragmentSet fs = expected_fragments(layout, bits);
        auto [it, inserted] = seen.emplace(std::move(fs.lengths), bits);
        if (!inserted) report.collisions.emplace_back(it->second, bits);
    }
    report.distinct_signatures = seen.size();
    return report;
}

CarrierLayout palindromize(const CarrierLayout& layout, std::size_t center_spacer,
                           std::uint64_t seed, std::size_t max_attempts) {
    if (layout.palindromic) throw Error("layout is already palindromic");
    validate_layout(layout);

    const std::size_t n = layout.slots.size();
    if (n >= 2) {
        const std::size_t delta = layout.slots[1].cut() - layout.slots[0].cut();
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (layout.slots[i + 1].cut() - layout.slots[i].cut() != delta)
                throw Error("palindromize requires equal inter-site spacing");
    }

    const std::size_t L = layout.carrier.size();
    const std::size_t M = 2 * L + center_spacer;
    const std::size_t a = layout.address_len;

    std::vector<MemorySlot> slots;
    for (std::size_t j = 0; j < n; ++j) {
        MemorySlot slot = layout.slots[j];
        slot.digit = j;  // digit i drives site i and site 2n-1-i
        slots.push_back(slot);
    }
    for (std::size_t j = n; j-- > 0;) {
        const MemorySlot& orig = layout.slots[j];
        MemorySlot mirror;
        mirror.digit = j;
        mirror.left_addr = {M - orig.right_addr.end(), a};
        mirror.site_start = M - orig.site_start - kDataFieldLen;
        mirror.right_addr = {M - orig.left_addr.end(), a};
        slots.push_back(mirror);
    }

    SequencePlan plan;
    plan.total_length = M;
    plan.fixed.assign(M, std::nullopt);
    for (std::size_t i = 0; i < L; ++i) plan.fixed[i] = layout.carrier[i];
    for (std::size_t k = n; k < 2 * n; ++k)
        for (std::size_t i = 0; i < kDataFieldLen; ++i)
            plan.fixed[slots[k].site_start + i] = gaattc()[i];
    for (std::size_t k = n; k < 2 * n; ++k) {
        plan.new_addresses.push_back(slots[k].left_addr);
        plan.new_addresses.push_back(slots[k].right_addr);
    }
    plan.fixed_addresses = all_addresses(layout);
    plan.address_len = a;
    plan.min_hamming = layout.min_address_hamming;
    plan.max_attempts = max_attempts;

    Rng rng(seed);
    Strand carrier = build_carrier(plan, slots, rng);
    CarrierLayout out{std::move(carrier), std::move(slots), a, layout.min_address_hamming, true};
    validate_layout(out);
    return out;
}

void validate_layout(const CarrierLayout& layout) {
    if (layout.slots.empty()) throw Error("layout has no memory slots");
    if (layout.address_len < kMinAddressLen)
        throw Error("address_len must be >= " + std::to_string(kMinAddressLen));
    if (layout.min_address_hamming == 0 || layout.min_address_hamming > layout.address_len)
        throw Error("min_address_hamming must be in [1, address_len]");

    const std::size_t M = layout.carrier.size();
    for (std::size_t i = 0; i < layout.slots.size(); ++i) {
        const MemorySlot& s = layout.slots[i];
        if (s.left_addr.length != layout.address_len || s.right_addr.length != layout.address_len)
            throw Error("slot " + std::to_string(i) + ": address length mismatch");
        if (s.left_addr.end() != s.site_start || s.site_start + kDataFieldLen != s.right_addr.start)
            throw Error("slot " + std::to_string(i) +
                        ": left address, data field, right address must be contiguous");
        if (s.end() > M) throw Error("slot " + std::to_string(i) + " runs past the carrier");
        if (i > 0 && layout.slots[i - 1].end() > s.begin())
            throw Error("slots " + std::to_string(i - 1) + " and " + std::to_string(i) +
                        " overlap or are out of order");
    }

    const std::size_t n = layout.n_bits();
    if (!layout.palindromic) {
        if (layout.slots.size() != n)
            throw Error("digit map must cover each bit exactly once");
        std::vector<bool> seen(n, false);
        for (const auto& s : layout.slots) {
            if (seen[s.digit]) throw Error("digit " + std::to_string(s.digit) + " appears twice");
            seen[s.digit] = true;
        }
    } else {
        if (layout.slots.size() != 2 * n)
            throw Error("palindromic layout needs two sites per bit");
        for (std::size_t j = 0; j < n; ++j) {
            const MemorySlot& left = layout.slots[j];
            const MemorySlot& right = layout.slots[2 * n - 1 - j];
            if (left.digit != j || right.digit != j)
                throw Error("palindromic digit map must pair site " + std::to_string(j) +
                            " with its mirror");
            if (right.site_start != M - left.site_start - kDataFieldLen ||
                right.begin() != M - left.end() || right.end() != M - left.begin())
                throw Error("sites " + std::to_string(j) + " and " +
                            std::to_string(2 * n - 1 - j) + " are not mirror images");
        }
    }

    MotifCheck check = scan_carrier_motifs(layout.carrier, layout.slots);
    if (!check.ok) throw Error(check.what);

    std::vector<Strand> addrs = all_addresses(layout);
    for (std::size_t i = 0; i < addrs.size(); ++i)
        for (std::size_t j = i + 1; j < addrs.size(); ++j)
            if (hamming(addrs[i], addrs[j]) < layout.min_address_hamming)
                throw Error("addresses " + std::to_string(i) + " and " + std::to_string(j) +
                            " are closer than hamming " +
                            std::to_string(layout.min_address_hamming));
}

}  // namespace dnamem
