#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dnamem/assembly.hpp"
#include "dnamem/digest.hpp"
#include "dnamem/errors.hpp"
#include "dnamem/layout.hpp"
#include "dnamem/porescan.hpp"
#include "dnamem/rng.hpp"

// Release gates. Each prints one PASS/FAIL line with its runtime; a failing
// gate carries one indented line saying what broke.

namespace {

using namespace dnamem;

std::size_t g_digest_count = 0;
std::size_t g_conservation_bad = 0;
std::string g_first_bad;

std::size_t zero_slots(const CarrierLayout& layout, const std::string& bits) {
    std::size_t z = 0;
    for (const auto& slot : layout.slots) z += bits[slot.digit] == '0';
    return z;
}

// every digest this binary performs flows through here
FragmentSet checked_digest(const DuplexAssembly& assembly, const Enzyme& enzyme) {
    FragmentSet fragments = digest(assembly, enzyme);
    ++g_digest_count;
    const std::size_t want = zero_slots(assembly.layout, assembly.bits) + 1;
    if (fragments.total() != assembly.layout.carrier.size() ||
        fragments.lengths.size() != want) {
        ++g_conservation_bad;
        if (g_first_bad.empty())
            g_first_bad = "bits " + assembly.bits + ": " +
                          std::to_string(fragments.lengths.size()) + " fragments totalling " +
                          std::to_string(fragments.total());
    }
    return fragments;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    if (o.pass) o.detail = why;
    o.pass = false;
}

std::string bits_of(std::size_t value, std::size_t n) {
    std::string bits(n, '0');
    for (std::size_t k = 0; k < n; ++k)
        if (value >> k & 1) bits[k] = '1';
    return bits;
}

CarrierLayout reference_layout() {
    DesignSpec spec;
    spec.n_bits = 2;
    spec.cut_positions = {18, 52};
    spec.total_length = 77;
    return design_carrier(spec, 7);
}

void two_slot_signatures(Outcome& o) {
    CarrierLayout layout = reference_layout();
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> expect = {
        {"00", {18, 25, 34}}, {"01", {25, 52}}, {"10", {18, 59}}, {"11", {77}}};
    for (const auto& [bits, lengths] : expect) {
        const FragmentSet want{lengths};
        if (expected_fragments(layout, bits) != want)
            fail(o, "predicted fragments for " + bits + " are off");
        if (checked_digest(anneal(layout, bits), ecori()) != want)
            fail(o, "digested fragments for " + bits + " are off");
    }
}

void two_slot_decode(Outcome& o) {
    CarrierLayout layout = reference_layout();
    DecodabilityReport rep = verify_decodable(layout);
    if (rep.n_states != 4 || rep.distinct_signatures != 4 || !rep.decodable())
        fail(o, "expected 4 distinct signatures and no collisions");
    for (std::size_t v = 0; v < 4; ++v) {
        const std::string bits = bits_of(v, 2);
        GelLane lane = render_gel(checked_digest(anneal(layout, bits), ecori()), 2);
        if (decode_gel(lane, layout, ecori()) != bits) fail(o, "gel decode missed " + bits);
    }
}

void mirror_collision(Outcome& o) {
    DesignSpec spec;
    spec.n_bits = 2;
    spec.cut_positions = {20, 80};
    spec.total_length = 100;
    CarrierLayout layout = design_carrier(spec, 9);

    DecodabilityReport rep = verify_decodable(layout);
    bool flagged = false;
    for (const auto& [a, b] : rep.collisions)
        flagged = flagged || (a == "01" && b == "10") || (a == "10" && b == "01");
    if (!flagged) fail(o, "the 01/10 collision went unreported");

    GelLane lane = render_gel(checked_digest(anneal(layout, "01"), ecori()), 2);
    try {
        decode_gel(lane, layout, ecori());
        fail(o, "an ambiguous lane decoded anyway");
    } catch (const DecodeError& e) {
        if (e.kind != DecodeError::Kind::Ambiguous) fail(o, "wrong decode error kind");
        if (e.candidates != std::vector<std::string>{"01", "10"})
            fail(o, "candidate list is off");
    }
}

void palindrome_uniqueness(Outcome& o) {
    for (std::size_t n = 1; n <= 10; ++n) {
        DesignSpec spec;
        spec.n_bits = n;
        spec.address_len = 14;
        CarrierLayout pal = palindromize(design_carrier(spec, 400 + n), 34, 500 + n);
        for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
            const std::string bits = bits_of(v, n);
            FragmentSet f = expected_fragments(pal, bits);
            if (f.total() != pal.carrier.size() ||
                f.lengths.size() != zero_slots(pal, bits) + 1)
                fail(o, "conservation broke at n=" + std::to_string(n) + " bits " + bits);
        }
        DecodabilityReport rep = verify_decodable(pal, 12);
        if (!rep.decodable())
            fail(o, "n=" + std::to_string(n) + ": " + std::to_string(rep.distinct_signatures) +
                        " distinct signatures for " + std::to_string(rep.n_states) +
                        " states; first collision " + rep.collisions[0].first + " vs " +
                        rep.collisions[0].second);
    }
}

void route_agreement(Outcome& o) {
    Rng rng(1234);
    for (int t = 0; t < 50; ++t) {
        DesignSpec spec;
        spec.n_bits = 1 + rng.below(8);
        if (rng.below(2) == 0) {
            spec.lead = 4 + rng.below(17);
            spec.gap = rng.below(9);
            spec.tail = 4 + rng.below(17);
            spec.address_len = 12;
        } else {
            std::size_t site = 16 + rng.below(6);
            for (std::size_t i = 0; i < spec.n_bits; ++i) {
                spec.cut_positions.push_back(site + kCutOffset);
                site += kDataFieldLen + 24 + rng.below(12);
            }
            spec.total_length = site + 16 + rng.below(8);
        }
        CarrierLayout layout = design_carrier(spec, 2000 + t);
        for (std::size_t v = 0; v < (std::size_t{1} << spec.n_bits); ++v) {
            const std::string bits = bits_of(v, spec.n_bits);
            if (checked_digest(anneal(layout, bits), ecori()) !=
                expected_fragments(layout, bits)) {
                fail(o, "carrier " + std::to_string(t) + " bits " + bits +
                            ": the two routes disagree");
                return;
            }
        }
    }
}

void gel_roundtrip(Outcome& o) {
    Rng rng(5678);
    std::size_t rejected = 0;
    for (int pair = 0; pair < 1000; ++pair) {
        std::optional<CarrierLayout> layout;
        std::size_t n = 0;
        for (int tries = 0; tries < 20 && !layout; ++tries) {
            DesignSpec spec;
            spec.n_bits = 1 + rng.below(6);
            spec.lead = 4 + rng.below(17);
            spec.gap = rng.below(9);
            spec.tail = 4 + rng.below(17);
            spec.address_len = 12;
            CarrierLayout cand = design_carrier(spec, rng.next_u64());

            // a layout only counts if a 2 bp gel separates all of its states
            std::map<std::vector<std::pair<std::size_t, std::size_t>>, std::string> seen;
            bool distinct = true;
            for (std::size_t v = 0; v < (std::size_t{1} << spec.n_bits) && distinct; ++v) {
                GelLane lane = render_gel(expected_fragments(cand, bits_of(v, spec.n_bits)), 2);
                std::vector<std::pair<std::size_t, std::size_t>> key;
                for (const auto& band : lane.bands) key.emplace_back(band.length_bp, band.merged_count);
                distinct = seen.emplace(std::move(key), bits_of(v, spec.n_bits)).second;
            }
            if (distinct) {
                layout.emplace(std::move(cand));
                n = spec.n_bits;
            } else {
                ++rejected;
            }
        }
        if (!layout) {
            fail(o, "could not draw a layout resolvable at 2 bp");
            return;
        }
        const std::string bits = bits_of(rng.below(std::size_t{1} << n), n);
        GelLane lane = render_gel(checked_digest(anneal(*layout, bits), ecori()), 2);
        const std::string got = decode_gel(lane, *layout, ecori());
        if (got != bits) {
            fail(o, "pair " + std::to_string(pair) + ": wrote " + bits + ", read " + got);
            return;
        }
    }
    o.detail = std::to_string(rejected) + " candidate layouts rejected as unresolvable at 2 bp";
}

void pore_roundtrip(Outcome& o) {
    const TraceParams clean;
    std::vector<CarrierLayout> pool;
    for (std::size_t n = 1; n <= 8; ++n) {
        DesignSpec spec;
        spec.n_bits = n;
        spec.address_len = 14;
        CarrierLayout pal = palindromize(design_carrier(spec, 700 + n), 34, 800 + n);
        if (n <= 6) pool.push_back(pal);
        for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
            const std::string bits = bits_of(v, n);
            StuddedComplex studded = stud(anneal(pal, bits));
            for (Orientation entry : {Orientation::Forward, Orientation::Reverse}) {
                BlockadeTrace trace = translocate(studded, clean, entry, 1);
                std::string got;
                try {
                    got = decode_trace(detect_events(trace, default_detection(clean)), pal, clean);
                } catch (const DecodeError& e) {
                    got = std::string("<") + e.what() + ">";
                }
                if (got != bits) {
                    fail(o, "noiseless n=" + std::to_string(n) + " bits " + bits + " read as " + got);
                    return;
                }
            }
        }
    }

    TraceParams noisy;
    noisy.noise_sigma = 0.1 * noisy.stud_amplitude();
    Rng rng(4242);
    std::size_t good = 0;
    for (std::size_t run = 0; run < 1000; ++run) {
        const CarrierLayout& pal = pool[run % pool.size()];
        const std::size_t n = pal.n_bits();
        const std::string bits = bits_of(rng.below(std::size_t{1} << n), n);
        const Orientation entry = rng.below(2) ? Orientation::Reverse : Orientation::Forward;
        BlockadeTrace trace = translocate(stud(anneal(pal, bits)), noisy, entry, 10000 + run);
        try {
            if (decode_trace(detect_events(trace, default_detection(noisy)), pal, noisy) == bits)
                ++good;
        } catch (const DecodeError&) {
        }
    }
    const std::string tally = std::to_string(good) + "/1000 noisy random-entry runs decoded";
    if (good < 990)
        fail(o, tally);
    else
        o.detail = tally;
}

void conservation_summary(Outcome& o) {
    if (g_digest_count == 0) fail(o, "no digests were checked");
    if (g_conservation_bad != 0)
        fail(o, std::to_string(g_conservation_bad) + " violation(s); first: " + g_first_bad);
    else
        o.detail = "length sum and cut-count held on all " + std::to_string(g_digest_count) +
                   " digests above";
}

struct Gate {
    const char* label;
    double budget_ms;  // 0 = untimed
    void (*fn)(Outcome&);
};

}  // namespace

int main() {
    const Gate gates[] = {
        {"two-slot 77-base carrier reproduces the four reference fragment multisets", 1000,
         two_slot_signatures},
        {"reference carrier: four distinct signatures, exact gel decode of every state", 1000,
         two_slot_decode},
        {"mirror-symmetric carrier: 01/10 collision flagged, gel decode reports both candidates",
         1000, mirror_collision},
        {"palindromized equal-spacing carriers decode uniquely for n = 1..10", 5000,
         palindrome_uniqueness},
        {"digest agrees with predicted fragments on every state of 50 random carriers", 0,
         route_agreement},
        {"gel roundtrip returns the written message on 1000 seeded carrier/message pairs", 30000,
         gel_roundtrip},
        {"pore reads: noiseless exact for palindromic n <= 8 both entries, >= 99% under noise",
         60000, pore_roundtrip},
        {"fragment length totals and counts conserved on every digest", 0, conservation_summary},
    };

    int failures = 0;
    int index = 0;
    for (const Gate& gate : gates) {
        ++index;
        Outcome outcome;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            gate.fn(outcome);
        } catch (const std::exception& e) {
            fail(outcome, std::string("unexpected error: ") + e.what());
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (gate.budget_ms > 0 && ms > gate.budget_ms)
            fail(outcome, "took " + std::to_string(ms) + " ms against a budget of " +
                              std::to_string(gate.budget_ms) + " ms");
        std::printf("[%s] %d. %s (%.1f ms)\n", outcome.pass ? "PASS" : "FAIL", index, gate.label,
                    ms);
        if (!outcome.detail.empty()) std::printf("       %s\n", outcome.detail.c_str());
        failures += outcome.pass ? 0 : 1;
    }
    std::printf("%d/8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
