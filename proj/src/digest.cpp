#include "dnamem/digest.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dnamem/errors.hpp"

namespace dnamem {

Enzyme make_enzyme(std::string name, Strand recognition, std::size_t cut_offset,
                   bool requires_full_duplex) {
    if (!(recognition == reverse_complement(recognition)))
        throw std::invalid_argument(name + ": recognition sequence must equal its own reverse complement");
    if (cut_offset > recognition.size())
        throw std::invalid_argument(name + ": cut offset outside the recognition sequence");
    return Enzyme{std::move(name), std::move(recognition), cut_offset, requires_full_duplex};
}

Enzyme ecori() { return make_enzyme("EcoRI", gaattc(), kCutOffset, true); }

FragmentSet digest(const DuplexAssembly& assembly, const Enzyme& enzyme) {
    const Strand& carrier = assembly.layout.carrier;
    const std::size_t L = carrier.size();

    std::vector<std::size_t> cuts;
    for (std::size_t p : find_sites(carrier, enzyme.recognition)) {
        if (enzyme.requires_full_duplex) {
            bool duplexed = true;
            for (std::size_t i = 0; i < enzyme.recognition.size(); ++i)
                if (assembly.pairing[p + i] != PairState::Paired) {
                    duplexed = false;
                    break;
                }
            if (!duplexed) continue;
        }
        const std::size_t c = p + enzyme.cut_offset;
        if (c > 0 && c < L) cuts.push_back(c);  // end-of-molecule cuts separate nothing
    }

    FragmentSet fs;
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        fs.lengths.push_back(c - prev);
        prev = c;
    }
    fs.lengths.push_back(L - prev);
    std::sort(fs.lengths.begin(), fs.lengths.end());
    return fs;
}

GelLane render_gel(const FragmentSet& fragments, std::size_t resolution_bp,
                   std::vector<std::size_t> ladder) {
    GelLane lane;
    lane.resolution_bp = resolution_bp;

    std::vector<std::size_t> desc = fragments.lengths;
    std::sort(desc.rbegin(), desc.rend());

    for (std::size_t i = 0; i < desc.size();) {
        GelBand band{desc[i], 1};
        std::size_t j = i + 1;
        while (j < desc.size() && desc[j - 1] - desc[j] <= resolution_bp) {
            ++band.merged_count;
            ++j;
        }
        lane.bands.push_back(band);
        i = j;
    }

    if (ladder.empty() && !desc.empty()) {
        const std::size_t top = (desc.front() + 9) / 10 * 10;
        for (std::size_t rung = top == 0 ? 10 : top; rung >= 10; rung -= 10)
            ladder.push_back(rung);
    }
    std::sort(ladder.rbegin(), ladder.rend());
    lane.ladder = std::move(ladder);
    return lane;
}

std::string gel_text(const GelLane& lane) {
    // ladder rungs on the left, sample bands on the right, top to bottom
    struct Row {
        std::size_t bp;
        bool rung;
        std::size_t count;  // band multiplicity, 0 for a bare rung
    };
    std::vector<Row> rows;
    for (std::size_t rung : lane.ladder) rows.push_back({rung, true, 0});
    for (const auto& band : lane.bands) {
        bool placed = false;
        for (auto& row : rows)
            if (row.rung && row.bp == band.length_bp) {
                row.count = band.merged_count;
                placed = true;
                break;
            }
        if (!placed) rows.push_back({band.length_bp, false, band.merged_count});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.bp > b.bp; });

    std::ostringstream out;
    out << "  bp  ladder  lane\n";
    for (const auto& row : rows) {
        out << ' ';
        std::string bp = std::to_string(row.bp);
        out << std::string(bp.size() < 4 ? 4 - bp.size() : 0, ' ') << bp << "  ";
        out << (row.rung ? "  --  " : "      ");
        if (row.count > 0) out << "====  (x" << row.count << ")";
        out << '\n';
    }
    return out.str();
}

std::string decode_gel(const GelLane& lane, const CarrierLayout& layout, const Enzyme& enzyme) {
    const std::size_t n = layout.n_bits();
    if (n > 24) throw Error("too many states to enumerate: " + std::to_string(n) + " bits");

    std::vector<std::string> matches;
    for (std::size_t state = 0; state < (std::size_t{1} << n); ++state) {
        std::string bits(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            bits[i] = char('0' + ((state >> (n - 1 - i)) & 1));
        GelLane predicted = render_gel(digest(anneal(layout, bits), enzyme), lane.resolution_bp);
        if (predicted.bands == lane.bands) matches.push_back(std::move(bits));
    }

    if (matches.empty())
        throw DecodeError(DecodeError::Kind::Unreadable,
                          "no state reproduces the observed band pattern");
    if (matches.size() > 1)
        throw DecodeError(DecodeError::Kind::Ambiguous,
                          std::to_string(matches.size()) + " states reproduce the band pattern",
                          matches);
    return matches.front();
}

}  // namespace dnamem
