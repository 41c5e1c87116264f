#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace dnamem {

// Multiset of double-stranded fragment lengths, canonically sorted ascending.
// Lengths are top-strand segment lengths; the 4-base overhangs left by
// staggered cutting are not counted separately.
struct FragmentSet {
    std::vector<std::size_t> lengths;

    std::size_t total() const {
        return std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
    }
    bool operator==(const FragmentSet&) const = default;
};

}  // namespace dnamem
