#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dnamem {

// Alphabet is strict ACGT. Everything downstream assumes it.
enum class Base : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

char to_char(Base b);
Base base_from_char(char c);  // throws std::invalid_argument on anything else
Base complement(Base b);

// Single DNA strand, 5'->3'. Never empty.
class Strand {
public:
    explicit Strand(std::string_view text);
    explicit Strand(std::vector<Base> bases);

    std::size_t size() const { return bases_.size(); }
    Base operator[](std::size_t i) const { return bases_[i]; }
    const std::vector<Base>& bases() const { return bases_; }
    std::string str() const;

    Strand subseq(std::size_t start, std::size_t length) const;

    bool operator==(const Strand&) const = default;

    auto begin() const { return bases_.begin(); }
    auto end() const { return bases_.end(); }

private:
    std::vector<Base> bases_;
};

// Positionwise complement; the result keeps the caller's orientation label.
Strand complement(const Strand& s);
Strand reverse_complement(const Strand& s);

// Start offsets of every occurrence of motif in s, overlapping ones included,
// ascending. A motif longer than s has no occurrences.
std::vector<std::size_t> find_sites(const Strand& s, const Strand& motif);

std::size_t hamming(const Strand& a, const Strand& b);  // throws on length mismatch

}  // namespace dnamem
