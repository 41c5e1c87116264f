#include "dnamem/seq.hpp"

#include <stdexcept>

namespace dnamem {

char to_char(Base b) {
    switch (b) {
        case Base::A: return 'A';
        case Base::C: return 'C';
        case Base::G: return 'G';
        case Base::T: return 'T';
    }
    throw std::invalid_argument("corrupt base value");
}

Base base_from_char(char c) {
    switch (c) {
        case 'A': return Base::A;
        case 'C': return Base::C;
        case 'G': return Base::G;
        case 'T': return Base::T;
    }
    throw std::invalid_argument(std::string("not a DNA base: '") + c + "'");
}

Base complement(Base b) {
    switch (b) {
        case Base::A: return Base::T;
        case Base::T: return Base::A;
        case Base::C: return Base::G;
        case Base::G: return Base::C;
    }
    throw std::invalid_argument("corrupt base value");
}

Strand::Strand(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty strand");
    bases_.reserve(text.size());
    for (char c : text) bases_.push_back(base_from_char(c));
}

Strand::Strand(std::vector<Base> bases) : bases_(std::move(bases)) {
    if (bases_.empty()) throw std::invalid_argument("empty strand");
}

std::string Strand::str() const {
    std::string out;
    out.reserve(bases_.size());
    for (Base b : bases_) out.push_back(to_char(b));
    return out;
}

Strand Strand::subseq(std::size_t start, std::size_t length) const {
    if (start > bases_.size() || length > bases_.size() - start)
        throw std::out_of_range("subseq outside strand");
    return Strand(std::vector<Base>(bases_.begin() + start, bases_.begin() + start + length));
}

Strand complement(const Strand& s) {
    std::vector<Base> out;
    out.reserve(s.size());
    for (Base b : s) out.push_back(complement(b));
    return Strand(std::move(out));
}

Strand reverse_complement(const Strand& s) {
    std::vector<Base> out;
    out.reserve(s.size());
    for (std::size_t i = s.size(); i-- > 0;) out.push_back(complement(s[i]));
    return Strand(std::move(out));
}

std::vector<std::size_t> find_sites(const Strand& s, const Strand& motif) {
    std::vector<std::size_t> hits;
    if (motif.size() > s.size()) return hits;
    const std::size_t last = s.size() - motif.size();
    for (std::size_t i = 0; i <= last; ++i) {
        std::size_t j = 0;
        while (j < motif.size() && s[i + j] == motif[j]) ++j;
        if (j == motif.size()) hits.push_back(i);
    }
    return hits;
}

std::size_t hamming(const Strand& a, const Strand& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming: strands differ in length");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

}  // namespace dnamem
