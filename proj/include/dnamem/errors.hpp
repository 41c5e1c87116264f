#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnamem {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carrier generation gave up. `constraint` names what kept failing.
struct DesignError : Error {
    DesignError(const std::string& what, std::string constraint_name)
        : Error(what), constraint(std::move(constraint_name)) {}
    std::string constraint;
};

// Oligo ends do not abut at `junction`; slot indices identify the pair.
struct LigationError : Error {
    LigationError(const std::string& what, std::size_t junction_pos,
                  std::size_t left, std::size_t right)
        : Error(what), junction(junction_pos), left_slot(left), right_slot(right) {}
    std::size_t junction;
    std::size_t left_slot;
    std::size_t right_slot;
};

struct DecodeError : Error {
    enum class Kind { Unreadable, Ambiguous };
    DecodeError(Kind k, const std::string& what, std::vector<std::string> cands = {})
        : Error(what), kind(k), candidates(std::move(cands)) {}
    Kind kind;
    std::vector<std::string> candidates;  // states consistent with the observation
};

}  // namespace dnamem
