#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spidergray {

// Bad constraint-file syntax (missing "->", empty label, self-loop, ...).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The undirected reading of the arc multigraph contains a cycle, so no Gray
// path exists and the input is rejected.
struct UndirectedCycleError : std::runtime_error {
    std::vector<std::string> cycle;  // offending labels, in cycle order
    explicit UndirectedCycleError(std::vector<std::string> c)
        : std::runtime_error(format(c)), cycle(std::move(c)) {}

private:
    static std::string format(const std::vector<std::string>& c) {
        std::string msg = "UndirectedCycle:";
        for (const auto& l : c) msg += " " + l;
        return msg;
    }
};

// Two arcs join the same pair of vertices (an undirected 2-cycle).
struct DuplicateArcError : std::runtime_error {
    explicit DuplicateArcError(const std::string& a, const std::string& b)
        : std::runtime_error("DuplicateArc: parallel arcs between " + a + " and " + b) {}
};

// A pattern count exceeded 128 bits. Counts are never wrapped silently.
struct CountOverflowError : std::runtime_error {
    CountOverflowError() : std::runtime_error("CountOverflow: pattern count exceeds 128 bits") {}
};

// Brute-force enumeration refused: 2^n candidates is over the configured cap.
struct CapExceededError : std::runtime_error {
    CapExceededError(int n, int cap)
        : std::runtime_error("CapExceeded: n=" + std::to_string(n) +
                             " exceeds enumeration cap " + std::to_string(cap)) {}
};

// An engine invariant was violated. Indicates a bug, not bad input.
struct InternalProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace spidergray
