#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ddfv {

struct PropertyResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;     ///< largest observed violation measure
    double tolerance = 0.0;
    std::string detail;
};

struct PropertyReport {
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;

    bool all_passed() const;
    /// One line per property, followed by a summary line.
    std::string format() const;
};

/// Structural and algebraic identities of the discretization, checked on
/// uniform, smooth-quad and Kershaw meshes up to 8 x 8 with random data
/// drawn from a generator seeded with `seed`.
PropertyReport run_property_suite(std::uint64_t seed);

} // namespace ddfv
