#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace diracstep {

struct CheckItem {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    /// Worst observed error for the item (meaning depends on the check).
    double worst = 0.0;
};

struct CheckReport {
    std::vector<CheckItem> items;

    [[nodiscard]] std::size_t passed() const;
    [[nodiscard]] std::size_t failed() const;
    [[nodiscard]] bool ok() const { return failed() == 0; }
};

/// Seeded property sweep over every library invariant. `samples` scales the
/// number of random problems per check.
[[nodiscard]] CheckReport run_invariant_checks(std::uint64_t seed, std::size_t samples = 2000);

}  // namespace diracstep
