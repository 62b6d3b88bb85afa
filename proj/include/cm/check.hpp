#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cm {

/// Tally of one identity verified over many instances. Keeps the first few
/// failing instances as witnesses.
struct CheckResult {
    std::string name;
    std::string statement;
    std::string context;
    long passed = 0;
    long failed = 0;
    std::vector<std::string> witnesses;

    static constexpr std::size_t kMaxWitnesses = 5;

    bool ok() const { return failed == 0; }

    template <typename WitnessFn>
    void record(bool holds, WitnessFn&& witness) {
        if (holds) {
            ++passed;
            return;
        }
        ++failed;
        if (witnesses.size() < kMaxWitnesses)
            witnesses.push_back(std::forward<WitnessFn>(witness)());
    }

    void merge(const CheckResult& other) {
        passed += other.passed;
        failed += other.failed;
        for (const auto& w : other.witnesses)
            if (witnesses.size() < kMaxWitnesses)
                witnesses.push_back(w);
    }
};

} // namespace cm
