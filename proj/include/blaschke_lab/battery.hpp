#pragma once

// The acceptance battery: one group of named records per criterion.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blaschke_lab/report.hpp"

namespace blaschke_lab {

inline constexpr int battery_size = 12;

struct BatteryOptions {
    std::uint64_t seed = 0;
    /// Criteria to run, 1..12; empty runs all of them.
    std::vector<int> criteria;
    bool timing = false;
    bool strict = false;
    /// 0 picks the hardware concurrency, capped by BLASCHKE_LAB_THREADS.
    std::size_t threads = 0;
};

/// Records of criterion c (1..11). Record names start with "cNN.".
std::vector<Record> run_criterion(int c, std::uint64_t seed, bool timing = false, bool strict = false);

/// Selected criteria, in increasing order regardless of completion order.
/// Criterion 12 here checks render/parse/render stability of the report
/// built from the other records; process-level determinism is checked by
/// running the CLI twice.
std::vector<Record> run_battery(const BatteryOptions& options);

/// Worker count after applying BLASCHKE_LAB_THREADS.
std::size_t worker_count(std::size_t requested);

}  // namespace blaschke_lab
