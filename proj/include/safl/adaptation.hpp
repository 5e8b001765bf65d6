#pragma once

#include <cstddef>
#include <vector>

#include "safl/profiler.hpp"

namespace safl {

struct BaseConfig {
    int epochs_base = 2;
    int batch_base = 32;
    double lr_base = 0.01;
    double alpha = 0.8;

    void validate() const;  // all positive, alpha in (0,1]
};

struct AdaptiveParams {
    int epochs = 0;
    int batch = 0;
    double lr = 0.0;

    bool operator==(const AdaptiveParams&) const = default;
};

/// Permutation sigma such that sizes are non-decreasing along it; ties are
/// broken by ascending dataset name so runs are reproducible.
std::vector<std::size_t> order_by_size(const std::vector<DatasetProfile>& profiles);

/// With c = size_category in {0,1,2}:
///   epochs = epochs_base + c
///   batch  = batch_base * 2^c
///   lr     = lr_base * alpha^c * (1 - 0.2 * complexity)
/// Passing complexity_lr = false drops the complexity factor from lr.
AdaptiveParams adaptive_params(const DatasetProfile& profile, const BaseConfig& base,
                               const SizeThresholds& thresholds, bool complexity_lr = true);

}  // namespace safl
