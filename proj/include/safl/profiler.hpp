#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "safl/datagen.hpp"

namespace safl {

enum class SizeCategory { Small = 0, Medium = 1, Large = 2 };

std::string_view size_category_name(SizeCategory c);

struct ComplexityWeights {
    double w_arch = 1.0 / 3;
    double w_data = 1.0 / 3;
    double w_fusion = 1.0 / 3;

    void validate() const;  // must be non-negative and sum to 1 within 1e-12
};

struct ComplexityComponents {
    double arch = 0.0;
    double data = 0.0;
    double fusion = 0.0;

    void validate() const;  // each in [0,1]
};

struct SizeThresholds {
    std::size_t tau_s = 600;
    std::size_t tau_m = 1500;

    void validate() const;  // tau_s < tau_m, both positive
};

/// Everything the scheduler and the adaptation formulas need to know about
/// one dataset.
struct DatasetProfile {
    std::string name;
    std::size_t size = 0;
    Modality modality = Modality::Sensor;
    int classes = 0;
    double complexity = 0.0;
    std::uint64_t mem_estimate = 0;  // bytes
    double time_estimate = 0.0;      // seconds per epoch

    bool operator==(const DatasetProfile&) const = default;
};

/// Convex combination of the three component scores.
double complexity_score(const ComplexityComponents& components, const ComplexityWeights& weights);

/// Small iff n <= tau_s; Medium iff tau_s < n <= tau_m; Large iff n > tau_m.
/// The numeric encoding 0/1/2 is the category addend/exponent used by the
/// adaptive-parameter formulas.
SizeCategory size_category(std::size_t n, const SizeThresholds& thresholds);

/// n * feature_dim * 8 bytes * 2.0 working-set overhead.
std::uint64_t estimate_memory(std::size_t n, Modality m);

/// n * (0.5 + complexity) * kappa seconds; kappa defaults to 1e-3 s/sample.
double estimate_time(std::size_t n, Modality m, double complexity, double kappa = 1e-3);

/// Per-modality component triple used when a dataset does not pin its own
/// complexity score.
ComplexityComponents modality_components(Modality m);

/// complexity_score of the modality's component table entry.
double canonical_complexity(Modality m, const ComplexityWeights& weights);

/// Assembles the profile tuple. Complexity comes from the dataset spec when
/// pinned there, otherwise from the modality component table.
DatasetProfile profile(const Dataset& dataset, const ComplexityWeights& weights,
                       const SizeThresholds& thresholds);

}  // namespace safl
