#include "safl/profiler.hpp"

#include <cmath>
#include <stdexcept>

namespace safl {

std::string_view size_category_name(SizeCategory c) {
    switch (c) {
        case SizeCategory::Small: return "Small";
        case SizeCategory::Medium: return "Medium";
        case SizeCategory::Large: return "Large";
    }
    throw std::invalid_argument("unknown size category");
}

void ComplexityWeights::validate() const {
    if (w_arch < 0.0 || w_data < 0.0 || w_fusion < 0.0)
        throw std::invalid_argument("complexity weights must be non-negative");
    if (std::abs(w_arch + w_data + w_fusion - 1.0) > 1e-12)
        throw std::invalid_argument("complexity weights must sum to 1");
}

void ComplexityComponents::validate() const {
    for (double v : {arch, data, fusion})
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw std::invalid_argument("complexity components must be in [0,1]");
}

void SizeThresholds::validate() const {
    if (tau_s == 0) throw std::invalid_argument("tau_s must be positive");
    if (tau_s >= tau_m) throw std::invalid_argument("size thresholds require tau_s < tau_m");
}

double complexity_score(const ComplexityComponents& components, const ComplexityWeights& weights) {
    components.validate();
    weights.validate();
    return weights.w_arch * components.arch + weights.w_data * components.data +
           weights.w_fusion * components.fusion;
}

SizeCategory size_category(std::size_t n, const SizeThresholds& thresholds) {
    thresholds.validate();
    if (n <= thresholds.tau_s) return SizeCategory::Small;
    if (n <= thresholds.tau_m) return SizeCategory::Medium;
    return SizeCategory::Large;
}

std::uint64_t estimate_memory(std::size_t n, Modality m) {
    // Raw rows in 8-byte reals, times 2 for the working set.
    return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(feature_dim(m)) * 8 * 2;
}

double estimate_time(std::size_t n, [[maybe_unused]] Modality m, double complexity, double kappa) {
    return static_cast<double>(n) * (0.5 + complexity) * kappa;
}

ComplexityComponents modality_components(Modality m) {
    switch (m) {
        case Modality::Sensor: return {0.4, 0.4, 0.4};
        case Modality::TimeSeries: return {0.6, 0.6, 0.6};
        case Modality::Audio: return {0.6, 0.6, 0.6};
        case Modality::Vision: return {0.5, 0.7, 0.3};
        case Modality::Text: return {0.7, 0.7, 0.7};
        case Modality::MedicalVision: return {0.7, 0.7, 0.7};
        case Modality::Multimodal: return {0.8, 0.7, 0.9};
    }
    throw std::invalid_argument("unknown modality enum value");
}

double canonical_complexity(Modality m, const ComplexityWeights& weights) {
    return complexity_score(modality_components(m), weights);
}

DatasetProfile profile(const Dataset& dataset, const ComplexityWeights& weights,
                       const SizeThresholds& thresholds) {
    thresholds.validate();
    const DatasetSpec& spec = dataset.spec;
    DatasetProfile p;
    p.name = spec.name;
    p.size = spec.size;
    p.modality = spec.modality;
    p.classes = spec.classes;
    p.complexity = spec.complexity ? *spec.complexity : canonical_complexity(spec.modality, weights);
    p.mem_estimate = estimate_memory(spec.size, spec.modality);
    p.time_estimate = estimate_time(spec.size, spec.modality, p.complexity);
    return p;
}

}  // namespace safl
