#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safl/matrix.hpp"

namespace safl {

enum class Modality {
    Vision,
    Text,
    TimeSeries,
    Audio,
    Sensor,
    MedicalVision,
    Multimodal,
};

std::string_view modality_name(Modality m);
Modality parse_modality(std::string_view name);  // throws std::invalid_argument

/// Fixed per-modality feature width used by the generator and the memory model.
int feature_dim(Modality m);

/// What to synthesize: size, modality, class count, difficulty and seed.
/// `complexity` may be left unset in a config file, in which case the loader
/// fills it from the per-modality component table (see profiler.hpp).
struct DatasetSpec {
    std::string name;
    std::size_t size = 0;
    Modality modality = Modality::Sensor;
    int classes = 2;
    std::optional<double> complexity;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

struct Dataset {
    DatasetSpec spec;
    Matrix features;          // spec.size x feature_dim(spec.modality)
    std::vector<int> labels;  // class indices in [0, spec.classes)
};

struct ClientShard {
    int client_id = 0;
    Dataset dataset;
    std::string origin;  // name of the parent dataset
};

/// Seeded Gaussian-mixture classification data. Class k's mean is a random
/// unit direction scaled by s = 4*(1 - complexity) + 0.5; per-feature noise
/// is standard normal; labels are balanced round-robin. Byte-reproducible
/// for a given spec.
Dataset generate(const DatasetSpec& spec);

/// IID shuffle-then-equal-split across clients. Shard sizes differ by at
/// most one; the remainder goes to the lowest client ids.
std::vector<ClientShard> partition(const Dataset& dataset, int n_clients, std::uint64_t seed);

/// Dataset rows as CSV (header f0..f{d-1},label).
void write_dataset_csv(const Dataset& dataset, const std::string& path);

}  // namespace safl
