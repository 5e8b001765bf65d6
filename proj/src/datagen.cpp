#include "safl/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace safl {

namespace {

constexpr struct {
    Modality modality;
    std::string_view name;
    int dim;
} kModalityTable[] = {
    {Modality::Vision, "vision", 64},
    {Modality::Text, "text", 50},
    {Modality::TimeSeries, "time_series", 32},
    {Modality::Audio, "audio", 40},
    {Modality::Sensor, "sensor", 16},
    {Modality::MedicalVision, "medical_vision", 64},
    {Modality::Multimodal, "multimodal", 80},  // 64 vision + 16 sensor concatenation
};

bool valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
            return false;
    }
    return name[0] != '.';
}

}  // namespace

std::string_view modality_name(Modality m) {
    for (const auto& e : kModalityTable)
        if (e.modality == m) return e.name;
    throw std::invalid_argument("unknown modality enum value");
}

Modality parse_modality(std::string_view name) {
    for (const auto& e : kModalityTable)
        if (e.name == name) return e.modality;
    throw std::invalid_argument("unknown modality: " + std::string(name));
}

int feature_dim(Modality m) {
    for (const auto& e : kModalityTable)
        if (e.modality == m) return e.dim;
    throw std::invalid_argument("unknown modality enum value");
}

void DatasetSpec::validate() const {
    if (!valid_identifier(name))
        throw std::invalid_argument("dataset name must be a [A-Za-z0-9_.-] identifier: '" + name +
                                    "'");
    if (size == 0) throw std::invalid_argument(name + ": size must be positive");
    if (classes < 2) throw std::invalid_argument(name + ": classes must be >= 2");
    if (size < static_cast<std::size_t>(classes))
        throw std::invalid_argument(name + ": size must be >= classes");
    if (complexity) {
        if (!std::isfinite(*complexity) || *complexity < 0.0 || *complexity > 1.0)
            throw std::invalid_argument(name + ": complexity must be in [0,1]");
    }
}

Dataset generate(const DatasetSpec& spec) {
    spec.validate();
    if (!spec.complexity)
        throw std::invalid_argument(spec.name +
                                    ": complexity must be resolved before generation");

    const int d = feature_dim(spec.modality);
    const int k = spec.classes;
    const double separation = 4.0 * (1.0 - *spec.complexity) + 0.5;

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Class means: random unit directions scaled by the separation.
    Matrix means(k, d);
    for (int c = 0; c < k; ++c) {
        auto row = means.row(c);
        double norm_sq = 0.0;
        for (int j = 0; j < d; ++j) {
            row[j] = normal(rng);
            norm_sq += row[j] * row[j];
        }
        const double norm = std::sqrt(norm_sq);
        if (norm > 0.0) {
            for (int j = 0; j < d; ++j) row[j] = row[j] / norm * separation;
        } else {
            row[0] = separation;
        }
    }

    Dataset ds;
    ds.spec = spec;
    ds.features = Matrix(spec.size, d);
    ds.labels.resize(spec.size);
    for (std::size_t i = 0; i < spec.size; ++i) {
        const int label = static_cast<int>(i % k);  // balanced round-robin
        ds.labels[i] = label;
        auto mean = means.row(label);
        auto row = ds.features.row(i);
        for (int j = 0; j < d; ++j) row[j] = mean[j] + normal(rng);
    }
    return ds;
}

std::vector<ClientShard> partition(const Dataset& dataset, int n_clients, std::uint64_t seed) {
    if (n_clients < 1) throw std::invalid_argument("partition: n_clients must be >= 1");
    const std::size_t n = dataset.features.rows;
    if (n == 0) throw std::invalid_argument("partition: dataset is empty");
    if (static_cast<std::size_t>(n_clients) > n)
        throw std::invalid_argument("partition: more clients (" + std::to_string(n_clients) +
                                    ") than samples (" + std::to_string(n) + ")");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t base = n / n_clients;
    const std::size_t remainder = n % n_clients;  // extra sample to the lowest ids

    std::vector<ClientShard> shards;
    shards.reserve(n_clients);
    std::size_t next = 0;
    const int d = static_cast<int>(dataset.features.cols);
    for (int c = 0; c < n_clients; ++c) {
        const std::size_t count = base + (static_cast<std::size_t>(c) < remainder ? 1 : 0);
        ClientShard shard;
        shard.client_id = c;
        shard.origin = dataset.spec.name;
        shard.dataset.spec = dataset.spec;
        shard.dataset.spec.size = count;
        shard.dataset.features = Matrix(count, d);
        shard.dataset.labels.resize(count);
        for (std::size_t r = 0; r < count; ++r) {
            const std::size_t src = order[next++];
            auto dst = shard.dataset.features.row(r);
            auto from = dataset.features.row(src);
            std::copy(from.begin(), from.end(), dst.begin());
            shard.dataset.labels[r] = dataset.labels[src];
        }
        shards.push_back(std::move(shard));
    }
    return shards;
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const std::size_t d = dataset.features.cols;
    for (std::size_t j = 0; j < d; ++j) out << 'f' << j << ',';
    out << "label\n";
    char buf[32];
    for (std::size_t i = 0; i < dataset.features.rows; ++i) {
        auto row = dataset.features.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, row[j]);
            out.write(buf, p - buf);
            out << ',';
        }
        out << dataset.labels[i] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace safl
