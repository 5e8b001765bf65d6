#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "safl/adaptation.hpp"
#include "safl/datagen.hpp"

namespace safl {

/// Shape of the one-hidden-layer classifier (ReLU hidden, softmax output).
struct ModelLayout {
    int input_dim = 0;
    int hidden_dim = 0;
    int classes = 0;

    std::size_t param_count() const {
        const std::size_t d = input_dim, h = hidden_dim, k = classes;
        return d * h + h + h * k + k;
    }

    bool operator==(const ModelLayout&) const = default;
};

/// Flat parameter vector, fixed layout: W1 row-major (d x h), b1, W2
/// row-major (h x k), b2. This is the unit of exchange, aggregation and
/// byte accounting.
struct ParamVector {
    ModelLayout layout;
    std::vector<double> values;

    std::span<double> w1() { return {values.data(), w1_len()}; }
    std::span<double> b1() { return {values.data() + w1_len(), h()}; }
    std::span<double> w2() { return {values.data() + w1_len() + h(), w2_len()}; }
    std::span<double> b2() { return {values.data() + w1_len() + h() + w2_len(), k()}; }
    std::span<const double> w1() const { return {values.data(), w1_len()}; }
    std::span<const double> b1() const { return {values.data() + w1_len(), h()}; }
    std::span<const double> w2() const { return {values.data() + w1_len() + h(), w2_len()}; }
    std::span<const double> b2() const { return {values.data() + w1_len() + h() + w2_len(), k()}; }

    bool operator==(const ParamVector&) const = default;

private:
    std::size_t w1_len() const { return std::size_t(layout.input_dim) * layout.hidden_dim; }
    std::size_t w2_len() const { return std::size_t(layout.hidden_dim) * layout.classes; }
    std::size_t h() const { return layout.hidden_dim; }
    std::size_t k() const { return layout.classes; }
};

struct TrainStats {
    double final_local_loss = 0.0;  // full-shard loss after training
    std::size_t samples_seen = 0;   // epochs * shard size
    double wall_time = 0.0;         // measured seconds, informational only
};

/// Drift-correction state for the control-variate aggregation variant.
/// Same length and layout as the model's ParamVector.
struct ControlVariate {
    std::vector<double> values;

    bool operator==(const ControlVariate&) const = default;
};

enum class LocalVariant { FedAvg, FedProx, Scaffold };

struct LocalTrainOptions {
    LocalVariant variant = LocalVariant::FedAvg;
    double prox_mu = 0.0;                             // FedProx
    const ControlVariate* server_control = nullptr;   // Scaffold c
    const ControlVariate* client_control = nullptr;   // Scaffold c_i
};

struct LocalTrainResult {
    ParamVector params;
    TrainStats stats;
    /// Scaffold only: the increment to apply to the client's control state,
    /// delta = c_i' - c_i with c_i' = c_i - c + (w_start - w_end) / (K * lr).
    std::optional<ControlVariate> control_delta;
};

struct EvalResult {
    double accuracy = 0.0;
    double loss = 0.0;
};

/// Glorot-uniform weights (limit sqrt(6/(fan_in+fan_out)) per layer), zero
/// biases. Deterministic for a given seed.
ParamVector init_model(int input_dim, int hidden_dim, int classes, std::uint64_t seed);

/// Mean softmax cross-entropy over the selected rows plus its exact analytic
/// gradient (written into grad_out, which must have params.values.size()
/// entries). Returns the loss.
double loss_and_grad(const ParamVector& params, const Matrix& features, std::span<const int> labels,
                     std::span<const std::size_t> rows, std::span<double> grad_out);

/// Same, over every row of the batch.
double loss_and_grad(const ParamVector& params, const Matrix& features, std::span<const int> labels,
                     std::span<double> grad_out);

/// Mini-batch SGD for `ap.epochs` epochs at batch `ap.batch` and step
/// `ap.lr`, reshuffling each epoch from `seed`; the final short batch is
/// trained, not dropped. The FedProx variant adds mu*(w - w_start) to each
/// gradient; the Scaffold variant adds (c - c_i) to each step and reports
/// the control-state increment. Throws std::runtime_error if the loss or
/// parameters go non-finite.
LocalTrainResult local_train(const ParamVector& start, const Dataset& shard,
                             const AdaptiveParams& ap, const LocalTrainOptions& options,
                             std::uint64_t seed);

/// Accuracy (argmax, ties to the lowest class index) and mean cross-entropy.
EvalResult evaluate(const ParamVector& params, const Dataset& dataset);

/// Serialized size: 8 bytes per parameter.
std::uint64_t model_bytes(const ParamVector& params);

}  // namespace safl
