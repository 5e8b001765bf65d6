#include "safl/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace safl {

namespace {

void check_layout(const ParamVector& params) {
    const auto& l = params.layout;
    if (l.input_dim < 1 || l.hidden_dim < 1 || l.classes < 1)
        throw std::invalid_argument("model layout dimensions must be >= 1");
    if (params.values.size() != l.param_count())
        throw std::invalid_argument("parameter vector length does not match its layout");
}

// Forward pass for one row; returns the sample loss and, when `backward` is
// set, accumulates gradients scaled by `inv_batch` into grad (same layout as
// the parameters).
struct Workspace {
    std::vector<double> z1, a1, z2, p, dz1;
};

double forward_backward_row(const ParamVector& params, std::span<const double> x, int label,
                            double inv_batch, std::span<double> grad, bool backward,
                            Workspace& ws) {
    const int d = params.layout.input_dim;
    const int h = params.layout.hidden_dim;
    const int k = params.layout.classes;
    const auto w1 = params.w1();
    const auto b1 = params.b1();
    const auto w2 = params.w2();
    const auto b2 = params.b2();

    ws.z1.assign(h, 0.0);
    ws.a1.assign(h, 0.0);
    ws.z2.assign(k, 0.0);
    ws.p.assign(k, 0.0);

    for (int u = 0; u < h; ++u) {
        double z = b1[u];
        for (int j = 0; j < d; ++j) z += x[j] * w1[std::size_t(j) * h + u];
        ws.z1[u] = z;
        ws.a1[u] = z > 0.0 ? z : 0.0;
    }
    for (int c = 0; c < k; ++c) {
        double z = b2[c];
        for (int u = 0; u < h; ++u) z += ws.a1[u] * w2[std::size_t(u) * k + c];
        ws.z2[c] = z;
    }

    const double zmax = *std::max_element(ws.z2.begin(), ws.z2.end());
    double sum = 0.0;
    for (int c = 0; c < k; ++c) sum += std::exp(ws.z2[c] - zmax);
    const double lse = zmax + std::log(sum);
    const double loss = lse - ws.z2[label];

    if (!backward) return loss;

    const std::size_t w1_len = std::size_t(d) * h;
    const std::size_t w2_len = std::size_t(h) * k;
    auto g_w1 = grad.subspan(0, w1_len);
    auto g_b1 = grad.subspan(w1_len, h);
    auto g_w2 = grad.subspan(w1_len + h, w2_len);
    auto g_b2 = grad.subspan(w1_len + h + w2_len, k);

    for (int c = 0; c < k; ++c) {
        const double dz2 = (std::exp(ws.z2[c] - lse) - (c == label ? 1.0 : 0.0)) * inv_batch;
        ws.p[c] = dz2;
        g_b2[c] += dz2;
        for (int u = 0; u < h; ++u) g_w2[std::size_t(u) * k + c] += ws.a1[u] * dz2;
    }
    ws.dz1.assign(h, 0.0);
    for (int u = 0; u < h; ++u) {
        if (ws.z1[u] > 0.0) {
            double da = 0.0;
            for (int c = 0; c < k; ++c) da += w2[std::size_t(u) * k + c] * ws.p[c];
            ws.dz1[u] = da;
        }
    }
    for (int u = 0; u < h; ++u) {
        const double dz1 = ws.dz1[u];
        if (dz1 == 0.0) continue;
        g_b1[u] += dz1;
        for (int j = 0; j < d; ++j) g_w1[std::size_t(j) * h + u] += x[j] * dz1;
    }
    return loss;
}

double loss_over_rows(const ParamVector& params, const Matrix& features, std::span<const int> labels,
                      std::span<const std::size_t> rows, std::span<double> grad, bool backward,
                      Workspace& ws) {
    if (rows.empty()) throw std::invalid_argument("loss_and_grad: empty batch");
    if (features.cols != static_cast<std::size_t>(params.layout.input_dim))
        throw std::invalid_argument("loss_and_grad: feature width does not match input_dim");
    if (labels.size() != features.rows)
        throw std::invalid_argument("loss_and_grad: label count does not match rows");
    if (backward) {
        if (grad.size() != params.values.size())
            throw std::invalid_argument("loss_and_grad: gradient buffer size mismatch");
        std::fill(grad.begin(), grad.end(), 0.0);
    }

    const double inv_batch = 1.0 / static_cast<double>(rows.size());
    double total = 0.0;
    for (std::size_t r : rows) {
        if (r >= features.rows) throw std::invalid_argument("loss_and_grad: row out of range");
        const int label = labels[r];
        if (label < 0 || label >= params.layout.classes)
            throw std::invalid_argument("loss_and_grad: label out of range");
        total += forward_backward_row(params, features.row(r), label, inv_batch, grad, backward, ws);
    }
    return total * inv_batch;
}

}  // namespace

ParamVector init_model(int input_dim, int hidden_dim, int classes, std::uint64_t seed) {
    if (input_dim < 1 || hidden_dim < 1 || classes < 1)
        throw std::invalid_argument("init_model: dimensions must be >= 1");
    ParamVector params;
    params.layout = {input_dim, hidden_dim, classes};
    params.values.assign(params.layout.param_count(), 0.0);

    std::mt19937_64 rng(seed);
    const double lim1 = std::sqrt(6.0 / (input_dim + hidden_dim));
    const double lim2 = std::sqrt(6.0 / (hidden_dim + classes));
    std::uniform_real_distribution<double> u1(-lim1, lim1);
    std::uniform_real_distribution<double> u2(-lim2, lim2);
    for (auto& w : params.w1()) w = u1(rng);
    for (auto& w : params.w2()) w = u2(rng);
    // biases stay zero
    return params;
}

double loss_and_grad(const ParamVector& params, const Matrix& features, std::span<const int> labels,
                     std::span<const std::size_t> rows, std::span<double> grad_out) {
    check_layout(params);
    Workspace ws;
    return loss_over_rows(params, features, labels, rows, grad_out, true, ws);
}

double loss_and_grad(const ParamVector& params, const Matrix& features, std::span<const int> labels,
                     std::span<double> grad_out) {
    std::vector<std::size_t> rows(features.rows);
    std::iota(rows.begin(), rows.end(), 0);
    return loss_and_grad(params, features, labels, rows, grad_out);
}

LocalTrainResult local_train(const ParamVector& start, const Dataset& shard,
                             const AdaptiveParams& ap, const LocalTrainOptions& options,
                             std::uint64_t seed) {
    check_layout(start);
    const std::size_t n = shard.features.rows;
    if (n == 0) throw std::invalid_argument("local_train: empty shard");
    if (ap.epochs < 1 || ap.batch < 1) throw std::invalid_argument("local_train: bad parameters");
    if (ap.lr < 0.0) throw std::invalid_argument("local_train: negative learning rate");

    const bool prox = options.variant == LocalVariant::FedProx;
    const bool scaffold = options.variant == LocalVariant::Scaffold;
    const std::size_t len = start.values.size();
    if (scaffold) {
        if (!options.server_control || !options.client_control)
            throw std::invalid_argument("local_train: scaffold variant needs both control states");
        if (options.server_control->values.size() != len ||
            options.client_control->values.size() != len)
            throw std::invalid_argument("local_train: control state length mismatch");
    }

    const auto t0 = std::chrono::steady_clock::now();

    ParamVector w = start;
    std::vector<double> grad(len, 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    Workspace ws;
    std::size_t steps = 0;

    for (int epoch = 0; epoch < ap.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t begin = 0; begin < n; begin += ap.batch) {
            const std::size_t count = std::min<std::size_t>(ap.batch, n - begin);
            std::span<const std::size_t> batch(order.data() + begin, count);
            const double loss =
                loss_over_rows(w, shard.features, shard.labels, batch, grad, true, ws);
            if (!std::isfinite(loss))
                throw std::runtime_error("local_train: non-finite loss on '" + shard.spec.name +
                                         "' (diverged; reduce the learning rate)");
            if (prox) {
                for (std::size_t i = 0; i < len; ++i)
                    grad[i] += options.prox_mu * (w.values[i] - start.values[i]);
            }
            if (scaffold) {
                for (std::size_t i = 0; i < len; ++i)
                    grad[i] += options.server_control->values[i] - options.client_control->values[i];
            }
            for (std::size_t i = 0; i < len; ++i) w.values[i] -= ap.lr * grad[i];
            ++steps;
        }
        for (double v : w.values) {
            if (!std::isfinite(v))
                throw std::runtime_error("local_train: non-finite parameters on '" +
                                         shard.spec.name + "'");
        }
    }

    LocalTrainResult result;
    result.stats.samples_seen = static_cast<std::size_t>(ap.epochs) * n;
    result.stats.final_local_loss = evaluate(w, shard).loss;
    result.stats.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (scaffold) {
        // c_i' = c_i - c + (w_start - w_end) / (K * lr); report the increment
        // c_i' - c_i. No steps or a zero step size leave the state unchanged.
        ControlVariate delta;
        delta.values.assign(len, 0.0);
        const double denom = static_cast<double>(steps) * ap.lr;
        if (denom > 0.0) {
            for (std::size_t i = 0; i < len; ++i) {
                delta.values[i] = -options.server_control->values[i] +
                                  (start.values[i] - w.values[i]) / denom;
            }
        }
        result.control_delta = std::move(delta);
    }

    result.params = std::move(w);
    return result;
}

EvalResult evaluate(const ParamVector& params, const Dataset& dataset) {
    check_layout(params);
    const std::size_t n = dataset.features.rows;
    if (n == 0) throw std::invalid_argument("evaluate: empty dataset");
    if (dataset.features.cols != static_cast<std::size_t>(params.layout.input_dim))
        throw std::invalid_argument("evaluate: feature width does not match input_dim");

    const int h = params.layout.hidden_dim;
    const int k = params.layout.classes;
    const int d = params.layout.input_dim;
    const auto w1 = params.w1();
    const auto b1 = params.b1();
    const auto w2 = params.w2();
    const auto b2 = params.b2();

    std::vector<double> a1(h), z2(k);
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = dataset.features.row(i);
        for (int u = 0; u < h; ++u) {
            double z = b1[u];
            for (int j = 0; j < d; ++j) z += x[j] * w1[std::size_t(j) * h + u];
            a1[u] = z > 0.0 ? z : 0.0;
        }
        int best = 0;
        for (int c = 0; c < k; ++c) {
            double z = b2[c];
            for (int u = 0; u < h; ++u) z += a1[u] * w2[std::size_t(u) * k + c];
            z2[c] = z;
            if (z > z2[best]) best = c;  // strict: ties keep the lowest index
        }
        const int label = dataset.labels[i];
        if (label < 0 || label >= k) throw std::invalid_argument("evaluate: label out of range");
        if (best == label) ++correct;
        const double zmax = z2[best] > z2[0] ? z2[best] : z2[0];
        double sum = 0.0;
        for (int c = 0; c < k; ++c) sum += std::exp(z2[c] - zmax);
        loss_sum += zmax + std::log(sum) - z2[label];
    }
    return {static_cast<double>(correct) / static_cast<double>(n),
            loss_sum / static_cast<double>(n)};
}

std::uint64_t model_bytes(const ParamVector& params) {
    check_layout(params);
    return static_cast<std::uint64_t>(params.values.size()) * 8;
}

}  // namespace safl
