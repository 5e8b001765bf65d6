#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "safl/training.hpp"

namespace safl {

enum class AggregationMethod { FedAvg, FedProx, Scaffold };

std::string_view method_name(AggregationMethod m);

struct ClientUpdate {
    int client_id = 0;
    ParamVector params;
    std::size_t n_samples = 0;
    std::optional<ControlVariate> control_delta;  // present iff Scaffold
};

struct AggregateResult {
    ParamVector params;
    std::optional<ControlVariate> server_control;  // updated c, Scaffold only
};

/// Complexity-gated choice: FedAvg below 0.5, FedProx in [0.5, 0.7),
/// Scaffold at and above 0.7. Throws on complexity outside [0,1].
AggregationMethod select_method(double complexity);

/// Sample-count-weighted mean of the client parameters, summed in ascending
/// client-id order so results are bit-stable regardless of arrival order.
/// For Scaffold also returns c' = c + (1/N) * sum of control deltas, with
/// N = n_total_clients.
AggregateResult aggregate(const std::vector<ClientUpdate>& updates, AggregationMethod method,
                          const ControlVariate* server_control, int n_total_clients);

}  // namespace safl
