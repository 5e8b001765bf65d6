#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "safl/adaptation.hpp"
#include "safl/netsim.hpp"

namespace safl {

struct StopConfig {
    double epsilon = 1e-3;  // convergence-rate threshold
    int t_min = 5;          // never stop at or before this round
    int window = 3;         // accuracy-slope window

    void validate() const;
};

struct ClientParamsUsed {
    int client_id = 0;
    AdaptiveParams params;

    bool operator==(const ClientParamsUsed&) const = default;
};

/// One completed round's system, network and training metrics.
struct RoundRecord {
    int round = 0;
    double accuracy = 0.0;
    double loss = 0.0;
    double convergence_rate = 0.0;  // +inf until the window fills
    std::vector<int> participants;
    double cpu_frac = 0.0;
    double mem_frac = 0.0;
    double gpu_frac = 0.0;  // always 0: CPU-only simulation
    double bandwidth_util = 0.0;
    double mean_latency_s = 0.0;
    double throughput_bytes_s = 0.0;
    double round_wall_time_s = 0.0;  // simulated time, see collect()
    std::vector<ClientParamsUsed> adaptive_params_used;
    bool probes_simulated = true;

    bool operator==(const RoundRecord&) const = default;
};

/// Windowed accuracy slope: (acc[last] - acc[last-window]) / window once
/// the history is longer than the window, otherwise +inf so early rounds
/// can never trigger a stop. May be negative.
double convergence_rate(std::span<const double> accuracy_history, int window);

/// True iff rate < epsilon and t > t_min (both strict).
bool should_stop(double rate, int t, const StopConfig& config);

/// Best-effort process CPU/memory probe. sample() returns {cpu_frac,
/// mem_frac} or nullopt when the platform gives no usable reading.
class SystemProbe {
public:
    virtual ~SystemProbe() = default;
    virtual std::optional<std::pair<double, double>> sample() = 0;
};

/// Reads /proc/self/stat and /proc/meminfo. First sample has no CPU-time
/// baseline and reports 0 CPU; callers get nullopt on any parse failure.
class ProcSystemProbe : public SystemProbe {
public:
    std::optional<std::pair<double, double>> sample() override;

private:
    bool has_baseline_ = false;
    double last_cpu_seconds_ = 0.0;
    double last_wall_seconds_ = 0.0;
};

// Reported when no probe is available (CPU 2.1%, memory 8.7%).
inline constexpr double kSimulatedCpuFrac = 0.021;
inline constexpr double kSimulatedMemFrac = 0.087;

/// Everything the orchestrator hands over once a round completes.
struct RoundContext {
    int round = 0;
    double accuracy = 0.0;
    double loss = 0.0;
    double convergence_rate = 0.0;
    std::vector<int> participants;
    std::vector<ClientParamsUsed> params_used;
    std::span<const TransferEvent> events;  // this round's transfers
    double round_wall_time_s = 0.0;         // simulated round duration
};

/// Assembles the RoundRecord. Network metrics are derived from the round's
/// transfer events (mean duration, bytes/s over the simulated wall time,
/// busy-time fraction clamped to [0,1]). With a null or failing probe the
/// system metrics fall back to the simulated constants and the record is
/// flagged accordingly.
RoundRecord collect(const RoundContext& context, SystemProbe* probe);

void to_json(nlohmann::ordered_json& j, const RoundRecord& r);
void from_json(const nlohmann::json& j, RoundRecord& r);

/// Line-per-round JSON log, flushed after every record.
class MetricsWriter {
public:
    explicit MetricsWriter(const std::filesystem::path& path);  // throws on open failure
    void emit(const RoundRecord& record);                       // throws on write failure

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace safl
