#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <vector>

namespace safl {

struct NetworkConfig {
    double bandwidth_mbps = 100.0;
    double base_latency_ms = 10.0;
    double jitter_frac = 0.1;         // multiplicative uniform +/- on the bandwidth term
    double participation_rate = 0.8;

    void validate() const;
};

enum class Direction { Download, Upload };

struct TransferEvent {
    int round = 0;
    int client_id = 0;
    Direction direction = Direction::Download;
    std::uint64_t bytes = 0;
    double duration = 0.0;  // seconds

    bool operator==(const TransferEvent&) const = default;
};

struct LedgerTotals {
    std::size_t event_count = 0;
    std::size_t upload_count = 0;
    std::size_t download_count = 0;
    std::uint64_t total_bytes = 0;
    std::uint64_t upload_bytes = 0;
    std::uint64_t download_bytes = 0;
    double total_duration = 0.0;
    double mean_duration = 0.0;
    std::map<int, std::uint64_t> per_client_bytes;
    std::uint64_t peak_client_bytes = 0;
    int peak_client_id = -1;
};

/// Append-only record of every simulated model transfer. The orchestrator is
/// the sole writer; totals are recomputed from the raw events on demand.
class CommsLedger {
public:
    void record(const TransferEvent& event);
    const std::vector<TransferEvent>& events() const { return events_; }
    LedgerTotals summarize() const;

private:
    std::vector<TransferEvent> events_;
};

/// Each client joins independently with probability `rate`; if nobody is
/// drawn the lowest id is forced in so every round has a participant.
std::vector<int> sample_participants(const std::vector<int>& client_ids, double rate,
                                     std::mt19937_64& rng);

/// bytes*8 / (bandwidth_mbps*1e6) * (1 + u) + base_latency_ms/1000 seconds,
/// u ~ uniform(-jitter_frac, +jitter_frac). Never below the base latency.
double transfer_time(std::uint64_t bytes, const NetworkConfig& config, std::mt19937_64& rng);

/// CSV with header round,client_id,direction,bytes,duration_s.
void write_comms_csv(const CommsLedger& ledger, const std::filesystem::path& path);

}  // namespace safl
