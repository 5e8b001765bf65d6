#include "safl/adaptation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace safl {

void BaseConfig::validate() const {
    if (epochs_base < 1) throw std::invalid_argument("epochs_base must be >= 1");
    if (batch_base < 1) throw std::invalid_argument("batch_base must be >= 1");
    if (lr_base <= 0.0) throw std::invalid_argument("lr_base must be positive");
    if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in (0,1]");
}

std::vector<std::size_t> order_by_size(const std::vector<DatasetProfile>& profiles) {
    if (profiles.empty()) throw std::invalid_argument("order_by_size: empty profile list");
    std::vector<std::size_t> sigma(profiles.size());
    std::iota(sigma.begin(), sigma.end(), 0);
    std::sort(sigma.begin(), sigma.end(), [&](std::size_t a, std::size_t b) {
        if (profiles[a].size != profiles[b].size) return profiles[a].size < profiles[b].size;
        return profiles[a].name < profiles[b].name;
    });
    return sigma;
}

AdaptiveParams adaptive_params(const DatasetProfile& profile, const BaseConfig& base,
                               const SizeThresholds& thresholds, bool complexity_lr) {
    base.validate();
    const int category = static_cast<int>(size_category(profile.size, thresholds));

    AdaptiveParams ap;
    ap.epochs = base.epochs_base + category;
    ap.batch = base.batch_base << category;  // base * 2^category

    double lr = base.lr_base;
    for (int i = 0; i < category; ++i) lr *= base.alpha;
    if (complexity_lr) lr *= 1.0 - 0.2 * profile.complexity;
    ap.lr = lr;
    return ap;
}

}  // namespace safl
