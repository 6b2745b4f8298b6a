#include "recovercast/windowing.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace recovercast {

SupervisedDataset::SupervisedDataset(std::size_t window_len, std::vector<double> inputs,
                                     std::vector<double> targets)
    : window_len_(window_len), inputs_(std::move(inputs)), targets_(std::move(targets)) {
    if (window_len_ == 0 || inputs_.size() != targets_.size() * window_len_) {
        throw WindowingError(WindowingErrorKind::InvalidArgument,
                             "inputs must hold window_len values per target");
    }
}

TrainTestSplit split_train_test(std::span<const double> series, SplitSpec spec) {
    if (spec.test_len == 0 || spec.test_len >= series.size()) {
        throw WindowingError(WindowingErrorKind::TestTooLarge,
                             "test_len " + std::to_string(spec.test_len) +
                                 " must be in [1, " + std::to_string(series.size()) + ")");
    }
    const auto cut = series.size() - spec.test_len;
    return {{series.begin(), series.begin() + static_cast<std::ptrdiff_t>(cut)},
            {series.begin() + static_cast<std::ptrdiff_t>(cut), series.end()}};
}

SupervisedDataset make_windows(std::span<const double> series, std::size_t window_len) {
    if (window_len == 0) {
        throw WindowingError(WindowingErrorKind::InvalidArgument, "window_len must be positive");
    }
    if (series.size() <= window_len) {
        throw WindowingError(WindowingErrorKind::SeriesTooShort,
                             "series of " + std::to_string(series.size()) +
                                 " values yields no window of length " +
                                 std::to_string(window_len));
    }
    const auto count = series.size() - window_len;
    std::vector<double> inputs;
    std::vector<double> targets;
    inputs.reserve(count * window_len);
    targets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        inputs.insert(inputs.end(), series.begin() + static_cast<std::ptrdiff_t>(i),
                      series.begin() + static_cast<std::ptrdiff_t>(i + window_len));
        targets.push_back(series[i + window_len]);
    }
    return {window_len, std::move(inputs), std::move(targets)};
}

std::vector<Batch> make_batches(const SupervisedDataset& ds, std::span<const std::size_t> order,
                                std::size_t batch_size) {
    if (batch_size == 0) {
        throw WindowingError(WindowingErrorKind::InvalidArgument, "batch_size must be positive");
    }
    std::vector<Batch> batches;
    batches.reserve((order.size() + batch_size - 1) / batch_size);
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
        const auto end = std::min(order.size(), start + batch_size);
        Batch b;
        b.window_len = ds.window_len();
        b.inputs.reserve((end - start) * ds.window_len());
        b.targets.reserve(end - start);
        for (std::size_t k = start; k < end; ++k) {
            const auto in = ds.input(order[k]);
            b.inputs.insert(b.inputs.end(), in.begin(), in.end());
            b.targets.push_back(ds.target(order[k]));
        }
        batches.push_back(std::move(b));
    }
    return batches;
}

std::vector<Batch> make_batches(const SupervisedDataset& ds, std::size_t batch_size,
                                bool shuffle, std::uint64_t seed) {
    if (ds.empty()) {
        throw WindowingError(WindowingErrorKind::EmptyDataset, "dataset has no samples");
    }
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (shuffle) {
        // Hand-rolled Fisher-Yates: std::shuffle's output is implementation-defined.
        std::mt19937_64 rng(seed);
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(rng() % (i + 1));
            std::swap(order[i], order[j]);
        }
    }
    return make_batches(ds, order, batch_size);
}

}  // namespace recovercast
