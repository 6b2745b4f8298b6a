#ifndef RECOVERCAST_WINDOWING_HPP
#define RECOVERCAST_WINDOWING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recovercast {

enum class WindowingErrorKind { TestTooLarge, SeriesTooShort, EmptyDataset, InvalidArgument };

class WindowingError : public std::runtime_error {
public:
    WindowingError(WindowingErrorKind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}
    WindowingErrorKind kind() const noexcept { return kind_; }

private:
    WindowingErrorKind kind_;
};

struct SplitSpec {
    std::size_t test_len = 24;
};

struct TrainTestSplit {
    std::vector<double> train;
    std::vector<double> test;
};

/// Sliding-window supervised pairs: inputs[i] = series[i, i+L), targets[i] = series[i+L].
/// Inputs are stored row-major in one buffer of size count() * window_len.
class SupervisedDataset {
public:
    SupervisedDataset() = default;
    SupervisedDataset(std::size_t window_len, std::vector<double> inputs,
                      std::vector<double> targets);

    std::size_t size() const noexcept { return targets_.size(); }
    bool empty() const noexcept { return targets_.empty(); }
    std::size_t window_len() const noexcept { return window_len_; }

    std::span<const double> input(std::size_t i) const {
        return {inputs_.data() + i * window_len_, window_len_};
    }
    double target(std::size_t i) const { return targets_[i]; }
    std::span<const double> targets() const noexcept { return targets_; }

private:
    std::size_t window_len_ = 0;
    std::vector<double> inputs_;
    std::vector<double> targets_;
};

/// A batch_size x window_len block of inputs plus one target per row.
struct Batch {
    std::size_t window_len = 0;
    std::vector<double> inputs;
    std::vector<double> targets;

    std::size_t size() const noexcept { return targets.size(); }
    std::span<const double> row(std::size_t i) const {
        return {inputs.data() + i * window_len, window_len};
    }
};

TrainTestSplit split_train_test(std::span<const double> series, SplitSpec spec);

SupervisedDataset make_windows(std::span<const double> series, std::size_t window_len);

/// Partitions `ds` into consecutive batches. With `shuffle` the sample order
/// is a permutation drawn from a generator seeded with `seed`.
std::vector<Batch> make_batches(const SupervisedDataset& ds, std::size_t batch_size,
                                bool shuffle, std::uint64_t seed);

/// Batches a subset of `ds` given by `order`.
std::vector<Batch> make_batches(const SupervisedDataset& ds, std::span<const std::size_t> order,
                                std::size_t batch_size);

}  // namespace recovercast

#endif  // RECOVERCAST_WINDOWING_HPP
