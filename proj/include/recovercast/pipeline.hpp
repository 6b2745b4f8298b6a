#ifndef RECOVERCAST_PIPELINE_HPP
#define RECOVERCAST_PIPELINE_HPP

#include <cstddef>
#include <vector>

#include "recovercast/ingest.hpp"

namespace recovercast {

/// The global series cut into a training span and a held-out tail.
///
/// The split is on days of the cumulative series: the first
/// `train_days` days train the model, the last `test_len` days are held out.
/// Training uses the deltas between consecutive training days; each
/// held-out delta is the change into one test day.
struct PreparedSeries {
    CumulativeSeries cumulative;
    DeltaSeries deltas;
    std::size_t train_days = 0;
    std::vector<double> train_deltas;
    std::vector<double> test_deltas;
    std::vector<Date> test_dates;
    double train_base_cumulative = 0.0;
    Date train_end_date{};
};

PreparedSeries prepare_series(const CumulativeSeries& cumulative, std::size_t test_len);

}  // namespace recovercast

#endif  // RECOVERCAST_PIPELINE_HPP
