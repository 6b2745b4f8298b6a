#include "recovercast/pipeline.hpp"

#include "recovercast/windowing.hpp"

namespace recovercast {

PreparedSeries prepare_series(const CumulativeSeries& cumulative, std::size_t test_len) {
    PreparedSeries out;
    out.cumulative = cumulative;
    out.deltas = to_daily_deltas(cumulative);

    const auto split = split_train_test(cumulative.values, SplitSpec{test_len});
    out.train_days = split.train.size();
    CumulativeSeries train_part{
        {cumulative.dates.begin(),
         cumulative.dates.begin() + static_cast<std::ptrdiff_t>(out.train_days)},
        split.train};
    if (train_part.values.size() < 2) {
        throw WindowingError(WindowingErrorKind::TestTooLarge,
                             "test_len leaves fewer than 2 training days");
    }
    out.train_deltas = to_daily_deltas(train_part).values;
    const auto first_test = out.deltas.values.size() - test_len;
    out.test_deltas.assign(out.deltas.values.begin() + static_cast<std::ptrdiff_t>(first_test),
                           out.deltas.values.end());
    out.test_dates.assign(out.deltas.dates.begin() + static_cast<std::ptrdiff_t>(first_test),
                          out.deltas.dates.end());
    out.train_base_cumulative = split.train.back();
    out.train_end_date = cumulative.dates[out.train_days - 1];
    return out;
}

}  // namespace recovercast
