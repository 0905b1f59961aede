#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arces/series.hpp"

namespace arces {

enum class ForecastKind { kPersistence, kSeasonalNaive, kRecurrent };

const char* forecast_kind_name(ForecastKind kind);
ForecastKind forecast_kind_from_name(const std::string& name);

// Single-layer LSTM over a scalar input with a linear read-out head.
// Gate order everywhere: input, forget, output, cell candidate.
struct LstmWeights {
    int hidden = 0;
    std::vector<double> Wi, Wf, Wo, Wg;  // input weights, hidden each
    std::vector<double> Ui, Uf, Uo, Ug;  // recurrent weights, hidden*hidden row-major
    std::vector<double> bi, bf, bo, bg;  // biases, hidden each
    std::vector<double> wy;              // read-out weights, hidden
    double by = 0.0;

    std::size_t parameter_count() const;
};

struct TrainConfig {
    int lookback = 4;        // recurrent input window
    int hidden = 4;          // recurrent state width
    int epochs = 200;        // full-batch gradient descent epochs
    double step_size = 0.5;  // gradient descent step
    std::uint32_t seed = 1;  // weight initialization
    int period = 0;          // seasonal-naive lag, ignored by other kinds
};

struct ForecastModel {
    ForecastKind kind = ForecastKind::kPersistence;
    int period = 0;
    int lookback = 0;
    NormBounds bounds{0.0, 1.0};
    LstmWeights weights;
    std::vector<double> train_loss;  // mean squared error per epoch, recurrent only
};

// Trains on a series already normalized to [0,1].  Persistence needs >= 1
// sample, seasonal-naive needs cfg.period >= 1, recurrent needs at least one
// (lookback, target) window.
ForecastModel train(ForecastKind kind, const Series& normalized, const TrainConfig& cfg);

// Normalizes raw, trains, and stores the bounds in the model.
ForecastModel fit_raw(ForecastKind kind, const Series& raw, const TrainConfig& cfg);

// Recursive T-step-ahead predictions in normalized space; every step is
// clipped to [0,1] before it is fed back.
Series predict_horizon(const ForecastModel& model, const Series& normalized_history, int T);

// predict_horizon against raw-unit history: normalizes with the model bounds,
// predicts, and maps back to raw units.
Series forecast_raw(const ForecastModel& model, const Series& raw_history, int T);

double rmse(const Series& a, const Series& b);

struct ForecastReport {
    ForecastKind kind = ForecastKind::kPersistence;
    std::vector<double> rmse_per_step;  // [n-1] = n-step-ahead RMSE, normalized units
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

// Trains on the leading train_frac of the series and scores recursive
// n-step-ahead predictions (n = 1..T) on the remainder.  Normalization bounds
// come from the training segment only.
ForecastReport evaluate(ForecastKind kind, const Series& raw, int T,
                        const TrainConfig& cfg, double train_frac = 0.67);

// Compares analytic full-batch gradients against central finite differences
// on sample_count seeded parameter picks; returns the maximum relative error.
double gradient_check(const Series& normalized, const TrainConfig& cfg,
                      double epsilon, int sample_count, std::uint32_t seed);

// Flat `name,value` round-trip of a trained model.
std::string save_model(const ForecastModel& model);
ForecastModel load_model(const std::string& text);

}  // namespace arces
