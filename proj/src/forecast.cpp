#include "arces/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace arces {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

// Post-activation values of every step, kept for backpropagation.
struct Tape {
    std::vector<double> x;
    std::vector<std::vector<double>> i, f, o, g, c, h;
};

double lstm_forward(const LstmWeights& w, const double* window, int n, Tape* tape) {
    const int H = w.hidden;
    std::vector<double> h(static_cast<std::size_t>(H), 0.0);
    std::vector<double> c(static_cast<std::size_t>(H), 0.0);
    if (tape) {
        tape->x.assign(window, window + n);
        tape->i.clear(); tape->f.clear(); tape->o.clear();
        tape->g.clear(); tape->c.clear(); tape->h.clear();
    }
    std::vector<double> gi(static_cast<std::size_t>(H)), gf(static_cast<std::size_t>(H)),
        go(static_cast<std::size_t>(H)), gg(static_cast<std::size_t>(H));
    for (int t = 0; t < n; ++t) {
        const double x = window[t];
        for (int j = 0; j < H; ++j) {
            double ai = w.Wi[j] * x + w.bi[j];
            double af = w.Wf[j] * x + w.bf[j];
            double ao = w.Wo[j] * x + w.bo[j];
            double ag = w.Wg[j] * x + w.bg[j];
            const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(H);
            for (int k = 0; k < H; ++k) {
                ai += w.Ui[row + k] * h[k];
                af += w.Uf[row + k] * h[k];
                ao += w.Uo[row + k] * h[k];
                ag += w.Ug[row + k] * h[k];
            }
            gi[j] = sigmoid(ai);
            gf[j] = sigmoid(af);
            go[j] = sigmoid(ao);
            gg[j] = std::tanh(ag);
        }
        for (int j = 0; j < H; ++j) {
            c[j] = gf[j] * c[j] + gi[j] * gg[j];
            h[j] = go[j] * std::tanh(c[j]);
        }
        if (tape) {
            tape->i.push_back(gi);
            tape->f.push_back(gf);
            tape->o.push_back(go);
            tape->g.push_back(gg);
            tape->c.push_back(c);
            tape->h.push_back(h);
        }
    }
    double y = w.by;
    for (int j = 0; j < H; ++j) y += w.wy[j] * h[j];
    return y;
}

LstmWeights zeros_like(const LstmWeights& w) {
    LstmWeights z;
    z.hidden = w.hidden;
    const std::size_t H = static_cast<std::size_t>(w.hidden);
    z.Wi.assign(H, 0.0); z.Wf.assign(H, 0.0); z.Wo.assign(H, 0.0); z.Wg.assign(H, 0.0);
    z.Ui.assign(H * H, 0.0); z.Uf.assign(H * H, 0.0);
    z.Uo.assign(H * H, 0.0); z.Ug.assign(H * H, 0.0);
    z.bi.assign(H, 0.0); z.bf.assign(H, 0.0); z.bo.assign(H, 0.0); z.bg.assign(H, 0.0);
    z.wy.assign(H, 0.0);
    z.by = 0.0;
    return z;
}

// Accumulates d(loss)/d(parameters) for one window given d(loss)/dy.
void lstm_backward(const LstmWeights& w, const Tape& tape, double dy, LstmWeights& grad) {
    const int H = w.hidden;
    const int n = static_cast<int>(tape.x.size());
    std::vector<double> dh(static_cast<std::size_t>(H)), dc(static_cast<std::size_t>(H), 0.0);
    for (int j = 0; j < H; ++j) {
        dh[j] = dy * w.wy[j];
        grad.wy[j] += dy * tape.h[n - 1][j];
    }
    grad.by += dy;

    std::vector<double> dai(static_cast<std::size_t>(H)), daf(static_cast<std::size_t>(H)),
        dao(static_cast<std::size_t>(H)), dag(static_cast<std::size_t>(H));
    for (int t = n - 1; t >= 0; --t) {
        const auto& i = tape.i[t];
        const auto& f = tape.f[t];
        const auto& o = tape.o[t];
        const auto& g = tape.g[t];
        const auto& c = tape.c[t];
        for (int j = 0; j < H; ++j) {
            const double tc = std::tanh(c[j]);
            const double do_ = dh[j] * tc;
            dc[j] += dh[j] * o[j] * (1.0 - tc * tc);
            const double di = dc[j] * g[j];
            const double dg = dc[j] * i[j];
            const double cprev = t > 0 ? tape.c[t - 1][j] : 0.0;
            const double df = dc[j] * cprev;
            dai[j] = di * i[j] * (1.0 - i[j]);
            daf[j] = df * f[j] * (1.0 - f[j]);
            dao[j] = do_ * o[j] * (1.0 - o[j]);
            dag[j] = dg * (1.0 - g[j] * g[j]);
        }
        const double x = tape.x[t];
        for (int j = 0; j < H; ++j) {
            grad.Wi[j] += dai[j] * x;
            grad.Wf[j] += daf[j] * x;
            grad.Wo[j] += dao[j] * x;
            grad.Wg[j] += dag[j] * x;
            grad.bi[j] += dai[j];
            grad.bf[j] += daf[j];
            grad.bo[j] += dao[j];
            grad.bg[j] += dag[j];
        }
        if (t > 0) {
            const auto& hprev = tape.h[t - 1];
            for (int j = 0; j < H; ++j) {
                const std::size_t row =
                    static_cast<std::size_t>(j) * static_cast<std::size_t>(H);
                for (int k = 0; k < H; ++k) {
                    grad.Ui[row + k] += dai[j] * hprev[k];
                    grad.Uf[row + k] += daf[j] * hprev[k];
                    grad.Uo[row + k] += dao[j] * hprev[k];
                    grad.Ug[row + k] += dag[j] * hprev[k];
                }
            }
        }
        std::vector<double> dh_prev(static_cast<std::size_t>(H), 0.0);
        for (int j = 0; j < H; ++j) {
            const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(H);
            for (int k = 0; k < H; ++k) {
                dh_prev[k] += w.Ui[row + k] * dai[j] + w.Uf[row + k] * daf[j] +
                              w.Uo[row + k] * dao[j] + w.Ug[row + k] * dag[j];
            }
        }
        for (int j = 0; j < H; ++j) {
            dc[j] *= f[j];
            dh[j] = dh_prev[j];
        }
    }
}

// Flat parameter order shared by the optimizer, the finite-difference check
// and the dump format.
std::vector<double*> flatten(LstmWeights& w) {
    std::vector<double*> out;
    out.reserve(w.parameter_count());
    for (auto* vec : {&w.Wi, &w.Wf, &w.Wo, &w.Wg, &w.Ui, &w.Uf, &w.Uo, &w.Ug,
                      &w.bi, &w.bf, &w.bo, &w.bg, &w.wy}) {
        for (double& v : *vec) out.push_back(&v);
    }
    out.push_back(&w.by);
    return out;
}

LstmWeights init_weights(int hidden, std::uint32_t seed) {
    LstmWeights w;
    w.hidden = hidden;
    const std::size_t H = static_cast<std::size_t>(hidden);
    w.Wi.resize(H); w.Wf.resize(H); w.Wo.resize(H); w.Wg.resize(H);
    w.Ui.resize(H * H); w.Uf.resize(H * H); w.Uo.resize(H * H); w.Ug.resize(H * H);
    w.bi.assign(H, 0.0); w.bf.assign(H, 0.0); w.bo.assign(H, 0.0); w.bg.assign(H, 0.0);
    w.wy.resize(H);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-0.2, 0.2);
    for (double* p : flatten(w)) *p = dist(rng);
    return w;
}

struct WindowSet {
    const Series* series;
    int lookback;

    std::size_t count() const { return series->size() - static_cast<std::size_t>(lookback); }
    const double* input(std::size_t k) const { return series->data() + k; }
    double target(std::size_t k) const { return (*series)[k + static_cast<std::size_t>(lookback)]; }
};

// Mean squared error over all windows; fills grad (same shape as w) when
// requested.
double batch_loss(const LstmWeights& w, const WindowSet& ws, LstmWeights* grad) {
    const std::size_t N = ws.count();
    Tape tape;
    double loss = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        const double y = lstm_forward(w, ws.input(k), ws.lookback, grad ? &tape : nullptr);
        const double e = y - ws.target(k);
        loss += e * e;
        if (grad) lstm_backward(w, tape, 2.0 * e / static_cast<double>(N), *grad);
    }
    return loss / static_cast<double>(N);
}

void require_normalized(const Series& s, const char* who) {
    for (double v : s) {
        if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
            std::ostringstream os;
            os << who << ": series must be normalized to [0,1], got " << v;
            throw std::invalid_argument(os.str());
        }
    }
}

}  // namespace

std::size_t LstmWeights::parameter_count() const {
    const std::size_t H = static_cast<std::size_t>(hidden);
    return 4 * H + 4 * H * H + 4 * H + H + 1;
}

const char* forecast_kind_name(ForecastKind kind) {
    switch (kind) {
        case ForecastKind::kPersistence: return "persistence";
        case ForecastKind::kSeasonalNaive: return "seasonal";
        case ForecastKind::kRecurrent: return "recurrent";
    }
    return "unknown";
}

ForecastKind forecast_kind_from_name(const std::string& name) {
    if (name == "persistence") return ForecastKind::kPersistence;
    if (name == "seasonal") return ForecastKind::kSeasonalNaive;
    if (name == "recurrent") return ForecastKind::kRecurrent;
    throw std::invalid_argument("unknown forecaster kind: " + name);
}

ForecastModel train(ForecastKind kind, const Series& normalized, const TrainConfig& cfg) {
    if (normalized.empty()) throw std::invalid_argument("train: empty series");
    require_normalized(normalized, "train");

    ForecastModel model;
    model.kind = kind;
    switch (kind) {
        case ForecastKind::kPersistence:
            return model;
        case ForecastKind::kSeasonalNaive:
            if (cfg.period < 1) throw std::invalid_argument("train: seasonal period must be >= 1");
            if (normalized.size() < static_cast<std::size_t>(cfg.period)) {
                throw std::invalid_argument("train: series shorter than the seasonal period");
            }
            model.period = cfg.period;
            return model;
        case ForecastKind::kRecurrent:
            break;
    }

    if (cfg.lookback < 1) throw std::invalid_argument("train: lookback must be >= 1");
    if (cfg.hidden < 1) throw std::invalid_argument("train: hidden must be >= 1");
    if (cfg.epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
    if (!(cfg.step_size > 0.0)) throw std::invalid_argument("train: step_size must be > 0");
    if (normalized.size() < static_cast<std::size_t>(cfg.lookback) + 1) {
        throw std::invalid_argument("train: series too short for one lookback window");
    }

    model.lookback = cfg.lookback;
    model.weights = init_weights(cfg.hidden, cfg.seed);
    const WindowSet ws{&normalized, cfg.lookback};
    model.train_loss.reserve(static_cast<std::size_t>(cfg.epochs));
    auto params = flatten(model.weights);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        LstmWeights grad = zeros_like(model.weights);
        model.train_loss.push_back(batch_loss(model.weights, ws, &grad));
        auto grads = flatten(grad);
        for (std::size_t i = 0; i < params.size(); ++i) {
            *params[i] -= cfg.step_size * *grads[i];
        }
    }
    return model;
}

ForecastModel fit_raw(ForecastKind kind, const Series& raw, const TrainConfig& cfg) {
    auto [normalized, bounds] = normalize_minmax(raw);
    ForecastModel model = train(kind, normalized, cfg);
    model.bounds = bounds;
    return model;
}

Series predict_horizon(const ForecastModel& model, const Series& normalized_history, int T) {
    if (T < 1) throw std::invalid_argument("predict_horizon: T must be >= 1");
    if (normalized_history.empty()) {
        throw std::invalid_argument("predict_horizon: empty history");
    }

    Series ext = normalized_history;
    Series out;
    out.reserve(static_cast<std::size_t>(T));
    switch (model.kind) {
        case ForecastKind::kPersistence: {
            const double v = clip01(ext.back());
            out.assign(static_cast<std::size_t>(T), v);
            return out;
        }
        case ForecastKind::kSeasonalNaive: {
            if (model.period < 1) throw std::invalid_argument("predict_horizon: untrained seasonal model");
            if (ext.size() < static_cast<std::size_t>(model.period)) {
                throw std::invalid_argument("predict_horizon: history shorter than the seasonal period");
            }
            for (int n = 0; n < T; ++n) {
                const double v = clip01(ext[ext.size() - static_cast<std::size_t>(model.period)]);
                out.push_back(v);
                ext.push_back(v);
            }
            return out;
        }
        case ForecastKind::kRecurrent: {
            if (model.weights.hidden < 1) {
                throw std::invalid_argument("predict_horizon: untrained recurrent model");
            }
            if (ext.size() < static_cast<std::size_t>(model.lookback)) {
                throw std::invalid_argument("predict_horizon: history shorter than the lookback");
            }
            for (int n = 0; n < T; ++n) {
                const double* window = ext.data() + (ext.size() - static_cast<std::size_t>(model.lookback));
                const double v = clip01(lstm_forward(model.weights, window, model.lookback, nullptr));
                out.push_back(v);
                ext.push_back(v);
            }
            return out;
        }
    }
    throw std::logic_error("predict_horizon: unreachable");
}

Series forecast_raw(const ForecastModel& model, const Series& raw_history, int T) {
    const double span = model.bounds.hi - model.bounds.lo;
    Series normalized(raw_history.size());
    for (std::size_t t = 0; t < raw_history.size(); ++t) {
        normalized[t] = span > 0.0 ? (raw_history[t] - model.bounds.lo) / span : 0.0;
        normalized[t] = clip01(normalized[t]);
    }
    Series pred = predict_horizon(model, normalized, T);
    return denormalize(pred, model.bounds);
}

double rmse(const Series& a, const Series& b) {
    if (a.empty() || a.size() != b.size()) {
        throw std::invalid_argument("rmse: series must be nonempty and equally long");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = a[i] - b[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

ForecastReport evaluate(ForecastKind kind, const Series& raw, int T,
                        const TrainConfig& cfg, double train_frac) {
    if (T < 1) throw std::invalid_argument("evaluate: T must be >= 1");
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
        throw std::invalid_argument("evaluate: train_frac must be in (0,1)");
    }
    const std::size_t train_size =
        static_cast<std::size_t>(static_cast<double>(raw.size()) * train_frac);
    if (train_size < 1 || train_size >= raw.size()) {
        throw std::invalid_argument("evaluate: series too short for the requested split");
    }

    const Series train_raw(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(train_size));
    auto [train_norm, bounds] = normalize_minmax(train_raw);
    ForecastModel model = train(kind, train_norm, cfg);
    model.bounds = bounds;

    // Test targets normalized with the training bounds; they may leave [0,1].
    const double span = bounds.hi - bounds.lo;
    Series norm_full(raw.size());
    for (std::size_t t = 0; t < raw.size(); ++t) {
        norm_full[t] = span > 0.0 ? (raw[t] - bounds.lo) / span : 0.0;
    }

    std::vector<double> acc(static_cast<std::size_t>(T), 0.0);
    std::vector<std::size_t> cnt(static_cast<std::size_t>(T), 0);
    for (std::size_t origin = train_size; origin < raw.size(); ++origin) {
        const Series history(norm_full.begin(),
                             norm_full.begin() + static_cast<std::ptrdiff_t>(origin));
        const Series pred = predict_horizon(model, history, T);
        for (int n = 1; n <= T; ++n) {
            const std::size_t idx = origin + static_cast<std::size_t>(n) - 1;
            if (idx >= raw.size()) break;
            const double e = pred[static_cast<std::size_t>(n - 1)] - norm_full[idx];
            acc[static_cast<std::size_t>(n - 1)] += e * e;
            cnt[static_cast<std::size_t>(n - 1)] += 1;
        }
    }

    ForecastReport report;
    report.kind = kind;
    report.train_size = train_size;
    report.test_size = raw.size() - train_size;
    report.rmse_per_step.resize(static_cast<std::size_t>(T), 0.0);
    for (int n = 0; n < T; ++n) {
        if (cnt[n] == 0) throw std::invalid_argument("evaluate: test segment shorter than T");
        report.rmse_per_step[n] = std::sqrt(acc[n] / static_cast<double>(cnt[n]));
    }
    return report;
}

double gradient_check(const Series& normalized, const TrainConfig& cfg,
                      double epsilon, int sample_count, std::uint32_t seed) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("gradient_check: epsilon must be > 0");
    if (sample_count < 1) throw std::invalid_argument("gradient_check: sample_count must be >= 1");
    require_normalized(normalized, "gradient_check");
    if (normalized.size() < static_cast<std::size_t>(cfg.lookback) + 1) {
        throw std::invalid_argument("gradient_check: series too short for one lookback window");
    }

    LstmWeights w = init_weights(cfg.hidden, cfg.seed);
    const WindowSet ws{&normalized, cfg.lookback};
    LstmWeights grad = zeros_like(w);
    batch_loss(w, ws, &grad);

    auto params = flatten(w);
    auto grads = flatten(grad);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, params.size() - 1);
    double worst = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        const std::size_t idx = pick(rng);
        const double saved = *params[idx];
        *params[idx] = saved + epsilon;
        const double up = batch_loss(w, ws, nullptr);
        *params[idx] = saved - epsilon;
        const double down = batch_loss(w, ws, nullptr);
        *params[idx] = saved;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double analytic = *grads[idx];
        const double rel = std::abs(analytic - numeric) /
                           std::max(std::abs(analytic) + std::abs(numeric), 1e-6);
        worst = std::max(worst, rel);
    }
    return worst;
}

std::string save_model(const ForecastModel& model) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "name,value\n";
    os << "kind," << static_cast<int>(model.kind) << "\n";
    os << "period," << model.period << "\n";
    os << "lookback," << model.lookback << "\n";
    os << "hidden," << model.weights.hidden << "\n";
    os << "bounds_lo," << model.bounds.lo << "\n";
    os << "bounds_hi," << model.bounds.hi << "\n";
    if (model.kind == ForecastKind::kRecurrent) {
        LstmWeights copy = model.weights;
        auto params = flatten(copy);
        for (std::size_t i = 0; i < params.size(); ++i) {
            os << "p" << i << "," << *params[i] << "\n";
        }
    }
    return os.str();
}

ForecastModel load_model(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "name,value") {
        throw std::invalid_argument("load_model: missing 'name,value' header");
    }
    std::vector<std::pair<std::string, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("load_model: malformed row '" + line + "'");
        }
        rows.emplace_back(line.substr(0, comma), std::stod(line.substr(comma + 1)));
    }

    auto take = [&rows](const std::string& name) {
        for (const auto& [k, v] : rows) {
            if (k == name) return v;
        }
        throw std::invalid_argument("load_model: missing field " + name);
    };

    ForecastModel model;
    model.kind = static_cast<ForecastKind>(static_cast<int>(take("kind")));
    model.period = static_cast<int>(take("period"));
    model.lookback = static_cast<int>(take("lookback"));
    model.bounds.lo = take("bounds_lo");
    model.bounds.hi = take("bounds_hi");
    const int hidden = static_cast<int>(take("hidden"));
    if (model.kind == ForecastKind::kRecurrent) {
        model.weights = init_weights(hidden, 0);
        auto params = flatten(model.weights);
        for (std::size_t i = 0; i < params.size(); ++i) {
            *params[i] = take("p" + std::to_string(i));
        }
    }
    return model;
}

}  // namespace arces
