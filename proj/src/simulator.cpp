// Copyright 2026 The quasidet authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quasidet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quasidet/errors.hpp"

namespace quasidet {

namespace detail {

MomentAccumulator merge_pair(const MomentAccumulator &a, const MomentAccumulator &b) {
    MomentAccumulator out;
    out.count = a.count + b.count;
    out.sum = a.sum + b.sum;
    out.sumsq = a.sumsq + b.sumsq;
    return out;
}

MomentAccumulator merge_moments_tree(std::vector<MomentAccumulator> by_shard) {
    if (by_shard.empty()) {
        return MomentAccumulator{};
    }
    while (by_shard.size() > 1) {
        std::vector<MomentAccumulator> next;
        next.reserve((by_shard.size() + 1) / 2);
        for (std::size_t k = 0; k + 1 < by_shard.size(); k += 2) {
            next.push_back(merge_pair(by_shard[k], by_shard[k + 1]));
        }
        if (by_shard.size() % 2 == 1) {
            next.push_back(by_shard.back());
        }
        by_shard = std::move(next);
    }
    return by_shard.front();
}

} // namespace detail

namespace {

constexpr std::uint64_t kShardSize = 16384;
constexpr double kStarvedEps = 1e-12;
constexpr double kPi = 3.14159265358979323846;

double trapezoid(const std::vector<double> &ys, double h) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        acc += ys[j] + ys[j + 1];
    }
    return 0.5 * h * acc;
}

// Eigenspace amplitudes <f|P_k|i> and the pointer shifts g*a_k they weight.
struct ShiftedAmps {
    std::vector<cplx> amps;
    std::vector<double> eigenvalues;
    double max_abs_eigenvalue = 0.0;
};

ShiftedAmps eigen_amplitudes(const Observable &a, const PureState &i, const PureState &f) {
    if (a.dim() != i.dim() || i.dim() != f.dim()) {
        throw ShapeError("pointer simulation: dimensions disagree");
    }
    ShiftedAmps out;
    for (const Eigenspace &es : a.eigenspaces()) {
        out.amps.push_back(inner(f.ket(), apply(es.projector, i.ket())));
        out.eigenvalues.push_back(es.eigenvalue);
        out.max_abs_eigenvalue = std::max(out.max_abs_eigenvalue, std::abs(es.eigenvalue));
    }
    return out;
}

// Inverse-CDF sampler over a trapezoid-integrated grid density.
struct GridSampler {
    std::vector<double> xs;
    std::vector<double> cumulative; // unnormalized, cumulative[0] = 0
    double total = 0.0;
    double step = 0.0;

    double sample(double u) const {
        const double target = u * total;
        // last j with cumulative[j] <= target
        std::size_t lo = 0;
        std::size_t hi = cumulative.size() - 1;
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] <= target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double cell = cumulative[lo + 1] - cumulative[lo];
        if (cell <= 0.0) {
            return xs[lo];
        }
        return xs[lo] + step * ((target - cumulative[lo]) / cell);
    }
};

struct OutcomeModel {
    PointerDistribution dist;
    GridSampler sampler;
    bool starved = false;
};

OutcomeModel build_outcome_model(const Observable &a, const PureState &i, const PureState &f,
                                 const SimConfig &cfg) {
    const ShiftedAmps amps = eigen_amplitudes(a, i, f);
    const std::size_t n = static_cast<std::size_t>(cfg.grid.points);
    const double sigma = cfg.sigma;

    // Width in units of the readout coordinate; the g*a term keeps shifted
    // peaks (position) and the tilted envelope (momentum) on the grid.
    const double unit = (cfg.readout == Readout::position) ? sigma : 1.0 / (2.0 * sigma);
    const double half_width =
        (cfg.grid.half_width_in_sigmas + cfg.g * amps.max_abs_eigenvalue / sigma) * unit;

    OutcomeModel model;
    model.dist.grid.resize(n);
    model.dist.density.resize(n);
    const double step = 2.0 * half_width / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        model.dist.grid[j] = -half_width + step * static_cast<double>(j);
    }

    const double quarter_pow = std::pow(2.0 * kPi * unit * unit, -0.25);
    std::vector<double> raw(n, 0.0);
    if (cfg.readout == Readout::position) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = model.dist.grid[j];
            cplx psi = 0.0;
            for (std::size_t k = 0; k < amps.amps.size(); ++k) {
                const double dx = x - cfg.g * amps.eigenvalues[k];
                psi += amps.amps[k] * quarter_pow * std::exp(-dx * dx / (4.0 * sigma * sigma));
            }
            raw[j] = std::norm(psi);
        }
    } else {
        const double sp = unit; // momentum-space width of |envelope|^2
        for (std::size_t j = 0; j < n; ++j) {
            const double p = model.dist.grid[j];
            const double envelope = quarter_pow * std::exp(-p * p / (4.0 * sp * sp));
            cplx phase_sum = 0.0;
            for (std::size_t k = 0; k < amps.amps.size(); ++k) {
                phase_sum += amps.amps[k] * std::polar(1.0, -cfg.g * amps.eigenvalues[k] * p);
            }
            raw[j] = std::norm(envelope * phase_sum);
        }
    }

    model.dist.prob_f = trapezoid(raw, step);
    if (model.dist.prob_f < kStarvedEps) {
        model.starved = true;
        return model;
    }

    double mean_acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        mean_acc += model.dist.grid[j] * raw[j] + model.dist.grid[j + 1] * raw[j + 1];
    }
    model.dist.mean = 0.5 * step * mean_acc / model.dist.prob_f;
    for (std::size_t j = 0; j < n; ++j) {
        model.dist.density[j] = raw[j] / model.dist.prob_f;
    }

    model.sampler.xs = model.dist.grid;
    model.sampler.step = step;
    model.sampler.cumulative.resize(n);
    model.sampler.cumulative[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        model.sampler.cumulative[j] =
            model.sampler.cumulative[j - 1] + 0.5 * step * (raw[j - 1] + raw[j]);
    }
    model.sampler.total = model.sampler.cumulative.back();
    return model;
}

PointerRecord make_record(const std::string &label, const detail::MomentAccumulator &m,
                          std::uint64_t shots, double g) {
    PointerRecord rec;
    rec.final_label = label;
    rec.kept_shots = m.count;
    rec.post_selection_rate = static_cast<double>(m.count) / static_cast<double>(shots);
    if (m.count == 0) {
        rec.mean_reading = 0.0;
        rec.std_error = std::numeric_limits<double>::infinity();
        rec.rescaled_mean = 0.0;
        return rec;
    }
    rec.mean_reading = m.sum / static_cast<double>(m.count);
    if (m.count < 2) {
        rec.std_error = std::numeric_limits<double>::infinity();
    } else {
        const double nd = static_cast<double>(m.count);
        const double var = std::max(0.0, (m.sumsq - nd * rec.mean_reading * rec.mean_reading) /
                                             (nd - 1.0));
        rec.std_error = std::sqrt(var / nd);
    }
    rec.rescaled_mean = rec.mean_reading / g;
    return rec;
}

std::uint64_t shard_count(std::uint64_t shots) { return (shots + kShardSize - 1) / kShardSize; }

} // namespace

void SimConfig::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw ParameterError("sim.g must be positive and finite");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("sim.sigma must be positive and finite");
    }
    if (shots == 0) {
        throw ParameterError("sim.shots must be positive");
    }
    if (grid.points < 64) {
        throw ParameterError("sim.grid.points must be at least 64");
    }
    if (!(grid.half_width_in_sigmas > 0.0) || !std::isfinite(grid.half_width_in_sigmas)) {
        throw ParameterError("sim.grid.half_width_in_sigmas must be positive and finite");
    }
}

PointerDistribution conditional_pointer_distribution(const Observable &a, const PureState &i,
                                                     const PureState &f, const SimConfig &cfg) {
    cfg.validate();
    OutcomeModel model = build_outcome_model(a, i, f, cfg);
    if (model.starved) {
        throw PostSelectionStarvedError(
            "post-selection probability below 1e-12 for outcome |" +
            (f.label().empty() ? std::string("f") : f.label()) + ">");
    }
    return std::move(model.dist);
}

std::vector<PointerRecord> run_weak_measurement(const Observable &a, const PureState &i,
                                                const FinalBasis &basis, const SimConfig &cfg) {
    cfg.validate();
    const std::size_t nf = basis.size();
    std::vector<OutcomeModel> models;
    models.reserve(nf);
    double total_prob = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
        models.push_back(build_outcome_model(a, i, basis.state(f), cfg));
        total_prob += models.back().starved ? 0.0 : models.back().dist.prob_f;
    }
    if (total_prob < kStarvedEps) {
        throw PostSelectionStarvedError("every post-selection outcome is starved");
    }

    // outcome selection thresholds
    std::vector<double> cum(nf, 0.0);
    double acc = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
        acc += models[f].starved ? 0.0 : models[f].dist.prob_f;
        cum[f] = acc / total_prob;
    }

    const std::uint64_t shards = shard_count(cfg.shots);
    const SeededRng base(cfg.seed, cfg.stream);
    std::vector<std::vector<detail::MomentAccumulator>> stats(
        nf, std::vector<detail::MomentAccumulator>(shards));

    for (std::uint64_t s = 0; s < shards; ++s) {
        SeededRng rng = base.substream(s);
        const std::uint64_t begin = s * kShardSize;
        const std::uint64_t end = std::min(cfg.shots, begin + kShardSize);
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            const double u1 = rng.uniform();
            std::size_t f = 0;
            while (f + 1 < nf && u1 >= cum[f]) {
                ++f;
            }
            const double reading = models[f].sampler.sample(rng.uniform());
            detail::MomentAccumulator &m = stats[f][s];
            m.count += 1;
            m.sum += reading;
            m.sumsq += reading * reading;
        }
    }

    std::vector<PointerRecord> records;
    records.reserve(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        records.push_back(make_record(basis.state(f).label(),
                                      detail::merge_moments_tree(std::move(stats[f])), cfg.shots,
                                      cfg.g));
    }
    return records;
}

namespace {

// Bernoulli keep/discard run against a single outcome; statistically
// identical to the full run's marginal for that outcome.
PointerRecord run_single_outcome(const Observable &a, const PureState &i, const PureState &f,
                                 const SimConfig &cfg) {
    cfg.validate();
    OutcomeModel model = build_outcome_model(a, i, f, cfg);
    if (model.starved) {
        throw PostSelectionStarvedError(
            "post-selection probability below 1e-12 for outcome |" +
            (f.label().empty() ? std::string("f") : f.label()) + ">");
    }
    const std::uint64_t shards = shard_count(cfg.shots);
    const SeededRng base(cfg.seed, cfg.stream);
    std::vector<detail::MomentAccumulator> stats(shards);
    for (std::uint64_t s = 0; s < shards; ++s) {
        SeededRng rng = base.substream(s);
        const std::uint64_t begin = s * kShardSize;
        const std::uint64_t end = std::min(cfg.shots, begin + kShardSize);
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            if (rng.uniform() >= model.dist.prob_f) {
                continue;
            }
            const double reading = model.sampler.sample(rng.uniform());
            stats[s].count += 1;
            stats[s].sum += reading;
            stats[s].sumsq += reading * reading;
        }
    }
    return make_record(f.label(), detail::merge_moments_tree(std::move(stats)), cfg.shots, cfg.g);
}

} // namespace

Extrapolation extrapolate_weak_value(const Observable &a, const PureState &i, const PureState &f,
                                     const SimConfig &base_cfg,
                                     const std::vector<double> &couplings) {
    if (couplings.size() < 3) {
        throw ParameterError("extrapolation needs at least 3 couplings");
    }
    for (std::size_t j = 0; j < couplings.size(); ++j) {
        if (!(couplings[j] > 0.0) || couplings[j] > 0.5 * base_cfg.sigma) {
            throw ParameterError("couplings must lie in (0, sigma/2]");
        }
        for (std::size_t k = j + 1; k < couplings.size(); ++k) {
            if (couplings[j] == couplings[k]) {
                throw ParameterError("couplings must be distinct");
            }
        }
    }

    Extrapolation out;
    out.couplings = couplings;
    for (std::size_t j = 0; j < couplings.size(); ++j) {
        SimConfig cfg = base_cfg;
        cfg.g = couplings[j];
        cfg.stream = mix64(base_cfg.stream, j + 1);
        out.records.push_back(run_single_outcome(a, i, f, cfg));
    }

    // WLS normal equations for y = w + c g^2, weights 1/se^2.
    double s00 = 0.0, s01 = 0.0, s11 = 0.0, b0 = 0.0, b1 = 0.0;
    std::size_t usable = 0;
    for (std::size_t j = 0; j < couplings.size(); ++j) {
        const PointerRecord &rec = out.records[j];
        const double se = rec.std_error / couplings[j];
        if (rec.kept_shots < 2 || !(se > 0.0) || !std::isfinite(se)) {
            continue;
        }
        ++usable;
        const double wt = 1.0 / (se * se);
        const double g2 = couplings[j] * couplings[j];
        s00 += wt;
        s01 += wt * g2;
        s11 += wt * g2 * g2;
        b0 += wt * rec.rescaled_mean;
        b1 += wt * g2 * rec.rescaled_mean;
    }
    if (usable < 3) {
        throw PostSelectionStarvedError(
            "fewer than 3 couplings produced enough kept shots to fit");
    }
    const double det = s00 * s11 - s01 * s01;
    if (!(det > 0.0)) {
        throw Error("extrapolation fit is singular");
    }
    out.estimate = (s11 * b0 - s01 * b1) / det;
    out.curvature = (s00 * b1 - s01 * b0) / det;
    out.ci = std::sqrt(s11 / det);
    return out;
}

} // namespace quasidet
