#include "kf/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "kf/errors.hpp"

namespace kf {

namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kTwoThirds = 2.0 / 3.0;

void check_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
    }
}

}  // namespace

Measure Measure::lebesgue() {
    Measure m;
    m.kind_ = MeasureKind::Lebesgue;
    return m;
}

Measure Measure::cantor(double w1, double w2) {
    if (!(w1 > 0.0 && w1 < 1.0 && w2 > 0.0 && w2 < 1.0) || std::abs(w1 + w2 - 1.0) > 1e-12) {
        throw ConfigError("cantor weights must lie in (0,1) and sum to 1");
    }
    Measure m;
    m.kind_ = MeasureKind::Cantor;
    m.w1_ = w1;
    m.w2_ = w2;
    return m;
}

Measure Measure::cantor_approx(double w1, double w2, int level) {
    Measure m = cantor(w1, w2);
    if (level < 0) throw ConfigError("cantor_approx level must be >= 0");
    m.kind_ = MeasureKind::CantorApprox;
    m.level_ = level;
    return m;
}

Measure Measure::mixture(Measure base, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("mixture epsilon must be > 0");
    Measure m;
    m.kind_ = MeasureKind::Mixture;
    m.epsilon_ = epsilon;
    m.base_ = std::make_shared<Measure>(std::move(base));
    return m;
}

Measure Measure::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ConfigError("tabulated measure needs at least 2 samples");
    std::sort(samples.begin(), samples.end());
    if (std::abs(samples.front().first) > 1e-9 || std::abs(samples.front().second) > 1e-9 ||
        std::abs(samples.back().first - 1.0) > 1e-9 || std::abs(samples.back().second - 1.0) > 1e-9) {
        throw ConfigError("tabulated samples must start at (0,0) and end at (1,1)");
    }
    samples.front() = {0.0, 0.0};
    samples.back() = {1.0, 1.0};
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].first <= samples[i - 1].first) {
            throw ConfigError("tabulated sample points must be strictly ascending");
        }
        if (samples[i].second < samples[i - 1].second - 1e-12) {
            throw ConfigError("tabulated distribution function must be nondecreasing");
        }
    }
    Measure m;
    m.kind_ = MeasureKind::Tabulated;
    m.samples_ = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(samples));
    return m;
}

const Measure& Measure::base() const {
    if (!base_) throw ConfigError("measure has no base component");
    return *base_;
}

double Measure::cantor_like_cdf(double x, int depth) const {
    double acc = 0.0;
    double scale = 1.0;
    for (int d = 0; d < depth; ++d) {
        if (x < kThird) {
            x = std::min(3.0 * x, 1.0);
            scale *= w1_;
        } else if (x > kTwoThirds) {
            acc += scale * w1_;
            x = std::clamp(3.0 * x - 2.0, 0.0, 1.0);
            scale *= w2_;
        } else {
            return acc + scale * w1_;
        }
    }
    return acc + scale * x;
}

double Measure::cdf(double x) const {
    check_unit_interval(x, "cdf argument");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    switch (kind_) {
        case MeasureKind::Lebesgue:
            return x;
        case MeasureKind::Cantor:
            return cantor_like_cdf(x, eval_depth_);
        case MeasureKind::CantorApprox:
            return cantor_like_cdf(x, level_);
        case MeasureKind::Mixture:
            return (base_->cdf(x) + epsilon_ * x) / (1.0 + epsilon_);
        case MeasureKind::Tabulated: {
            const auto& s = *samples_;
            auto it = std::upper_bound(s.begin(), s.end(), std::make_pair(x, 2.0));
            std::size_t i = static_cast<std::size_t>(it - s.begin());
            // x < 1 here, so i is in [1, size-1]
            double t = (x - s[i - 1].first) / (s[i].first - s[i - 1].first);
            return s[i - 1].second + t * (s[i].second - s[i - 1].second);
        }
    }
    return x;
}

double Measure::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("quantile argument must lie in [0,1], got " + std::to_string(p));
    }
    if (p <= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > tolerance_; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) >= p) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

namespace {

void cantor_gaps(double lo, double width, int levels_left, double resolution, std::vector<Gap>& out) {
    if (levels_left <= 0) return;
    double child = width * kThird;
    if (child < resolution) return;
    cantor_gaps(lo, child, levels_left - 1, resolution, out);
    out.push_back({lo + child, lo + 2.0 * child});
    cantor_gaps(lo + 2.0 * child, child, levels_left - 1, resolution, out);
}

}  // namespace

std::vector<Gap> Measure::support_gaps(double resolution) const {
    if (!(resolution > 0.0)) throw ConfigError("support_gaps resolution must be > 0");
    std::vector<Gap> out;
    switch (kind_) {
        case MeasureKind::Lebesgue:
        case MeasureKind::Mixture:
            break;
        case MeasureKind::Cantor:
            cantor_gaps(0.0, 1.0, eval_depth_, resolution, out);
            break;
        case MeasureKind::CantorApprox:
            cantor_gaps(0.0, 1.0, level_, resolution, out);
            break;
        case MeasureKind::Tabulated: {
            const auto& s = *samples_;
            std::size_t i = 0;
            while (i + 1 < s.size()) {
                if (s[i + 1].second - s[i].second <= tolerance_) {
                    std::size_t j = i + 1;
                    while (j + 1 < s.size() && s[j + 1].second - s[j].second <= tolerance_) ++j;
                    if (s[j].first - s[i].first >= resolution) {
                        out.push_back({s[i].first, s[j].first});
                    }
                    i = j;
                } else {
                    ++i;
                }
            }
            break;
        }
    }
    return out;
}

Measure Measure::reflected() const {
    switch (kind_) {
        case MeasureKind::Lebesgue:
            return lebesgue();
        case MeasureKind::Cantor:
            return cantor(w2_, w1_);
        case MeasureKind::CantorApprox:
            return cantor_approx(w2_, w1_, level_);
        case MeasureKind::Mixture:
            return mixture(base_->reflected(), epsilon_);
        case MeasureKind::Tabulated: {
            std::vector<std::pair<double, double>> rev;
            rev.reserve(samples_->size());
            for (auto it = samples_->rbegin(); it != samples_->rend(); ++it) {
                rev.emplace_back(1.0 - it->first, 1.0 - it->second);
            }
            return tabulated(std::move(rev));
        }
    }
    return lebesgue();
}

namespace {

void cantor_cells(double lo, double width, int levels_left, double h, std::vector<double>& out) {
    if (width <= h || levels_left <= 0) {
        out.push_back(lo);
        out.push_back(lo + width);
        return;
    }
    double child = width * kThird;
    cantor_cells(lo, child, levels_left - 1, h, out);
    cantor_cells(lo + 2.0 * child, child, levels_left - 1, h, out);
}

}  // namespace

void Measure::structure_points(double a, double b, double h, std::vector<double>& out) const {
    std::vector<double> pts;
    switch (kind_) {
        case MeasureKind::Lebesgue:
            return;
        case MeasureKind::Cantor:
            cantor_cells(0.0, 1.0, eval_depth_, h, pts);
            break;
        case MeasureKind::CantorApprox:
            cantor_cells(0.0, 1.0, level_, h, pts);
            break;
        case MeasureKind::Mixture:
            base_->structure_points(a, b, h, out);
            return;
        case MeasureKind::Tabulated:
            for (const auto& [x, f] : *samples_) pts.push_back(x);
            break;
    }
    for (double x : pts) {
        if (x >= a && x <= b) out.push_back(x);
    }
}

bool Measure::has_density() const {
    switch (kind_) {
        case MeasureKind::Lebesgue:
        case MeasureKind::CantorApprox:
        case MeasureKind::Mixture:
        case MeasureKind::Tabulated:
            return true;
        case MeasureKind::Cantor:
            return false;
    }
    return true;
}

std::string Measure::describe() const {
    switch (kind_) {
        case MeasureKind::Lebesgue:
            return "lebesgue";
        case MeasureKind::Cantor: {
            std::ostringstream os;
            os << "cantor(" << w1_ << "," << w2_ << ")";
            return os.str();
        }
        case MeasureKind::CantorApprox: {
            std::ostringstream os;
            os << "cantor_approx(" << w1_ << "," << w2_ << ";level=" << level_ << ")";
            return os.str();
        }
        case MeasureKind::Mixture: {
            std::ostringstream os;
            os << "mixture(" << base_->describe() << ";eps=" << epsilon_ << ")";
            return os.str();
        }
        case MeasureKind::Tabulated: {
            std::ostringstream os;
            os << "tabulated(" << samples_->size() << " samples)";
            return os.str();
        }
    }
    return "measure";
}

double cdf_distance(const Measure& m1, const Measure& m2) {
    std::vector<double> pts;
    constexpr std::size_t kUniform = 4097;
    pts.reserve(kUniform + 4096);
    for (std::size_t i = 0; i < kUniform; ++i) {
        pts.push_back(static_cast<double>(i) / (kUniform - 1));
    }
    for (const Measure* m : {&m1, &m2}) {
        for (const Gap& g : m->support_gaps(1e-5)) {
            pts.push_back(g.lo);
            pts.push_back(g.hi);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double best = 0.0, arg = 0.0;
    for (double x : pts) {
        double d = std::abs(m1.cdf(x) - m2.cdf(x));
        if (d > best) {
            best = d;
            arg = x;
        }
    }
    // Local refinement around the coarse maximiser.
    double window = 2.0 / (kUniform - 1);
    for (int round = 0; round < 6; ++round) {
        double lo = std::max(0.0, arg - window), hi = std::min(1.0, arg + window);
        for (int i = 0; i <= 64; ++i) {
            double x = lo + (hi - lo) * i / 64.0;
            double d = std::abs(m1.cdf(x) - m2.cdf(x));
            if (d > best) {
                best = d;
                arg = x;
            }
        }
        window /= 16.0;
    }
    return best;
}

}  // namespace kf
