#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace kf {

/// Open interval of [0,1] carrying no mass; endpoints lie in the support.
struct Gap {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

enum class MeasureKind { Lebesgue, Cantor, CantorApprox, Mixture, Tabulated };

/// A non-atomic Borel probability measure on [0,1] with 0 and 1 in its
/// support, represented by an evaluatable distribution function.
///
/// Values are immutable after construction and cheap to copy (nested data is
/// shared). All member functions are const and safe to call concurrently.
class Measure {
public:
    /// Defaults to Lebesgue measure.
    Measure() = default;

    static Measure lebesgue();
    /// Self-similar measure on the middle-third Cantor set with cell weights
    /// w1, w2 (w1 + w2 = 1, both in (0,1)).
    static Measure cantor(double w1, double w2);
    /// Full-support approximation: the weight recursion is applied `level`
    /// times and the remaining mass spread uniformly over each cell.
    static Measure cantor_approx(double w1, double w2, int level);
    /// (base + epsilon * Lebesgue) / (1 + epsilon), epsilon > 0.
    static Measure mixture(Measure base, double epsilon);
    /// Distribution function given by samples (x, F(x)); interpolated
    /// piecewise linearly, validated for monotonicity and F(0)=0, F(1)=1.
    static Measure tabulated(std::vector<std::pair<double, double>> samples);

    MeasureKind kind() const { return kind_; }
    double weight1() const { return w1_; }
    double weight2() const { return w2_; }
    int level() const { return level_; }
    double epsilon() const { return epsilon_; }
    const Measure& base() const;
    const std::vector<std::pair<double, double>>& samples() const { return *samples_; }

    /// Digit-expansion truncation depth for self-similar distribution
    /// functions. Tail error is at most max(w1,w2)^depth.
    int eval_depth() const { return eval_depth_; }
    double tolerance() const { return tolerance_; }

    /// F(x). Throws ConfigError for x outside [0,1]. Exact at 0 and 1.
    double cdf(double x) const;

    /// inf{ x : F(x) >= p }, by bisection to `tolerance`.
    double quantile(double p) const;

    double mass(double a, double b) const { return cdf(b) - cdf(a); }

    /// All maximal open intervals of width >= resolution on which F is
    /// constant, disjoint and sorted, endpoints in the support.
    std::vector<Gap> support_gaps(double resolution) const;

    /// Image of the measure under x -> 1 - x.
    Measure reflected() const;

    /// Points that the quadrature mesh must contain so that every mesh cell
    /// is either mass-free or carries a self-similar (or smooth) piece of the
    /// measure: gap endpoints and self-similar cell boundaries down to width
    /// <= h, restricted to [a,b]. Appends to `out`, unsorted.
    void structure_points(double a, double b, double h, std::vector<double>& out) const;

    /// True when the measure has an absolutely continuous component, so
    /// quadrature cells inside support gaps of a singular part still need
    /// subdividing.
    bool has_density() const;

    std::string describe() const;

private:
    MeasureKind kind_ = MeasureKind::Lebesgue;
    double w1_ = 0.5, w2_ = 0.5;
    int level_ = 0;
    double epsilon_ = 0.0;
    std::shared_ptr<const Measure> base_;
    std::shared_ptr<const std::vector<std::pair<double, double>>> samples_;
    int eval_depth_ = 96;
    double tolerance_ = 1e-14;

    double cantor_like_cdf(double x, int depth) const;
};

/// sup_{x in [0,1]} |F_1(x) - F_2(x)| on a refinement-controlled grid that
/// contains the resolved gap endpoints of both measures.
double cdf_distance(const Measure& m1, const Measure& m2);

}  // namespace kf
