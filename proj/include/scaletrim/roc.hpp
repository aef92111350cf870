#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scaletrim {

// Counts at one cutoff. Prediction rule: positive iff score >= cutoff.
struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;

    long long positives() const { return tp + fn; }
    long long negatives() const { return fp + tn; }
    long long total() const { return tp + fp + fn + tn; }

    double tpr() const { return positives() > 0 ? static_cast<double>(tp) / positives() : 0.0; }
    double fpr() const { return negatives() > 0 ? static_cast<double>(fp) / negatives() : 0.0; }
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// One point per distinct score value plus the (0,0) origin. points[i] was
// produced by thresholds[i]; thresholds[0] is +infinity (nothing predicted
// positive). The last point is always (1,1): every score passes the minimum
// cutoff under the >= rule. Ties collapse into a single diagonal step.
struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
};

// Throws ValidationError on length mismatch, empty input, a label outside
// {0,1}, or a non-finite score; DegenerateLabels when only one class occurs.
void validate_scored_labels(std::span<const double> scores, std::span<const int> labels);

ConfusionMatrix confusion_at_cutoff(std::span<const double> scores,
                                    std::span<const int> labels,
                                    double cutoff);

RocCurve roc_points(std::span<const double> scores, std::span<const int> labels);

// Trapezoidal area under the curve: sum of (x_k - x_{k-1}) * (y_k + y_{k-1}) / 2.
double auc_trapezoid(const RocCurve& curve);

// Rank-based AUC (Mann-Whitney): probability that a random positive outscores
// a random negative, ties counted half. O(M log M) via average ranks; agrees
// with auc_trapezoid(roc_points(...)) on every input.
double auc_rank(std::span<const double> scores, std::span<const int> labels);

// G1 = 2*AUC - 1.
double gini_from_auc(double auc);

} // namespace scaletrim
