#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "distrank/matrix.hpp"

namespace distrank {

/// k_true x k_pred contingency counts; rows are true classes.
struct ConfusionMatrix {
    std::size_t k_true = 0, k_pred = 0;
    std::vector<std::size_t> counts;  // row-major

    std::size_t at(std::size_t t, std::size_t p) const { return counts[t * k_pred + p]; }

    static ConfusionMatrix from_labels(const LabelVector& ct, const LabelVector& cp) {
        if (ct.size() != cp.size())
            throw std::invalid_argument("confusion matrix: label length mismatch");
        ConfusionMatrix c;
        c.k_true = ct.k;
        c.k_pred = cp.k;
        c.counts.assign(c.k_true * c.k_pred, 0);
        for (std::size_t i = 0; i < ct.size(); ++i) ++c.counts[ct[i] * c.k_pred + cp[i]];
        return c;
    }
};

namespace detail {

/// Hungarian algorithm (potentials formulation) on a square cost matrix,
/// minimizing. Returns row -> column assignment.
inline std::vector<std::size_t> hungarian_min(const std::vector<std::vector<double>>& cost) {
    const std::size_t dim = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based internals; p[j] = row matched to column j
    std::vector<double> u(dim + 1, 0.0), v(dim + 1, 0.0);
    std::vector<std::size_t> p(dim + 1, 0), way(dim + 1, 0);
    for (std::size_t i = 1; i <= dim; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(dim + 1, inf);
        std::vector<char> used(dim + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= dim; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= dim; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> assignment(dim, 0);
    for (std::size_t j = 1; j <= dim; ++j) assignment[p[j] - 1] = j - 1;
    return assignment;
}

}  // namespace detail

/// Optimal one-to-one relabeling of predicted clusters onto true classes.
struct LabelAlignment {
    /// predicted label -> true class, or -1 when k_pred > k_true left it
    /// without a true image.
    std::vector<int> mapping;
    ConfusionMatrix confusion;
    std::size_t matched_count = 0;
};

/// Solves the assignment exactly on the confusion matrix, maximizing the
/// total matched count.
inline LabelAlignment align_labels(const LabelVector& ct, const LabelVector& cp) {
    LabelAlignment out;
    out.confusion = ConfusionMatrix::from_labels(ct, cp);
    const std::size_t kt = out.confusion.k_true, kp = out.confusion.k_pred;
    const std::size_t dim = std::max(kt, kp);

    // pad to square; maximize matches == minimize negated counts
    std::vector<std::vector<double>> cost(dim, std::vector<double>(dim, 0.0));
    for (std::size_t pl = 0; pl < kp; ++pl)
        for (std::size_t t = 0; t < kt; ++t)
            cost[pl][t] = -static_cast<double>(out.confusion.at(t, pl));

    const auto assignment = detail::hungarian_min(cost);
    out.mapping.assign(kp, -1);
    for (std::size_t pl = 0; pl < kp; ++pl) {
        const std::size_t t = assignment[pl];
        if (t < kt) {
            out.mapping[pl] = static_cast<int>(t);
            out.matched_count += out.confusion.at(t, pl);
        }
    }
    return out;
}

/// Rewrites predicted labels through the alignment; predicted labels without
/// a true image all collapse into the dedicated class id k_true.
inline std::vector<int> apply_alignment(const LabelVector& cp, const LabelAlignment& a,
                                        int k_true) {
    std::vector<int> out(cp.size());
    for (std::size_t i = 0; i < cp.size(); ++i) {
        const int image = a.mapping[cp[i]];
        out[i] = image >= 0 ? image : k_true;
    }
    return out;
}

/// Matched fraction over aligned labels.
inline double accuracy(const LabelVector& ct, std::span<const int> cp_aligned) {
    if (ct.size() != cp_aligned.size()) throw std::invalid_argument("accuracy: length mismatch");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ct.size(); ++i)
        if (ct[i] == cp_aligned[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(ct.size());
}

enum class NmiNorm { arithmetic, min, max, geometric };

/// Normalized mutual information with plug-in probabilities and natural log,
/// computed as H(a) + H(b) - H(a,b) over the chosen normalizer (arithmetic
/// mean of the entropies by default). Alignment-free. A single-class vector
/// on either side has zero entropy; the convention is to return 0.
inline double nmi(const LabelVector& a, const LabelVector& b,
                  NmiNorm norm = NmiNorm::arithmetic) {
    if (a.size() != b.size()) throw std::invalid_argument("nmi: length mismatch");
    const auto c = ConfusionMatrix::from_labels(a, b);
    const double n = static_cast<double>(a.size());

    auto entropy_term = [n](std::size_t count) {
        if (count == 0) return 0.0;
        const double q = static_cast<double>(count) / n;
        return -q * std::log(q);
    };

    double ha = 0.0, hb = 0.0, hab = 0.0;
    std::vector<std::size_t> row(c.k_true, 0), col(c.k_pred, 0);
    for (std::size_t t = 0; t < c.k_true; ++t)
        for (std::size_t p = 0; p < c.k_pred; ++p) {
            row[t] += c.at(t, p);
            col[p] += c.at(t, p);
            hab += entropy_term(c.at(t, p));
        }
    for (std::size_t t = 0; t < c.k_true; ++t) ha += entropy_term(row[t]);
    for (std::size_t p = 0; p < c.k_pred; ++p) hb += entropy_term(col[p]);

    if (ha == 0.0 || hb == 0.0) return 0.0;
    const double mi = std::max(0.0, ha + hb - hab);
    double denom = 0.0;
    switch (norm) {
        case NmiNorm::arithmetic: denom = 0.5 * (ha + hb); break;
        case NmiNorm::min: denom = std::min(ha, hb); break;
        case NmiNorm::max: denom = std::max(ha, hb); break;
        case NmiNorm::geometric: denom = std::sqrt(ha * hb); break;
    }
    return std::clamp(mi / denom, 0.0, 1.0);
}

/// Weighted F1 over aligned labels: per-class one-vs-rest precision and
/// recall, standard harmonic-mean F1, weighted by true class sizes. The
/// paper_formula flag switches to the printed PR/(P+R) variant (half the
/// standard value).
inline double weighted_f1(const LabelVector& ct, std::span<const int> cp_aligned,
                          bool paper_formula = false) {
    if (ct.size() != cp_aligned.size())
        throw std::invalid_argument("weighted_f1: length mismatch");
    const double n = static_cast<double>(ct.size());
    double total = 0.0;
    for (int c = 0; c < ct.k; ++c) {
        std::size_t tp = 0, fp = 0, fn = 0, support = 0;
        for (std::size_t i = 0; i < ct.size(); ++i) {
            const bool is_true = ct[i] == c;
            const bool is_pred = cp_aligned[i] == c;
            support += is_true;
            tp += is_true && is_pred;
            fp += !is_true && is_pred;
            fn += is_true && !is_pred;
        }
        const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
        const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
        double f1 = 0.0;
        if (precision + recall > 0.0) {
            f1 = precision * recall / (precision + recall);
            if (!paper_formula) f1 *= 2.0;
        }
        total += (static_cast<double>(support) / n) * f1;
    }
    return total;
}

/// The two halves of the imbalanced evaluation protocol. Clustering happens
/// once on the whole dataset; only the evaluation is split.
struct TwoStepResult {
    double step1_f1 = 0.0;   // major vs merged minors, weighted F1
    double step2_nmi = 0.0;  // restricted to true-minor observations
    double step2_acc = 0.0;
};

/// Step I binarizes both labelings (major class vs everything else), with
/// the predicted "major" taken as the alignment image of the true major
/// class. Step II restricts to observations whose TRUE class is minor,
/// realigns within the restriction and evaluates NMI and ACC there.
inline TwoStepResult two_step_evaluate(const LabelVector& ct, const LabelVector& cp,
                                       int major_class, bool paper_formula = false,
                                       NmiNorm norm = NmiNorm::arithmetic) {
    if (ct.size() != cp.size())
        throw std::invalid_argument("two_step_evaluate: length mismatch");
    if (major_class < 0 || major_class >= ct.k)
        throw std::invalid_argument("two_step_evaluate: major class absent from true labels");
    if (ct.k < 2) throw DataError("two_step_evaluate: no minor observations");

    const auto alignment = align_labels(ct, cp);
    int major_pred = -1;
    for (std::size_t pl = 0; pl < alignment.mapping.size(); ++pl)
        if (alignment.mapping[pl] == major_class) major_pred = static_cast<int>(pl);

    TwoStepResult result;

    // step I: major vs merged rest
    std::vector<int> bt(ct.size()), bp(ct.size());
    for (std::size_t i = 0; i < ct.size(); ++i) {
        bt[i] = ct[i] == major_class ? 0 : 1;
        bp[i] = cp[i] == major_pred ? 0 : 1;
    }
    result.step1_f1 = weighted_f1(LabelVector(std::move(bt)), bp, paper_formula);

    // step II: true-minor restriction
    std::vector<int> minor_true, minor_pred;
    for (std::size_t i = 0; i < ct.size(); ++i) {
        if (ct[i] == major_class) continue;
        minor_true.push_back(ct[i]);
        minor_pred.push_back(cp[i]);
    }
    const LabelVector rt = compact_labels(minor_true);
    const LabelVector rp = compact_labels(minor_pred);
    result.step2_nmi = nmi(rt, rp, norm);
    const auto restricted_alignment = align_labels(rt, rp);
    result.step2_acc = accuracy(rt, apply_alignment(rp, restricted_alignment, rt.k));
    return result;
}

}  // namespace distrank
