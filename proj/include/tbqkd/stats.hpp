#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tbqkd/errors.hpp"
#include "tbqkd/qstate.hpp"

namespace tbqkd {

/// Coincidence counts for the four +/- outcome combinations of one basis pair.
struct FourfoldCounts {
    std::uint64_t pp = 0;
    std::uint64_t pm = 0;
    std::uint64_t mp = 0;
    std::uint64_t mm = 0;

    std::uint64_t total() const { return pp + pm + mp + mm; }

    void add(int alice_outcome, int bob_outcome, std::uint64_t n = 1) {
        if (alice_outcome > 0)
            (bob_outcome > 0 ? pp : pm) += n;
        else
            (bob_outcome > 0 ? mp : mm) += n;
    }
};

/// Basis-sorted coincidence counts for one analysis block.
struct BasisPairCounts {
    std::array<FourfoldCounts, 6> counts{};
    double block_start_s = 0.0;
    double block_duration_s = 1.0;
    std::uint64_t unclassified = 0;  // in-window coincidences outside every slot

    FourfoldCounts& operator[](BasisPair p) { return counts[pair_index(p)]; }
    const FourfoldCounts& operator[](BasisPair p) const { return counts[pair_index(p)]; }

    std::uint64_t total_classified() const {
        std::uint64_t t = 0;
        for (const auto& c : counts) t += c.total();
        return t;
    }

    BasisPairCounts& operator+=(const BasisPairCounts& other) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            counts[i].pp += other.counts[i].pp;
            counts[i].pm += other.counts[i].pm;
            counts[i].mp += other.counts[i].mp;
            counts[i].mm += other.counts[i].mm;
        }
        unclassified += other.unclassified;
        block_duration_s += other.block_duration_s;
        return *this;
    }
};

struct ValueWithError {
    double value = 0.0;
    double stderror = 0.0;
};

/// Correlation estimate (n++ + n-- - n+- - n-+)/total with its first-order
/// Poissonian standard error sqrt((1 - E^2)/total).
inline ValueWithError expectation_from_counts(const FourfoldCounts& c) {
    const std::uint64_t n = c.total();
    if (n == 0) throw EmptyBlockError("expectation_from_counts: no counts in block");
    const double total = static_cast<double>(n);
    const double e =
        (static_cast<double>(c.pp) + static_cast<double>(c.mm) -
         static_cast<double>(c.pm) - static_cast<double>(c.mp)) /
        total;
    const double var = std::max(0.0, 1.0 - e * e) / total;
    return {e, std::sqrt(var)};
}

/// Fraction of anti-correlated outcomes, with binomial standard error.
inline ValueWithError qber_from_counts(const FourfoldCounts& c) {
    const std::uint64_t n = c.total();
    if (n == 0) throw EmptyBlockError("qber_from_counts: no counts in block");
    const double total = static_cast<double>(n);
    const double q = (static_cast<double>(c.pm) + static_cast<double>(c.mp)) / total;
    return {q, std::sqrt(std::max(0.0, q * (1.0 - q)) / total)};
}

/// Channel-quality parameter sqrt(e_xx^2 + e_yx^2). Statistical noise can push
/// the raw value above 1; it is clipped (the key-rate bound needs C <= 1) and
/// the clip is flagged rather than treated as an error.
struct CParam {
    double value = 0.0;
    bool clipped = false;
};

inline CParam c_parameter(double e_xx, double e_yx) {
    const double raw = std::hypot(e_xx, e_yx);
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

/// Per-block channel estimates derived from basis-sorted counts.
struct BlockEstimate {
    double block_start_s = 0.0;
    ValueWithError e_xx;
    ValueWithError e_yx;
    double c64 = 0.0;
    double c64_stderror = 0.0;
    bool c64_clipped = false;
    ValueWithError qber_z;
    double qber_x = 0.0;          // (1 - c64) / 2 by definition
    double qber_x_stderror = 0.0; // c64 error / 2
    double phase = 0.0;           // atan2(e_yx, e_xx), wrapped to (-pi, pi]
    double phase_unwrapped = 0.0; // filled by time_series
    double phase_stderror = 0.0;
    std::uint64_t n_total = 0;    // classified coincidences, all six pairs
    std::uint64_t n_keymap = 0;   // Z@Z coincidences
    std::uint64_t m_xx = 0;
    std::uint64_t m_yx = 0;
    std::uint64_t unclassified = 0;
};

/// Computes the full per-block estimate. Requires non-empty X@X, Y@X and Z@Z
/// fourfolds; the thrown error names the first deficient pair.
inline BlockEstimate block_estimate(const BasisPairCounts& counts) {
    for (BasisPair required : {kXX, kYX, kZZ}) {
        if (counts[required].total() == 0)
            throw EmptyBlockError("block_estimate: no counts in basis pair " +
                                  to_string(required));
    }
    BlockEstimate est;
    est.block_start_s = counts.block_start_s;
    est.e_xx = expectation_from_counts(counts[kXX]);
    est.e_yx = expectation_from_counts(counts[kYX]);
    est.qber_z = qber_from_counts(counts[kZZ]);

    const CParam c = c_parameter(est.e_xx.value, est.e_yx.value);
    est.c64 = c.value;
    est.c64_clipped = c.clipped;
    const double raw_c = std::hypot(est.e_xx.value, est.e_yx.value);
    if (raw_c > 0.0) {
        est.c64_stderror = std::sqrt(est.e_xx.value * est.e_xx.value *
                                         est.e_xx.stderror * est.e_xx.stderror +
                                     est.e_yx.value * est.e_yx.value *
                                         est.e_yx.stderror * est.e_yx.stderror) /
                           raw_c;
        est.phase_stderror =
            std::sqrt(est.e_yx.value * est.e_yx.value * est.e_xx.stderror *
                          est.e_xx.stderror +
                      est.e_xx.value * est.e_xx.value * est.e_yx.stderror *
                          est.e_yx.stderror) /
            (raw_c * raw_c);
    } else {
        est.c64_stderror = std::max(est.e_xx.stderror, est.e_yx.stderror);
        est.phase_stderror = std::numeric_limits<double>::infinity();
    }

    est.qber_x = (1.0 - est.c64) / 2.0;
    est.qber_x_stderror = est.c64_stderror / 2.0;
    est.phase = std::atan2(est.e_yx.value, est.e_xx.value);
    est.phase_unwrapped = est.phase;

    est.n_total = counts.total_classified();
    est.n_keymap = counts[kZZ].total();
    est.m_xx = counts[kXX].total();
    est.m_yx = counts[kYX].total();
    est.unclassified = counts.unclassified;
    return est;
}

/// One entry of an analysis time series: either an estimate or a gap marker
/// recording why the block could not be estimated.
struct BlockResult {
    std::optional<BlockEstimate> estimate;
    std::string gap_reason;

    bool ok() const { return estimate.has_value(); }
};

/// Maps blocks to estimates, tolerating empty blocks (emitted as gap markers),
/// then unwraps the phase column by nearest-branch continuation: each phase is
/// shifted by the multiple of 2*pi that brings it closest to the previous
/// unwrapped value. Gaps carry the reference across.
inline std::vector<BlockResult> time_series(const std::vector<BasisPairCounts>& blocks) {
    std::vector<BlockResult> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        BlockResult r;
        try {
            r.estimate = block_estimate(b);
        } catch (const EmptyBlockError& e) {
            r.gap_reason = e.what();
        }
        out.push_back(std::move(r));
    }
    bool have_ref = false;
    double ref = 0.0;
    for (auto& r : out) {
        if (!r.estimate) continue;
        if (have_ref) {
            const double k =
                std::round((ref - r.estimate->phase) / (2.0 * kPi));
            r.estimate->phase_unwrapped = r.estimate->phase + 2.0 * kPi * k;
        }
        ref = r.estimate->phase_unwrapped;
        have_ref = true;
    }
    return out;
}

/// Sums per-block counts into one pooled block (start taken from the first).
inline BasisPairCounts pool_counts(const std::vector<BasisPairCounts>& blocks) {
    BasisPairCounts pooled;
    if (blocks.empty()) return pooled;
    pooled.block_start_s = blocks.front().block_start_s;
    pooled.block_duration_s = 0.0;
    for (const auto& b : blocks) pooled += b;
    return pooled;
}

}  // namespace tbqkd
