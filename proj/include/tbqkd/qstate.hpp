#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace tbqkd {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class AliceBasis : std::uint8_t { Z = 0, X = 1, Y = 2 };
enum class BobBasis : std::uint8_t { Z = 0, X = 1 };

/// One of the six (Alice, Bob) measurement-basis combinations. Z@Z is the
/// key-map pair; X@X and Y@X feed the channel-quality estimate.
struct BasisPair {
    AliceBasis alice;
    BobBasis bob;

    friend constexpr bool operator==(BasisPair a, BasisPair b) {
        return a.alice == b.alice && a.bob == b.bob;
    }
};

inline constexpr BasisPair kZZ{AliceBasis::Z, BobBasis::Z};
inline constexpr BasisPair kXX{AliceBasis::X, BobBasis::X};
inline constexpr BasisPair kYX{AliceBasis::Y, BobBasis::X};

inline constexpr std::array<BasisPair, 6> kAllBasisPairs{{
    {AliceBasis::Z, BobBasis::Z},
    {AliceBasis::Z, BobBasis::X},
    {AliceBasis::X, BobBasis::Z},
    {AliceBasis::X, BobBasis::X},
    {AliceBasis::Y, BobBasis::Z},
    {AliceBasis::Y, BobBasis::X},
}};

/// Dense index 0..5 of a basis pair, used for count tables.
inline constexpr std::size_t pair_index(BasisPair p) {
    return static_cast<std::size_t>(p.alice) * 2 + static_cast<std::size_t>(p.bob);
}

inline std::string to_string(AliceBasis b) {
    switch (b) {
        case AliceBasis::Z: return "Z";
        case AliceBasis::X: return "X";
        default: return "Y";
    }
}

inline std::string to_string(BobBasis b) { return b == BobBasis::Z ? "Z" : "X"; }

inline std::string to_string(BasisPair p) {
    return to_string(p.alice) + "x" + to_string(p.bob);
}

/// The shared polarization (x) time-bin qubit pair.
///
/// `phase` is the single relative phase between the two interferometers; the
/// source's own random phase is absorbed into it. The two visibilities model
/// independently observed error levels: `visibility_z` scales the
/// computational-basis correlation, `visibility_xy` scales both superposition
/// correlations. All observables are 2*pi periodic in `phase`.
struct HybridPairState {
    double phase = 0.0;
    double visibility_z = 1.0;
    double visibility_xy = 1.0;

    void validate() const {
        if (!(visibility_z >= 0.0 && visibility_z <= 1.0))
            throw std::invalid_argument("visibility_z outside [0,1]");
        if (!(visibility_xy >= 0.0 && visibility_xy <= 1.0))
            throw std::invalid_argument("visibility_xy outside [0,1]");
        if (!std::isfinite(phase)) throw std::invalid_argument("phase not finite");
    }
};

/// Two-party correlation E(pair) in [-1, 1].
///
/// Sign convention: with the pair state (|H,E> + e^{i phase} |V,L>)/sqrt(2)
/// and literal Pauli X, Y on the {H,V} and {E,L} qubits,
///   Z@Z -> visibility_z,  X@X -> visibility_xy * cos(phase),
///   Y@X -> visibility_xy * sin(phase),  mismatched pairs -> 0.
inline double expectation(const HybridPairState& s, BasisPair p) {
    if (p == kZZ) return s.visibility_z;
    if (p == kXX) return s.visibility_xy * std::cos(s.phase);
    if (p == kYX) return s.visibility_xy * std::sin(s.phase);
    return 0.0;
}

/// Joint probabilities of the four +/- outcome combinations for one pair.
/// Both single-party marginals are exactly 1/2 (the state is locally mixed).
struct OutcomeProbs {
    double pp = 0.25;  // (+,+)
    double pm = 0.25;  // (+,-)
    double mp = 0.25;  // (-,+)
    double mm = 0.25;  // (-,-)

    double sum() const { return pp + pm + mp + mm; }
    /// Recombines the table back into the correlation it was built from.
    double expectation() const { return pp + mm - pm - mp; }
};

inline OutcomeProbs outcome_probabilities(const HybridPairState& s, BasisPair p) {
    const double e = expectation(s, p);
    return OutcomeProbs{(1.0 + e) / 4.0, (1.0 - e) / 4.0, (1.0 - e) / 4.0,
                        (1.0 + e) / 4.0};
}

/// Draws one (alice, bob) outcome (+1/-1 each) from an outcome table given a
/// uniform variate in [0,1). Kept separate from any engine so samplers stay
/// bit-reproducible.
inline std::pair<int, int> sample_outcome(const OutcomeProbs& probs, double u) {
    if (u < probs.pp) return {+1, +1};
    u -= probs.pp;
    if (u < probs.pm) return {+1, -1};
    u -= probs.pm;
    if (u < probs.mp) return {-1, +1};
    return {-1, -1};
}

}  // namespace tbqkd
