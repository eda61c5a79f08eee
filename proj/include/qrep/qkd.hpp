// BB84-style key figures of merit: QBERs, asymptotic secret fraction,
// outcome-aggregation modes and threshold search.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "qrep/noise.hpp"
#include "qrep/qmat.hpp"
#include "qrep/repeater.hpp"

namespace qrep {

/// h(p) = -p log2 p - (1-p) log2 (1-p), h(0) = h(1) = 0. Throws outside [0, 1].
double binary_entropy(double p);

struct QberPair {
    double e_z = 0.0;
    double e_x = 0.0;
};

/// Error rates of a normalized two-qubit state, including the faulty final
/// measurements: each basis measurement flips with probability delta.
QberPair qber(const Operator& rho2, double delta);

/// max{0, 1 - h(e_z) - h(e_x)}
double secret_fraction(const QberPair& q);
double secret_fraction(const Operator& rho2, double delta);

/// How much of the swap/decoder classical record Alice and Bob keep.
enum class AggregationMode { FullInfo, DecoderOnly, SwapOnly, BlackBox };

struct ClassComponents {
    double r_golden = 0.0;
    double r_good_not_golden = 0.0;
    double r_bad = 0.0;
    double p_golden = 0.0;
    double p_good_not_golden = 0.0;
    double p_bad = 0.0;
};

struct ModeReport {
    AggregationMode mode = AggregationMode::FullInfo;
    double r_total = 0.0;
    std::optional<ClassComponents> components;  // FullInfo only
};

/// Secret key rate per elementary attempt under the given information model.
ModeReport aggregate(const OutcomeEnumeration& e, AggregationMode mode);

enum class VaryParam { Beta, Delta, F0 };

/// Search interval in "error" coordinates (beta, delta or 1 - F0). The lower
/// end must have positive rate, the upper end zero rate.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

Bracket default_bracket(VaryParam v);

class CutoffError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using RateFunction = std::function<double(const NoiseParams&)>;

/// Bisection for the onset of zero rate. Returns the parameter value itself
/// (beta, delta or F0). Throws CutoffError when the bracket does not straddle
/// the threshold.
double find_cutoff(VaryParam v, const NoiseParams& fixed, const RateFunction& rate, Bracket bracket,
                   double tol = 1e-4);

/// Golden-only cutoff at nesting level n.
double find_cutoff(VaryParam v, const NoiseParams& fixed, int level, EncoderMode enc, bool decoder_noisy,
                   double tol = 1e-4);

std::string to_string(AggregationMode m);
std::string to_string(VaryParam v);

}  // namespace qrep
