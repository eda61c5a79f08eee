#include "qrep/qkd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrep {
namespace {

constexpr double kRoundoff = 1e-12;

double clamp_rate(double e) {
    if (e < -kRoundoff || e > 1.0 + kRoundoff || std::isnan(e)) {
        throw std::domain_error("error rate outside [0, 1]: " + std::to_string(e));
    }
    return std::clamp(e, 0.0, 1.0);
}

// p * r_inf of an unnormalized output; zero for (numerically) empty outcomes.
double weighted_rate(const Operator& unnormalized, double delta) {
    const double p = unnormalized.real_trace();
    if (!(p > 0.0)) return 0.0;
    return p * secret_fraction(unnormalized * (1.0 / p), delta);
}

Operator unnormalized(const OutcomeRecord& r) {
    if (!(r.joint_prob > 0.0)) return Operator(4);
    return r.cond_state * r.joint_prob;
}

}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

QberPair qber(const Operator& rho2, double delta) {
    if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("qber: delta out of range");
    const auto w = bell_weights(rho2);
    // An error survives when exactly zero or both final measurements flip.
    const double same = delta * delta + (1.0 - delta) * (1.0 - delta);
    const double flip = 2.0 * delta * (1.0 - delta);
    return {same * (w.psi_plus + w.psi_minus) + flip * (w.phi_plus + w.phi_minus),
            same * (w.phi_minus + w.psi_minus) + flip * (w.phi_plus + w.psi_plus)};
}

double secret_fraction(const QberPair& q) {
    const double r = 1.0 - binary_entropy(clamp_rate(q.e_z)) - binary_entropy(clamp_rate(q.e_x));
    return std::max(0.0, r);
}

double secret_fraction(const Operator& rho2, double delta) { return secret_fraction(qber(rho2, delta)); }

ModeReport aggregate(const OutcomeEnumeration& e, AggregationMode mode) {
    const double delta = e.params.delta;
    ModeReport rep;
    rep.mode = mode;
    switch (mode) {
        case AggregationMode::FullInfo: {
            ClassComponents c;
            for (const auto& r : e.records) {
                const double p = r.multiplicity * r.joint_prob;
                const double k = r.multiplicity * weighted_rate(unnormalized(r), delta);
                switch (r.cls) {
                    case OutcomeClass::Golden: c.r_golden += k, c.p_golden += p; break;
                    case OutcomeClass::GoodNotGolden: c.r_good_not_golden += k, c.p_good_not_golden += p; break;
                    case OutcomeClass::Bad: c.r_bad += k, c.p_bad += p; break;
                }
            }
            rep.r_total = c.r_golden + c.r_good_not_golden + c.r_bad;
            rep.components = c;
            break;
        }
        case AggregationMode::SwapOnly: {
            // Decoder outcomes are discarded: pool them per swap pattern.
            for (const auto& s : e.swap_states) {
                Operator pooled(4);
                int mult = 0;
                for (const auto& r : e.records) {
                    if (r.m.c == s.m.c && r.m.b == s.m.b) {
                        pooled += unnormalized(r);
                        mult = r.multiplicity;
                    }
                }
                rep.r_total += mult * weighted_rate(pooled, delta);
            }
            break;
        }
        case AggregationMode::DecoderOnly: {
            // Swap outcomes are discarded after the frame correction.
            Operator avg(e.swap_states.front().es_state.dim());
            for (const auto& s : e.swap_states) avg.add_scaled(static_cast<double>(s.multiplicity), s.es_state);
            for (unsigned d = 0; d < 16; ++d) {
                const auto dec = decode_channel(avg, e.params, d, e.decoder_noisy, 3);
                if (dec.weight > 0.0) rep.r_total += dec.weight * secret_fraction(dec.state, delta);
            }
            break;
        }
        case AggregationMode::BlackBox: {
            Operator pooled(4);
            for (const auto& r : e.records) pooled.add_scaled(static_cast<double>(r.multiplicity), unnormalized(r));
            rep.r_total = weighted_rate(pooled, delta);
            break;
        }
    }
    return rep;
}

Bracket default_bracket(VaryParam v) {
    switch (v) {
        case VaryParam::Beta: return {0.0, 0.15};
        case VaryParam::Delta: return {0.0, 0.05};
        case VaryParam::F0: return {0.0, 0.4};
    }
    throw std::invalid_argument("unknown parameter");
}

double find_cutoff(VaryParam v, const NoiseParams& fixed, const RateFunction& rate, Bracket bracket, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_cutoff: tolerance must be positive");
    if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("find_cutoff: empty bracket");
    auto at = [&](double x) {
        NoiseParams p = fixed;
        switch (v) {
            case VaryParam::Beta: p.beta = x; break;
            case VaryParam::Delta: p.delta = x; break;
            case VaryParam::F0: p.f0 = 1.0 - x; break;
        }
        return rate(p);
    };
    auto positive = [](double r) { return r > kRoundoff; };

    const double r_lo = at(bracket.lo);
    const double r_hi = at(bracket.hi);
    if (!positive(r_lo) || positive(r_hi)) {
        std::ostringstream os;
        os << "find_cutoff(" << to_string(v) << "): bracket [" << bracket.lo << ", " << bracket.hi
           << "] does not straddle the threshold (rate " << r_lo << " at lo, " << r_hi << " at hi)";
        throw CutoffError(os.str());
    }
    double lo = bracket.lo, hi = bracket.hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (positive(at(mid)) ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    return v == VaryParam::F0 ? 1.0 - x : x;
}

double find_cutoff(VaryParam v, const NoiseParams& fixed, int level, EncoderMode enc, bool decoder_noisy,
                   double tol) {
    auto rate = [&](const NoiseParams& p) { return golden_pipeline(level, p, enc, decoder_noisy).r_golden; };
    return find_cutoff(v, fixed, rate, default_bracket(v), tol);
}

std::string to_string(AggregationMode m) {
    switch (m) {
        case AggregationMode::FullInfo: return "full";
        case AggregationMode::DecoderOnly: return "decoder-only";
        case AggregationMode::SwapOnly: return "swap-only";
        case AggregationMode::BlackBox: return "blackbox";
    }
    return "?";
}

std::string to_string(VaryParam v) {
    switch (v) {
        case VaryParam::Beta: return "beta";
        case VaryParam::Delta: return "delta";
        case VaryParam::F0: return "f0";
    }
    return "?";
}

}  // namespace qrep
