// Parameter sweeps and the CSV row format consumed by the plotting scripts.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrep/qkd.hpp"

namespace qrep {

/// golden-only, or one of the aggregation modes (nesting level 1 only).
struct RateMode {
    bool golden_only = true;
    AggregationMode mode = AggregationMode::FullInfo;

    static RateMode golden() { return {}; }
    static RateMode aggregated(AggregationMode m) { return {false, m}; }
};

struct SweepPoint {
    int nesting = 1;
    NoiseParams params;
    EncoderMode enc = EncoderMode::Coded;
    bool decoder_noisy = true;
    RateMode mode;
};

/// One CSV row. Optional fields are written empty when not applicable.
struct SweepRow {
    SweepPoint point;
    double p_golden = 0.0;
    double e_z = 0.0;
    double e_x = 0.0;
    double r_golden = 0.0;
    std::optional<double> r_gng;
    std::optional<double> r_bad;
    double r_total = 0.0;
};

SweepRow evaluate(const SweepPoint& pt);

/// Rate used by cutoff searches for the given point template.
double total_rate(const SweepPoint& pt);

/// Evaluates points on `jobs` worker threads; output order follows input.
std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& points, unsigned jobs);

/// start:stop:step, inclusive of stop (up to rounding).
std::vector<double> parse_range(const std::string& text);

std::string csv_header();
std::string csv_row(const SweepRow& row);
/// 12 significant digits, general notation.
std::string format_number(double v);

std::string to_string(EncoderMode e);
std::string to_string(const RateMode& m);
EncoderMode parse_encoder(const std::string& s);
RateMode parse_mode(const std::string& s);
VaryParam parse_vary(const std::string& s);

}  // namespace qrep
