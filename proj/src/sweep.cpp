#include "qrep/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qrep {
namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

const OutcomeRecord& golden_record(const OutcomeEnumeration& e) {
    for (const auto& r : e.records) {
        if (r.cls == OutcomeClass::Golden) return r;
    }
    throw std::logic_error("enumeration has no golden record");
}

}  // namespace

SweepRow evaluate(const SweepPoint& pt) {
    SweepRow row;
    row.point = pt;
    if (pt.mode.golden_only) {
        const auto g = golden_pipeline(pt.nesting, pt.params, pt.enc, pt.decoder_noisy);
        row.p_golden = g.p_golden;
        row.e_z = g.e_z;
        row.e_x = g.e_x;
        row.r_golden = g.r_golden;
        row.r_total = g.r_golden;
        return row;
    }
    if (pt.nesting != 1) throw std::invalid_argument("aggregation modes are only available at nesting level 1");

    const auto e = enumerate_outcomes_n1(pt.params, pt.enc, pt.decoder_noisy);
    const auto& g = golden_record(e);
    row.p_golden = g.multiplicity * g.joint_prob;
    if (g.joint_prob > 0.0) {
        row.e_z = g.e_z;
        row.e_x = g.e_x;
        row.r_golden = row.p_golden * secret_fraction(QberPair{g.e_z, g.e_x});
    }
    const auto rep = aggregate(e, pt.mode.mode);
    row.r_total = rep.r_total;
    if (rep.components) {
        row.r_gng = rep.components->r_good_not_golden;
        row.r_bad = rep.components->r_bad;
    }
    return row;
}

double total_rate(const SweepPoint& pt) { return evaluate(pt).r_total; }

std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& points, unsigned jobs) {
    std::vector<SweepRow> rows(points.size());
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                rows[i] = evaluate(points[i]);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = points.size();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<double> parse_range(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
        throw std::invalid_argument("range must look like start:stop:step, got '" + text + "'");
    }
    const double start = parse_double(text.substr(0, a));
    const double stop = parse_double(text.substr(a + 1, b - a - 1));
    const double step = parse_double(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("range needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 1000000) throw std::invalid_argument("range has too many points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (ec != std::errc{}) throw std::runtime_error("format_number failed");
    return {buf, ptr};
}

std::string csv_header() {
    return "nesting,beta,delta,f0,encoder,decoder,mode,p_golden,e_z,e_x,r_golden,r_gng,r_bad,r_total";
}

std::string csv_row(const SweepRow& r) {
    const auto& p = r.point;
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
    std::string s = std::to_string(p.nesting);
    for (double v : {p.params.beta, p.params.delta, p.params.f0}) s += "," + format_number(v);
    s += "," + to_string(p.enc) + "," + (p.decoder_noisy ? "noisy" : "ideal") + "," + to_string(p.mode);
    for (double v : {r.p_golden, r.e_z, r.e_x, r.r_golden}) s += "," + format_number(v);
    s += "," + opt(r.r_gng) + "," + opt(r.r_bad) + "," + format_number(r.r_total);
    return s;
}

std::string to_string(EncoderMode e) {
    switch (e) {
        case EncoderMode::Ideal: return "ideal";
        case EncoderMode::Coded: return "coded";
        case EncoderMode::Full: return "full";
    }
    return "?";
}

std::string to_string(const RateMode& m) { return m.golden_only ? "golden-only" : to_string(m.mode); }

EncoderMode parse_encoder(const std::string& s) {
    if (s == "ideal") return EncoderMode::Ideal;
    if (s == "coded") return EncoderMode::Coded;
    if (s == "full") return EncoderMode::Full;
    throw std::invalid_argument("unknown encoder '" + s + "'");
}

RateMode parse_mode(const std::string& s) {
    if (s == "golden-only") return RateMode::golden();
    for (auto m : {AggregationMode::FullInfo, AggregationMode::DecoderOnly, AggregationMode::SwapOnly,
                   AggregationMode::BlackBox}) {
        if (s == to_string(m)) return RateMode::aggregated(m);
    }
    throw std::invalid_argument("unknown mode '" + s + "'");
}

VaryParam parse_vary(const std::string& s) {
    for (auto v : {VaryParam::Beta, VaryParam::Delta, VaryParam::F0}) {
        if (s == to_string(v)) return v;
    }
    throw std::invalid_argument("unknown parameter '" + s + "'");
}

}  // namespace qrep
