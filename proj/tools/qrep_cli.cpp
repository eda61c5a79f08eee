// qrep: command-line front end for the encoded repeater model.
//
//   qrep sweep  --vary beta --range 0:0.08:0.002 --nesting 2 --output out.csv
//   qrep cutoff --vary beta --nesting 3
//   qrep modes  --f0 0.98 --beta 0.03
//   qrep state  --nesting 1 --beta 0.01
//   qrep verify --d 2
//
// Exit codes: 0 ok, 1 usage, 2 computation error, 3 verification failure.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "qrep/kernels.hpp"
#include "qrep/oracle.hpp"
#include "qrep/sweep.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kCompute = 2, kVerify = 3 };

struct Common {
    int nesting = 1;
    double f0 = 1.0, beta = 0.0, delta = 0.0;
    std::string encoder = "coded", decoder = "noisy", mode = "golden-only";

    qrep::SweepPoint point() const {
        qrep::SweepPoint p;
        p.nesting = nesting;
        p.params = {f0, beta, delta};
        p.enc = qrep::parse_encoder(encoder);
        p.decoder_noisy = decoder == "noisy";
        p.mode = qrep::parse_mode(mode);
        return p;
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--nesting,-n", c.nesting, "Nesting level (1..3 exact)")->check(CLI::Range(0, 8));
    app->add_option("--f0", c.f0, "Initial Bell-pair fidelity")->capture_default_str();
    app->add_option("--beta", c.beta, "Two-qubit gate error probability")->capture_default_str();
    app->add_option("--delta", c.delta, "Measurement error probability")->capture_default_str();
    app->add_option("--encoder", c.encoder, "Encoder model")
        ->check(CLI::IsMember({"ideal", "coded", "full"}))
        ->capture_default_str();
    app->add_option("--decoder", c.decoder, "Decoder gates")
        ->check(CLI::IsMember({"ideal", "noisy"}))
        ->capture_default_str();
    app->add_option("--mode", c.mode, "Outcome aggregation")
        ->check(CLI::IsMember({"golden-only", "full", "decoder-only", "swap-only", "blackbox"}))
        ->capture_default_str();
}

void set_param(qrep::NoiseParams& p, qrep::VaryParam v, double x) {
    switch (v) {
        case qrep::VaryParam::Beta: p.beta = x; break;
        case qrep::VaryParam::Delta: p.delta = x; break;
        case qrep::VaryParam::F0: p.f0 = x; break;
    }
}

void print_matrix(const qrep::Operator& m) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            std::printf("%s(%+.10f%+.10fi)", c ? " " : "", m(r, c).real(), m(r, c).imag());
        }
        std::printf("\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Encoded quantum repeater: decoded states and secret key rates"};
    app.require_subcommand(1);

    Common common;
    std::string vary = "beta", range, output;
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    double tol = 1e-4;
    int code_length = 2, points = 0;
    std::uint64_t seed = 20240611;

    auto* sweep = app.add_subcommand("sweep", "Grid sweep over one parameter, CSV output");
    add_common(sweep, common);
    sweep->add_option("--vary", vary, "Swept parameter")->check(CLI::IsMember({"beta", "delta", "f0"}))->capture_default_str();
    sweep->add_option("--range", range, "start:stop:step")->required();
    sweep->add_option("--output,-o", output, "CSV file (default stdout)");
    sweep->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* cutoff = app.add_subcommand("cutoff", "Parameter value where the key rate drops to zero");
    add_common(cutoff, common);
    cutoff->add_option("--vary", vary, "Searched parameter")->check(CLI::IsMember({"beta", "delta", "f0"}))->capture_default_str();
    cutoff->add_option("--tol", tol, "Bisection tolerance")->capture_default_str();

    auto* modes = app.add_subcommand("modes", "All aggregation modes at nesting level 1");
    add_common(modes, common);

    auto* state = app.add_subcommand("state", "Decoded golden state and diagnostics");
    add_common(state, common);

    auto* verify = app.add_subcommand("verify", "Compare the engine against the brute-force oracle");
    verify->add_option("--d", code_length, "Code length")->check(CLI::IsMember({2, 3}))->capture_default_str();
    verify->add_option("--points", points, "Random parameter points (default 20 for d=2, 3 for d=3)");
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    qrep::SweepPoint base;
    try {
        if (!verify->parsed()) {
            base = common.point();
            base.params.validate();
            if (!base.mode.golden_only && base.nesting != 1) {
                throw std::invalid_argument("--mode other than golden-only requires --nesting 1");
            }
            if (base.enc == qrep::EncoderMode::Full && base.nesting != 1) {
                throw std::invalid_argument("--encoder full requires --nesting 1");
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (sweep->parsed()) {
            const auto v = qrep::parse_vary(vary);
            std::vector<qrep::SweepPoint> grid;
            for (double x : qrep::parse_range(range)) {
                auto pt = base;
                set_param(pt.params, v, x);
                pt.params.validate();
                grid.push_back(pt);
            }
            const auto rows = qrep::run_sweep(grid, jobs);
            std::ofstream file;
            if (!output.empty()) {
                file.open(output);
                if (!file) throw std::runtime_error("cannot open " + output);
            }
            std::ostream& os = output.empty() ? std::cout : file;
            os << qrep::csv_header() << "\n";
            for (const auto& r : rows) os << qrep::csv_row(r) << "\n";
        } else if (cutoff->parsed()) {
            const auto v = qrep::parse_vary(vary);
            auto rate = [&](const qrep::NoiseParams& p) {
                auto pt = base;
                pt.params = p;
                return qrep::total_rate(pt);
            };
            const double x = qrep::find_cutoff(v, base.params, rate, qrep::default_bracket(v), tol);
            std::cout << "nesting,vary,encoder,decoder,mode,beta,delta,f0,cutoff\n"
                      << base.nesting << "," << vary << "," << common.encoder << "," << common.decoder << ","
                      << common.mode << "," << qrep::format_number(base.params.beta) << ","
                      << qrep::format_number(base.params.delta) << "," << qrep::format_number(base.params.f0) << ","
                      << qrep::format_number(x) << "\n";
        } else if (modes->parsed()) {
            if (base.nesting != 1) throw std::invalid_argument("modes requires --nesting 1");
            const auto e = qrep::enumerate_outcomes_n1(base.params, base.enc, base.decoder_noisy);
            std::cout << "mode,r_total\n";
            for (auto m : {qrep::AggregationMode::FullInfo, qrep::AggregationMode::DecoderOnly,
                           qrep::AggregationMode::SwapOnly, qrep::AggregationMode::BlackBox}) {
                const auto rep = qrep::aggregate(e, m);
                std::cout << qrep::to_string(m) << "," << qrep::format_number(rep.r_total) << "\n";
                if (rep.components) {
                    std::cout << "full:golden," << qrep::format_number(rep.components->r_golden) << "\n"
                              << "full:good-not-golden," << qrep::format_number(rep.components->r_good_not_golden)
                              << "\n"
                              << "full:bad," << qrep::format_number(rep.components->r_bad) << "\n";
                }
            }
            std::cout << "total_probability," << qrep::format_number(e.total_probability()) << "\n";
        } else if (state->parsed()) {
            const auto g = qrep::golden_pipeline(base.nesting, base.params, base.enc, base.decoder_noisy);
            const auto diag = qrep::validate_state(g.state);
            const auto w = qrep::bell_weights(g.state);
            std::printf("kernels     %s\n", std::string(qrep::kernels::name(qrep::kernels::active().variant)).c_str());
            std::printf("es_trace    %.12g\np_golden    %.12g\ndecode_prob %.12g\n", g.es_trace, g.p_golden,
                        g.decode_prob);
            std::printf("e_z         %.12g\ne_x         %.12g\nr_inf       %.12g\nr_golden    %.12g\n", g.e_z, g.e_x,
                        g.secret_fraction, g.r_golden);
            std::printf("bell        phi+ %.12g  phi- %.12g  psi+ %.12g  psi- %.12g\n", w.phi_plus, w.phi_minus,
                        w.psi_plus, w.psi_minus);
            std::printf("valid       %s (min eig %.3g, herm dev %.3g)\n", diag.ok() ? "yes" : "no", diag.min_eigenvalue,
                        diag.hermiticity_deviation);
            print_matrix(g.state);
        } else if (verify->parsed()) {
            if (points == 0) points = code_length == 2 ? 20 : 3;
            const auto t0 = std::chrono::steady_clock::now();
            const auto rep = qrep::oracle::verify_engine(code_length, points, seed);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::printf("d=%d points=%d max_elementary=%.3g max_swap=%.3g max_decode=%.3g tol=%.1g time=%.1fs %s\n",
                        rep.code_length, rep.points, rep.max_elementary, rep.max_swap, rep.max_decode, rep.tolerance,
                        secs, rep.passed() ? "PASS" : "FAIL");
            return rep.passed() ? kOk : kVerify;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCompute;
    }
    return kOk;
}
