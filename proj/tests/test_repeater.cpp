#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "qrep/qkd.hpp"
#include "qrep/repeater.hpp"

using namespace qrep;

namespace {

SwapPattern pattern_from_bits(unsigned b, unsigned c) {
    SwapPattern m{{}, {}};
    for (int i = 2; i >= 0; --i) {
        m.b.push_back(static_cast<int>((b >> i) & 1U));
        m.c.push_back(static_cast<int>((c >> i) & 1U));
    }
    return m;
}

// Representative C pattern for each class: 000 for good, else the pattern
// with a single 1 whose complement-or-self equals c.
unsigned representative_c(unsigned c) { return std::popcount(c) >= 2 ? (~c & 7U) : c; }

}  // namespace

TEST_CASE("row table sizes and limits") {
    CHECK(build_row_table(0, {}, EncoderMode::Ideal).size() == 4);
    CHECK(build_row_table(1, {}, EncoderMode::Ideal).size() == 16);
    CHECK(build_row_table(2, {}, EncoderMode::Coded).size() == 256);
    CHECK_THROWS_AS(build_row_table(4, {}, EncoderMode::Ideal), std::domain_error);
    CHECK_THROWS_AS(build_row_table(1, {}, EncoderMode::Full), std::invalid_argument);
    CHECK(golden_multiplicity(3) == std::pow(16.0, 7));
}

TEST_CASE("ideal chain: golden pattern probability and perfect output") {
    for (int n = 0; n <= 3; ++n) {
        CAPTURE(n);
        const auto es = assemble_es_state(build_row_table(n, {}, EncoderMode::Ideal));
        CHECK(es.real_trace() * golden_multiplicity(n) == doctest::Approx(1.0).epsilon(1e-12));
        const auto g = golden_pipeline(n, {}, EncoderMode::Coded, true);
        CHECK(g.p_golden == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g.decode_prob == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(max_abs_diff(g.state, bell_projector(BellKind::PhiPlus)) < 1e-12);
        CHECK(g.r_golden == doctest::Approx(1.0));
    }
}

TEST_CASE("linearized paths agree with each other") {
    const NoiseParams p{0.95, 0.03, 0.01};
    for (auto enc : {EncoderMode::Ideal, EncoderMode::Coded}) {
        CHECK(max_abs_diff(assemble_es_state(build_row_table(0, p, enc)), elementary_link_state(p, enc)) < 1e-15);
        CHECK(max_abs_diff(assemble_es_state(build_row_table(1, p, enc)),
                           es_state_level1(p, enc, SwapPattern::golden(3))) < 1e-15);
        CHECK(max_abs_diff(assemble_es_state(build_row_table(0, p, enc), 2), elementary_link_state(p, enc, 2)) <
              1e-15);
    }
    CHECK_THROWS(es_state_level1(p, EncoderMode::Ideal, SwapPattern::golden(2), 3));
    CHECK_THROWS(golden_pipeline(2, p, EncoderMode::Full, true));
}

TEST_CASE("assembled states are valid density operators up to normalization") {
    const NoiseParams p{0.9, 0.05, 0.02};
    for (int n = 1; n <= 2; ++n) {
        auto es = assemble_es_state(build_row_table(n, p, EncoderMode::Coded));
        es *= 1.0 / es.real_trace();
        CHECK(validate_state(es).ok());
    }
}

TEST_CASE("full level-1 enumeration: partition, frames and class symmetry") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> f(0.85, 1.0), b(0.0, 0.08), d(0.0, 0.04);
    for (int trial = 0; trial < 2; ++trial) {
        const NoiseParams p{f(rng), b(rng), d(rng)};
        const auto enc = trial == 0 ? EncoderMode::Ideal : EncoderMode::Full;
        CAPTURE(p.f0);
        CAPTURE(p.beta);
        CAPTURE(p.delta);

        double total = 0.0;
        double worst_frame = 0.0;
        for (unsigned bb = 0; bb < 8; ++bb) {
            for (unsigned cc = 0; cc < 8; ++cc) {
                const auto m = pattern_from_bits(bb, cc);
                auto es = es_state_level1(p, enc, m);
                total += es.real_trace();
                apply_frame_correction(es, m);
                auto ref = es_state_level1(p, enc, pattern_from_bits(0, representative_c(cc)));
                worst_frame = std::max(worst_frame, max_abs_diff(es, ref));
            }
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(worst_frame < 1e-12);

        const auto e = enumerate_outcomes_n1(p, enc, true);
        CHECK(e.records.size() == 64);
        CHECK(e.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("coded encoder drops probability mass") {
    const NoiseParams p{0.97, 0.05, 0.0};
    const double keep = 0.5 * (encoder_weight(0, 0, p.beta, EncoderMode::Coded) +
                               encoder_weight(1, 1, p.beta, EncoderMode::Coded));
    CHECK(enumerate_outcomes_n1(p, EncoderMode::Coded, true).total_probability() ==
          doctest::Approx(keep * keep).epsilon(1e-12));
}

TEST_CASE("swap pattern classification") {
    CHECK_FALSE(pattern_from_bits(0, 0).error_detected());
    CHECK(pattern_from_bits(0, 0b010).error_detected());
    CHECK(pattern_from_bits(0, 0b110).logical_bit_flip());
    CHECK_FALSE(pattern_from_bits(0, 0b100).logical_bit_flip());
    CHECK(pattern_from_bits(0b100, 0).logical_phase_flip());
    CHECK_FALSE(pattern_from_bits(0b011, 0).logical_phase_flip());
    CHECK(class_multiplicity(OutcomeClass::Bad) == 48);
}

TEST_CASE("B-register symmetry") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> f(0.85, 1.0), b(0.0, 0.1), d(0.0, 0.05);
    for (int trial = 0; trial < 5; ++trial) {
        const NoiseParams p{f(rng), b(rng), d(rng)};
        for (auto enc : {EncoderMode::Ideal, EncoderMode::Coded, EncoderMode::Full}) {
            CHECK(verify_b_register_symmetry(p, enc, trial % 2 == 0).max_deviation() < 1e-9);
        }
    }
}

// Reference values from an independent numpy implementation of the model.
TEST_CASE("golden pipeline regression values") {
    struct Case {
        int n;
        NoiseParams p;
        EncoderMode enc;
        bool noisy;
        double p_golden, r_golden, e_z, e_x;
    };
    const Case cases[] = {
        {1, {0.98, 0.03, 0.005}, EncoderMode::Ideal, true, 0.6171413811056731, 0.09490466100149111,
         0.026206791307861615, 0.1759884048061916},
        {1, {0.95, 0.02, 0.01}, EncoderMode::Coded, true, 0.5490530664286694, 0.007874438690581126,
         0.031245130129658148, 0.2340822297720635},
        {2, {0.99, 0.01, 0.002}, EncoderMode::Coded, true, 0.6717200906992877, 0.2110782188518118,
         0.00914931350839417, 0.1503298992023967},
        {1, {0.97, 0.04, 0.0}, EncoderMode::Coded, false, 0.5623918219212158, 0.17577979092024906,
         0.0006930135983047062, 0.17958574181711354},
        {3, {1.0, 0.015, 0.001}, EncoderMode::Coded, true, 0.43087444674389275, 0.05559684306252142,
         0.009770189651310776, 0.23800187797979813},
    };
    for (const auto& c : cases) {
        CAPTURE(c.n);
        CAPTURE(c.p.beta);
        const auto g = golden_pipeline(c.n, c.p, c.enc, c.noisy);
        CHECK(g.p_golden == doctest::Approx(c.p_golden).epsilon(1e-10));
        CHECK(g.r_golden == doctest::Approx(c.r_golden).epsilon(1e-9));
        CHECK(g.e_z == doctest::Approx(c.e_z).epsilon(1e-10));
        CHECK(g.e_x == doctest::Approx(c.e_x).epsilon(1e-10));
    }
    CHECK(golden_pipeline(1, {0.97, 0.03, 0.004}, EncoderMode::Full, true).r_golden ==
          doctest::Approx(0.06535482587854782).epsilon(1e-9));
}

TEST_CASE("frame correction is not a no-op") {
    const NoiseParams p{0.95, 0.02, 0.01};
    const auto ref = es_state_level1(p, EncoderMode::Ideal, pattern_from_bits(0, 0));
    auto minus = es_state_level1(p, EncoderMode::Ideal, pattern_from_bits(0b001, 0));
    CHECK(max_abs_diff(minus, ref) > 1e-3);
    apply_frame_correction(minus, pattern_from_bits(0b001, 0));
    CHECK(max_abs_diff(minus, ref) < 1e-14);
}
