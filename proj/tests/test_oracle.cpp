#include <doctest.h>

#include "qrep/oracle.hpp"

using namespace qrep;

TEST_CASE("oracle configuration checks") {
    CHECK_THROWS(oracle::brute_elementary({4, {}, EncoderMode::Ideal}));
    CHECK_THROWS(oracle::brute_elementary({2, {}, EncoderMode::Coded}));
    CHECK_THROWS(oracle::brute_elementary({2, {1.5, 0, 0}, EncoderMode::Ideal}));
}

TEST_CASE("ideal brute-force link is a logical Bell pair") {
    const auto link = oracle::brute_elementary({2, {}, EncoderMode::Ideal});
    std::vector<cplx> ket(16);
    ket[0] = ket[15] = 1.0 / std::sqrt(2.0);
    CHECK(max_abs_diff(link, Operator::outer(ket, ket)) < 1e-14);
}

TEST_CASE("engine matches the brute-force oracle at code length 2") {
    const auto rep = oracle::verify_engine(2, 6, 7);
    CHECK(rep.points == 6);
    CHECK(rep.max_elementary < 1e-10);
    CHECK(rep.max_swap < 1e-10);
    CHECK(rep.max_decode < 1e-10);
    CHECK(rep.passed());
}
