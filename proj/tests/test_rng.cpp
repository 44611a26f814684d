#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "diskhull/rng.hpp"
#include "oracles.hpp"

using namespace diskhull;

TEST_CASE("philox4x32-10 known-answer vectors", "[rng]") {
    // Random123 reference vectors (counter, key all zeros / all ones / pi digits).
    CHECK(philox::block(0, 0, 0) ==
          philox::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox::block(0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull) ==
          philox::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox::block(0x299f31d0a4093822ull, 0x0370734413198a2eull, 0x85a308d3243f6a88ull) ==
          philox::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("stream word sequence matches the reference layout", "[rng]") {
    RngStream s(123456789, 7);
    const std::vector<std::uint64_t> expected{
        0x35df48ac2579ab94ull, 0x86568bc94f807516ull, 0xd27e83fb23779e8bull,
        0x6dbc270937812e5full, 0xb26c4b942c35ee80ull, 0xe6f9bc443417e265ull,
    };
    for (std::uint64_t e : expected) {
        REQUIRE(s.next_u64() == e);
    }
    RngStream t(123456789, 7);
    CHECK(t.next_unit() == 0.21043829157631555);
    CHECK(t.next_unit() == 0.52475808777626454);
    CHECK(t.next_unit() == 0.82224297410308933);
    CHECK(t.next_unit() == 0.4286522290708531);

    RngStream big(0xDEADBEEFCAFEF00Dull, 0xFFFFFFFFFFFFFFFFull);
    CHECK(big.next_u64() == 0x19559ace6ab1d3d3ull);
    CHECK(big.next_u64() == 0xa92fed310b462bc7ull);
}

TEST_CASE("identical (seed, stream) reproduces identical draws", "[rng]") {
    RngStream a = derive_stream(42, 17);
    RngStream b = derive_stream(42, 17);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.next_u64() == b.next_u64());
    }
    RngStream c = derive_stream(42, 17);
    RngStream d = derive_stream(42, 17);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(c.next_gaussian() == d.next_gaussian());
    }
}

TEST_CASE("adjacent streams pass a two-sample KS test", "[rng]") {
    const int n = 10000;
    std::vector<double> g0, g1;
    RngStream s0 = derive_stream(987654321, 0);
    RngStream s1 = derive_stream(987654321, 1);
    for (int i = 0; i < n; ++i) {
        g0.push_back(s0.next_gaussian());
        g1.push_back(s1.next_gaussian());
    }
    // alpha = 0.001: c(alpha) = sqrt(-ln(alpha/2)/2) = 1.9494746
    const double threshold = 1.9494746035204051 * std::sqrt(2.0 / n);
    CHECK(oracle::ks_two_sample(g0, g1) < threshold);
}

TEST_CASE("gaussian moments", "[rng]") {
    const int n = 1000000;
    RngStream s = derive_stream(5551212, 3);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = s.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.005);
    CHECK(std::abs(var - 1.0) < 0.01);
}
