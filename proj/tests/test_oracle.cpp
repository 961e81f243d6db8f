#include <doctest.h>

#include <cmath>

#include "qwire/errors.hpp"
#include "qwire/oracle.hpp"
#include "qwire/scattering.hpp"

using namespace qwire;

namespace {

Coupling user_coupling(double u11, double u22, cplx u12) {
    return {to_internal(u11), to_internal(u22), to_internal(1.0) * u12};
}

} // namespace

TEST_CASE("oracle: free wire transmits everything") {
    const Coupling u = user_coupling(0.0, 0.0, 0.0);
    const ScattererS s = fd_scatter(OracleConfig::for_system(u, to_internal(0.8), to_internal(1.2)));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(s.r(i, j)) < 1e-8);
            CHECK(std::abs(s.rp(i, j)) < 1e-8);
            CHECK(std::abs(s.t(i, j) - (i == j ? 1.0 : 0.0)) < 1e-8);
        }
    }
}

TEST_CASE("oracle: weak diagonal coupling matches the closed form") {
    const double k = to_internal(1.0);
    const Coupling u = user_coupling(0.01, 0.01, 0.0);
    const OracleResult res = fd_scatter_detailed(OracleConfig::for_system(u, k, k));
    const AmplitudePair closed = double_delta_closed_form(u.u11, k, 1.0);
    CHECK(std::abs(res.extrapolated.r(0, 0) - closed.r) < 1e-6);
    CHECK(std::abs(res.extrapolated.t(0, 0) - closed.t) < 1e-6);
    CHECK(res.refinement_change < 1e-6);
    CHECK(unitarity_defect(res.extrapolated) < 1e-6);
}

TEST_CASE("oracle: mixing coupling with unequal channel wavenumbers") {
    const double k1 = to_internal(1.0);
    const double k2 = to_internal(1.3);
    const DeltaChain chain{user_coupling(0.1, 0.05, 0.3), 1.0};
    const ScattererS numeric = fd_scatter(OracleConfig::for_system(chain.u, k1, k2));
    CHECK(max_amplitude_diff(numeric, double_delta_smatrix(chain, k1, k2)) < 1e-6);
    CHECK(unitarity_defect(numeric) < 1e-6);
}

TEST_CASE("oracle: complex mixing coupling") {
    const double k1 = to_internal(0.9);
    const double k2 = to_internal(0.6);
    const DeltaChain chain{user_coupling(0.2, 0.3, cplx{0.2, 0.1}), 1.0};
    const ScattererS numeric = fd_scatter(OracleConfig::for_system(chain.u, k1, k2));
    CHECK(max_amplitude_diff(numeric, double_delta_smatrix(chain, k1, k2)) < 1e-6);
}

TEST_CASE("oracle: raw width bias is first order and removed by extrapolation") {
    const double k1 = to_internal(0.7);
    const double k2 = to_internal(1.1);
    const DeltaChain chain{user_coupling(0.5, 0.2, 0.0), 1.0};
    const ScattererS exact = double_delta_smatrix(chain, k1, k2);
    const OracleConfig cfg = OracleConfig::for_system(chain.u, k1, k2);
    const double sigma = 4.0 * cfg.sigma;
    const double e1 = max_amplitude_diff(fd_scatter_raw(cfg, sigma, sigma / 20.0), exact);
    const double e2 = max_amplitude_diff(fd_scatter_raw(cfg, sigma / 2.0, sigma / 40.0), exact);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(max_amplitude_diff(fd_scatter(cfg), exact) < 1e-3 * e1);
}

TEST_CASE("oracle: invalid configurations are rejected") {
    const Coupling u = user_coupling(0.1, 0.1, 0.0);
    OracleConfig cfg = OracleConfig::for_system(u, to_internal(1.0), to_internal(1.0));

    OracleConfig bad_k = cfg;
    bad_k.k2 = 0.0;
    CHECK_THROWS_AS(fd_scatter(bad_k), ChannelClosed);

    OracleConfig coarse = cfg;
    coarse.grid_spacing = cfg.sigma / 5.0;
    CHECK_THROWS_AS(fd_scatter(coarse), InvalidInput);

    OracleConfig short_domain = cfg;
    short_domain.half_length = 1.0;
    CHECK_THROWS_AS(fd_scatter(short_domain), InvalidInput);
}
