#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "ym/errors.hpp"
#include "ym/kernels.hpp"

using namespace ym;

namespace {

std::vector<double> random_field(int n_t, int n_theta, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(static_cast<std::size_t>(n_t) * n_theta);
    for (double& x : v) x = -0.8 + 1.6 * ((gen() >> 11) * 0x1.0p-53);
    return v;
}

}  // namespace

TEST_CASE("scalar backend always exists and dispatch names round-trip") {
    CHECK(backend_available(KernelBackend::scalar));
    auto avail = available_backends();
    CHECK(!avail.empty());
    bool has_preferred = false;
    for (auto b : avail) {
        CHECK(backend_available(b));
        CHECK(backend_from_name(backend_name(b)) == b);
        if (b == preferred_backend()) has_preferred = true;
    }
    CHECK(has_preferred);
    CHECK(backend_from_name("auto") == preferred_backend());
    CHECK(std::string(kernel_set(KernelBackend::scalar).name) == "scalar");
    CHECK_THROWS_AS((void)backend_from_name("sse9"), DomainError);
}

TEST_CASE("unavailable backends refuse to hand out kernels") {
    for (KernelBackend b : {KernelBackend::avx2, KernelBackend::neon}) {
        if (!backend_available(b)) {
            CHECK_THROWS_AS((void)kernel_set(b), DomainError);
        }
    }
}

TEST_CASE("scalar step matches a plain reference evaluation") {
    const int n_t = 5, n_theta = 6;
    std::vector<double> src = random_field(n_t, n_theta, 42);
    std::vector<double> dst(src.size(), 0.0);
    const double inv_ht2 = 16.0, inv_hth2 = 9.0, dt = 1e-3;
    const KernelSet k = kernel_set(KernelBackend::scalar);
    const double mx = k.relax_step(src.data(), dst.data(), n_t, n_theta, inv_ht2, inv_hth2, dt);

    double want_mx = 0.0;
    for (int i = 0; i < n_t; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            const double c = src[i * n_theta + j];
            double want;
            if (i == 0 || i == n_t - 1) {
                want = c;  // frozen rows pass through
            } else {
                const double e = src[i * n_theta + (j + 1) % n_theta];
                const double w = src[i * n_theta + (j + n_theta - 1) % n_theta];
                const double up = src[(i + 1) * n_theta + j];
                const double dn = src[(i - 1) * n_theta + j];
                const double lap = (e + w - 2.0 * c) * inv_hth2 + (up + dn - 2.0 * c) * inv_ht2;
                want = c + dt * (lap + 2.0 * c * (1.0 - c * c));
                want_mx = std::max(want_mx, std::abs(want));
            }
            CHECK(dst[i * n_theta + j] == doctest::Approx(want).epsilon(1e-14));
        }
    }
    CHECK(mx == doctest::Approx(want_mx).epsilon(1e-14));
}

TEST_CASE("residual vanishes on the constant solutions") {
    const int n_t = 7, n_theta = 5;
    const KernelSet k = kernel_set(KernelBackend::scalar);
    for (double fill : {0.0, 1.0, -1.0}) {
        std::vector<double> v(static_cast<std::size_t>(n_t) * n_theta, fill);
        CHECK(k.residual_max(v.data(), n_t, n_theta, 4.0, 4.0) == 0.0);
    }
}

TEST_CASE("vector backends are bit-identical to the scalar path") {
    int tested = 0;
    for (KernelBackend b : available_backends()) {
        if (b == KernelBackend::scalar) continue;
        const KernelSet vec = kernel_set(b);
        const KernelSet ref = kernel_set(KernelBackend::scalar);
        // odd theta count exercises the vector remainder columns
        for (int n_theta : {4, 5, 13}) {
            const int n_t = 37;
            std::vector<double> a = random_field(n_t, n_theta, 7);
            std::vector<double> bsrc = a;
            std::vector<double> da(a.size()), db(a.size());
            const double inv_ht2 = 1.0 / (0.125 * 0.125);
            const double inv_hth2 = 1.0 / (0.49 * 0.49);
            const double dt = 2e-3;
            for (int step = 0; step < 200; ++step) {
                const double ma =
                    ref.relax_step(a.data(), da.data(), n_t, n_theta, inv_ht2, inv_hth2, dt);
                const double mb =
                    vec.relax_step(bsrc.data(), db.data(), n_t, n_theta, inv_ht2, inv_hth2, dt);
                REQUIRE(ma == mb);
                REQUIRE(std::memcmp(da.data(), db.data(), da.size() * sizeof(double)) == 0);
                const double ra = ref.residual_max(da.data(), n_t, n_theta, inv_ht2, inv_hth2);
                const double rb = vec.residual_max(db.data(), n_t, n_theta, inv_ht2, inv_hth2);
                REQUIRE(ra == rb);
                a.swap(da);
                bsrc.swap(db);
            }
            ++tested;
        }
    }
    if (backend_available(KernelBackend::avx2) || backend_available(KernelBackend::neon)) {
        CHECK(tested > 0);
    }
}
