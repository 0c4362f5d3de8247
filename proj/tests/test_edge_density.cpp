/*
 * Edge-density machinery.  Exact two-point fixtures (deterministic dynamic
 * programming, truncation error < 2e-9, same table as the walk suite):
 *
 *     T      Es_A(0)       Es_A(-e1)     Es_A(e2)      E_0[H 1{H<inf}]
 *     2      0.811611087   0.871581513   0.858229567   0.300297046
 *
 * The closed form and the direct estimator share no algebra, so their
 * agreement is a genuine cross-check of both.
 */
#include <doctest.h>

#include <cmath>

#include "fri/edge_density.hpp"

using namespace fri;

namespace {

EstimateWithError exact(double v) { return EstimateWithError{v, 0.0, 0}; }

EdgeDensityInputs dp_inputs_T2() {
    return EdgeDensityInputs{exact(0.871581513), exact(0.858229567), exact(0.811611087),
                             exact(0.300297046)};
}

}  // namespace

TEST_SUITE("edge_density") {
    TEST_CASE("closed-form identities hold on random input tuples") {
        RngStream rng = RngStream::derive(600, {StreamPurpose::walk_estimator, 50, 0});
        for (int trial = 0; trial < 1000; ++trial) {
            int d = 3 + int(rng.below(10));
            double T = 0.05 + 10.0 * rng.next_unit();
            double u = 0.01 + 2.0 * rng.next_unit();
            // Escape probabilities in a plausible band, return moment small.
            double E2 = 0.3 + 0.65 * rng.next_unit();
            double E1 = E2 + (1.0 - E2) * 0.5 * rng.next_unit();
            double Es = 0.3 + 0.65 * rng.next_unit();
            EdgeDensityInputs in{exact(E1), exact(E2), exact(Es), exact(0.3)};
            ClosedFormResult r = closed_form(in, d, u, T);

            CHECK(r.g == doctest::Approx(1.0 - r.pF_0).epsilon(1e-12));
            CHECK(r.pF_x2 >= r.pF_0);        // lateral sees one escape more
            CHECK(r.pF_minus_x1 >= r.pF_0);  // collinear likewise
            CHECK(r.pF_0 > 0.0);
            CHECK(r.pF_x2 <= 1.0);
            CHECK(r.pF_minus_x1 <= 1.0);
            CHECK(r.p > 0.0);
            CHECK(r.p < 1.0);
            CHECK(r.p_stderr == 0.0);  // exact inputs carry no error

            // p increases with the intensity.
            ClosedFormResult r2 = closed_form(in, d, 2.0 * u, T);
            CHECK(r2.p > r.p);
        }
    }

    TEST_CASE("input validation") {
        EdgeDensityInputs in = dp_inputs_T2();
        CHECK_NOTHROW(closed_form(in, 3, 1.0 / 6.0, 2.0));

        EdgeDensityInputs bad = in;
        bad.E1 = exact(1.2);
        CHECK_THROWS_AS(closed_form(bad, 3, 1.0 / 6.0, 2.0), std::invalid_argument);
        bad = in;
        bad.Es = exact(-0.1);
        CHECK_THROWS_AS(closed_form(bad, 3, 1.0 / 6.0, 2.0), std::invalid_argument);
        bad = in;
        bad.return_moment = exact(-0.5);
        CHECK_THROWS_AS(closed_form(bad, 3, 1.0 / 6.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(closed_form(in, 3, 0.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(closed_form(in, 3, 1.0 / 6.0, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(closed_form(in, 2, 1.0 / 6.0, 2.0), std::invalid_argument);

        RngStream rng = RngStream::derive(601, {StreamPurpose::walk_estimator, 51, 0});
        CHECK_THROWS_AS(estimate_inputs(rng, 3, 2.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(edge_density_direct(rng, 3, 1.0, 2.0, 0), std::invalid_argument);
    }

    TEST_CASE("degenerate inputs reproduce the free-fiber limit") {
        // All escapes 1, no returns: a = 1, g = (T/(2d))/(T+1), and the
        // derivative collapses to (1/(2d))/(T+1)^2.
        EdgeDensityInputs in{exact(1.0), exact(1.0), exact(1.0), exact(0.0)};
        for (double T : {0.1, 1.0, 4.0}) {
            ClosedFormResult r = closed_form(in, 3, 0.5, T);
            CHECK(r.a == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.g == doctest::Approx((T / 6.0) / (T + 1.0)).epsilon(1e-12));
            double expo = 4.0 * 3.0 * 0.5 * r.g;  // f = 1
            CHECK(r.p == doctest::Approx(-std::expm1(-expo)).epsilon(1e-12));
            CHECK(fg_derivative(in, 3, T) == doctest::Approx((1.0 / 6.0) / ((T + 1.0) * (T + 1.0)))
                                                 .epsilon(1e-12));
        }
    }

    TEST_CASE("estimated inputs match the exact two-point values") {
        RngStream rng = RngStream::derive(602, {StreamPurpose::walk_estimator, 52, 0});
        EdgeDensityInputs in = estimate_inputs(rng, 3, 2.0, 200000);
        CHECK(std::abs(in.E1.value - 0.871581513) < 4.0 * in.E1.stderr_);
        CHECK(std::abs(in.E2.value - 0.858229567) < 4.0 * in.E2.stderr_);
        CHECK(std::abs(in.Es.value - 0.811611087) < 4.0 * in.Es.stderr_);
        CHECK(std::abs(in.return_moment.value - 0.300297046) < 4.0 * in.return_moment.stderr_);
        CHECK(in.E1.n_samples == 200000);

        // Collinear escape strictly exceeds lateral escape (exact gap 0.0134).
        double gap_sigma = std::sqrt(in.E1.stderr_ * in.E1.stderr_ + in.E2.stderr_ * in.E2.stderr_);
        CHECK(in.E1.value - in.E2.value > 4.0 * gap_sigma);
    }

    TEST_CASE("small-T inputs approach the immortal-free limit") {
        RngStream rng = RngStream::derive(603, {StreamPurpose::walk_estimator, 53, 0});
        EdgeDensityInputs in = estimate_inputs(rng, 3, 0.05, 50000);
        // Es >= 1/(T+1) = 0.952 for every start, and returns are rare.
        CHECK(in.E1.value > 0.93);
        CHECK(in.E2.value > 0.93);
        CHECK(in.Es.value > 0.93);
        CHECK(in.return_moment.value < 0.1);
    }

    TEST_CASE("closed form and direct estimator agree") {
        // Closed form fed the exact inputs against the direct realization of
        // the fiber families; fully independent code paths.
        ClosedFormResult closed = closed_form(dp_inputs_T2(), 3, 1.0 / 6.0, 2.0);
        RngStream rng = RngStream::derive(604, {StreamPurpose::direct_edge, 0, 0});
        EstimateWithError direct = edge_density_direct(rng, 3, 1.0 / 6.0, 2.0, 200000);
        CHECK(std::abs(direct.value - closed.p) < 3.5 * direct.stderr_);

        // Monte Carlo inputs land on the same value within their own error.
        RngStream rng2 = RngStream::derive(605, {StreamPurpose::walk_estimator, 54, 0});
        ClosedFormResult mc = closed_form(estimate_inputs(rng2, 3, 2.0, 200000), 3, 1.0 / 6.0, 2.0);
        CHECK(mc.p_stderr > 0.0);
        CHECK(std::abs(mc.p - closed.p) < 4.0 * mc.p_stderr);
    }

    TEST_CASE("vanishing intensity produces an empty edge") {
        RngStream rng = RngStream::derive(606, {StreamPurpose::direct_edge, 1, 0});
        EstimateWithError est = edge_density_direct(rng, 3, 1e-12, 2.0, 1000);
        CHECK(est.value == 0.0);
        CHECK(est.stderr_ == 0.0);
    }

    TEST_CASE("derivative limit, non-monotone low d, monotone high d") {
        // T -> 0+: (f*g)' -> 1/(2d).
        RngStream r0 = RngStream::derive(607, {StreamPurpose::walk_estimator, 55, 0});
        double deriv0 = fg_derivative(estimate_inputs(r0, 3, 1e-3, 100000), 3, 1e-3);
        CHECK(std::abs(deriv0 - 1.0 / 6.0) < 0.1 / 6.0);

        // Large T flips the sign in d = 3 and d = 4 (t-statistics beyond 60
        // at this sample size) but not in d = 20.
        RngStream r1 = RngStream::derive(607, {StreamPurpose::walk_estimator, 56, 0});
        CHECK(fg_derivative(estimate_inputs(r1, 3, 500.0, 100000), 3, 500.0) < 0.0);
        RngStream r2 = RngStream::derive(607, {StreamPurpose::walk_estimator, 57, 0});
        CHECK(fg_derivative(estimate_inputs(r2, 4, 500.0, 100000), 4, 500.0) < 0.0);
        RngStream r3 = RngStream::derive(607, {StreamPurpose::walk_estimator, 58, 0});
        CHECK(fg_derivative(estimate_inputs(r3, 20, 5.0, 30000), 20, 5.0) > 0.0);
        RngStream r4 = RngStream::derive(607, {StreamPurpose::walk_estimator, 59, 0});
        CHECK(fg_derivative(estimate_inputs(r4, 20, 500.0, 30000), 20, 500.0) > 0.0);
    }

    TEST_CASE("Bernoulli coupling thresholds") {
        BernoulliCoupling c = bernoulli_coupling(1.0, 1.0, 0.25);
        CHECK(c.density == doctest::Approx(-std::expm1(-0.5)).epsilon(1e-12));
        CHECK(c.supercritical);  // 1/4 >= -log(0.75)/2 = 0.1438

        // uT/(T+1)^2 peaks at T = 1 for fixed u.
        CHECK(bernoulli_coupling(1.0, 1.0).density > bernoulli_coupling(1.0, 0.5).density);
        CHECK(bernoulli_coupling(1.0, 1.0).density > bernoulli_coupling(1.0, 2.0).density);

        CHECK(!bernoulli_coupling(1.0, 1000.0).supercritical);
        CHECK(!bernoulli_coupling(0.05, 1.0).supercritical);
        CHECK(bernoulli_coupling(0.6, 1.0).supercritical);  // 0.15 >= 0.14305

        CHECK_THROWS_AS(bernoulli_coupling(0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(bernoulli_coupling(1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(bernoulli_coupling(1.0, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(bernoulli_coupling(1.0, 1.0, 1.0), std::invalid_argument);
    }

    TEST_CASE("good-edge field: subset invariant and Bernoulli density") {
        FriConfig c;
        c.d = 3;
        c.u = 1.0;
        c.T = 1.0;
        c.box = Box::cube(3, 0, 8);
        c.mode = SamplerMode::exact_boundary;
        RngStream rng = RngStream::derive(608, {StreamPurpose::coupling, 0, 0});
        CHECK_THROWS_AS(sample_coupled_good_edges(c, rng), std::invalid_argument);

        c.mode = SamplerMode::padded_direct;
        const int64_t reps = 200;
        int64_t good_total = 0, valid_slots = 0, violations = 0;
        for (int64_t r = 0; r < reps; ++r) {
            RngStream s = RngStream::derive(608, {StreamPurpose::coupling, 1, uint64_t(r)});
            CoupledSample cs = sample_coupled_good_edges(c, s);
            good_total += cs.good.occupied_count();
            cs.good.for_each_occupied([&](int64_t slot) {
                if (!cs.fri.edges.test_slot(slot)) ++violations;
            });
            if (r == 0) {
                for (int64_t slot = 0; slot < cs.good.slot_count(); ++slot)
                    if (cs.good.valid_slot(slot)) ++valid_slots;
            }
        }
        CHECK(violations == 0);

        double want = bernoulli_coupling(c.u, c.T).density;  // 1 - e^{-1/2}
        double n = double(valid_slots) * double(reps);
        double got = double(good_total) / n;
        CHECK(std::abs(got - want) < 4.0 * std::sqrt(want * (1.0 - want) / n));
    }
}
