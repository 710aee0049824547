#include "pulseshare/errors.hpp"
#include "pulseshare/fock.hpp"
#include "pulseshare/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace pulseshare;

namespace {

FieldVector basis(std::int64_t n, std::int64_t cutoff) { return FieldVector::number_state(n, cutoff); }

}  // namespace

TEST_CASE("coherent state amplitudes") {
    SUBCASE("alpha = 0 is the vacuum") {
        const FieldVector v = coherent_state(CoherentSpec{}, 10);
        CHECK(v[0] == Complex(1.0, 0.0));
        for (int n = 1; n <= 10; ++n) CHECK(v[n] == Complex(0.0, 0.0));
    }
    SUBCASE("alpha = 2 has Poisson moments") {
        const NumberMoments m = number_moments(coherent_state(CoherentSpec{{2.0, 0.0}}, 60));
        CHECK(std::abs(m.mean - 4.0) <= 1e-10);
        CHECK(std::abs(m.variance - 4.0) <= 1e-9);
    }
    SUBCASE("default window at nbar = 1e4 loses less than 1e-12") {
        const double nbar = 1e4;
        const std::int64_t cutoff = default_cutoff(nbar);
        CHECK(oracle::poisson_tail_above(nbar, cutoff) < 1e-12);
        const FieldVector v = coherent_state(CoherentSpec::from_nbar(nbar), cutoff);
        CHECK(1.0 - v.squared_norm() < 1e-12);
    }
    SUBCASE("amplitudes match the closed form") {
        for (double nbar : {0.5, 30.0, 1e4, 1e6}) {
            const FieldVector v = coherent_window(CoherentSpec::from_nbar(nbar));
            const auto mid = static_cast<std::int64_t>(nbar);
            for (std::int64_t n : {v.floor(), mid, mid + 3, v.cutoff()}) {
                const double expect = std::sqrt(oracle::poisson_pmf(nbar, n));
                // the oracle's lgamma loses about one ulp of n̄ per unit of log
                CHECK(std::abs(v[n].real() - expect) <= 1e-14 * std::max(nbar, 100.0) * expect);
            }
        }
    }
    SUBCASE("complex alpha carries the phase e^{in arg alpha}") {
        const Complex alpha = std::polar(3.0, 0.7);
        const FieldVector v = coherent_state(CoherentSpec{alpha}, 80);
        for (int n : {0, 1, 5, 9}) {
            const Complex expect = std::polar(std::sqrt(oracle::poisson_pmf(9.0, n)), 0.7 * n);
            CHECK(std::abs(v[n] - expect) < 1e-14);
        }
    }
    SUBCASE("a cutoff that clips the distribution throws") {
        CHECK_THROWS_AS(coherent_state(CoherentSpec::from_nbar(100.0), 110), CutoffTooSmall);
        CHECK_THROWS_AS(coherent_state(CoherentSpec::from_nbar(1e4), default_cutoff(1e4), 9900),
                        NumericalGuardError);
    }
}

TEST_CASE("window rules") {
    CHECK(default_cutoff(0.0) == 20);
    CHECK(default_cutoff(100.0) == 240);
    CHECK(default_floor(100.0) == 0);
    CHECK(default_floor(1e4) == 8780);
    CHECK(default_cutoff(1e4) == 11220);
}

TEST_CASE("phase shifts") {
    SUBCASE("lower maps |5> to |4>") {
        const ShiftResult r = phase_shift(basis(5, 10), PhaseShift::lower);
        CHECK(r.field[4] == Complex(1.0, 0.0));
        CHECK(r.field.squared_norm() == 1.0);
        CHECK(r.leaked == 0.0);
    }
    SUBCASE("lower annihilates the vacuum") {
        const ShiftResult r = phase_shift(basis(0, 10), PhaseShift::lower);
        CHECK(r.field.squared_norm() == 0.0);
        CHECK(r.leaked == 1.0);
    }
    SUBCASE("raise annihilates the cutoff") {
        const ShiftResult r = phase_shift(basis(10, 10), PhaseShift::raise);
        CHECK(r.field.squared_norm() == 0.0);
    }
    SUBCASE("coherent nbar = 1e4 keeps 1 - |c0|^2") {
        const double nbar = 1e4;
        const FieldVector v = coherent_state(CoherentSpec::from_nbar(nbar), default_cutoff(nbar));
        const ShiftResult r = phase_shift(v, PhaseShift::lower);
        CHECK(std::abs(r.field.squared_norm() - (v.squared_norm() - std::norm(v[0]))) < 1e-15);
        CHECK(r.field.squared_norm() >= 1.0 - 1e-12);
        for (std::int64_t n : {9000, 10000, 10500}) CHECK(r.field[n - 1] == v[n]);
    }
    SUBCASE("lower then raise is the identity away from the edges") {
        FieldVector v(0, 12);
        AmplitudeVector a = AmplitudeVector::Zero(13);
        for (int n = 1; n < 12; ++n) a[n] = Complex(std::sin(n + 0.3), std::cos(2.0 * n));
        v = FieldVector(0, a);
        const FieldVector back = phase_shift(phase_shift(v, PhaseShift::lower).field, PhaseShift::raise).field;
        const FieldVector fwd = phase_shift(phase_shift(v, PhaseShift::raise).field, PhaseShift::lower).field;
        CHECK(back.amplitudes() == v.amplitudes());
        CHECK(fwd.amplitudes() == v.amplitudes());
    }
}

TEST_CASE("ladder operators") {
    SUBCASE("a|1> = |0>") {
        const ShiftResult r = apply_ladder(basis(1, 5), Ladder::annihilate, 1);
        CHECK(r.field[0] == Complex(1.0, 0.0));
        CHECK(r.field.squared_norm() == 1.0);
    }
    SUBCASE("times = 0 is the identity") {
        const FieldVector v = coherent_state(CoherentSpec::from_nbar(3.0), 60);
        CHECK(apply_ladder(v, Ladder::create, 0).field.amplitudes() == v.amplitudes());
    }
    SUBCASE("||a+^2 alpha||^2 at nbar = 10 matches the dense oracle") {
        const FieldVector v = coherent_state(CoherentSpec::from_nbar(10.0), 120);
        const double got = apply_ladder(v, Ladder::create, 2).field.squared_norm();
        const double dense = oracle::n2sq_dense(2, 10.0, 160);
        CHECK(std::abs(got - dense) <= 1e-9 * dense);
        CHECK(std::abs(got - 142.0) <= 1e-9 * 142.0);
    }
    SUBCASE("a a+ = n + 1") {
        const FieldVector v = coherent_state(CoherentSpec::from_nbar(40.0), 200);
        const FieldVector aad =
            apply_ladder(apply_ladder(v, Ladder::create, 1).field, Ladder::annihilate, 1).field;
        for (std::int64_t n = 0; n < 200; ++n)
            CHECK(std::abs(aad[n] - static_cast<double>(n + 1) * v[n]) <= 1e-12);
    }
    SUBCASE("pushing mass past the cutoff throws") {
        CHECK_THROWS_AS(apply_ladder(basis(5, 6), Ladder::create, 2), CutoffTooSmall);
        CHECK_THROWS_AS(apply_ladder(basis(5, 6), Ladder::create, -1), ConfigError);
    }
}

TEST_CASE("inner products") {
    CHECK(inner(basis(3, 8), basis(3, 8)) == Complex(1.0, 0.0));
    CHECK(inner(basis(3, 8), basis(4, 8)) == Complex(0.0, 0.0));
    const FieldVector a = coherent_state(CoherentSpec{{1.0, 0.0}}, 80);
    const FieldVector b = coherent_state(CoherentSpec{{2.0, 0.0}}, 80);
    CHECK(std::abs(std::norm(inner(a, b)) - std::exp(-1.0)) <= 1e-10);
    // direct sum of closed-form amplitudes
    double direct = 0.0;
    for (int n = 0; n <= 80; ++n) direct += std::sqrt(oracle::poisson_pmf(1.0, n) * oracle::poisson_pmf(4.0, n));
    CHECK(std::abs(inner(a, b).real() - direct) <= 1e-14);
    CHECK_THROWS_AS(inner(basis(1, 4), basis(1, 5)), ConfigError);
}

TEST_CASE("number moments") {
    const NumberMoments seven = number_moments(basis(7, 10));
    CHECK(seven.mean == 7.0);
    CHECK(seven.variance == 0.0);

    AmplitudeVector a = AmplitudeVector::Zero(3);
    a[0] = a[2] = 1.0 / std::sqrt(2.0);
    const NumberMoments sup = number_moments(FieldVector(0, a));
    CHECK(std::abs(sup.mean - 1.0) < 1e-15);
    CHECK(std::abs(sup.variance - 1.0) < 1e-15);

    const NumberMoments c25 = number_moments(coherent_window(CoherentSpec::from_nbar(25.0)));
    CHECK(std::abs(c25.mean - 25.0) <= 25e-9);
    CHECK(std::abs(c25.variance - 25.0) <= 25e-9);

    CHECK_THROWS_AS(number_moments(FieldVector(0, 4)), ConfigError);
}

TEST_CASE("coherent moments across nbar in [1, 1e5]") {
    for (double nbar : {1.0, 3.7, 10.0, 99.5, 1e3, 12345.6, 1e5}) {
        CAPTURE(nbar);
        const NumberMoments m = number_moments(coherent_window(CoherentSpec::from_nbar(nbar)));
        CHECK(std::abs(m.mean - nbar) <= 1e-9 * nbar);
        CHECK(std::abs(m.variance - nbar) <= 1e-8 * nbar);
    }
}

TEST_CASE("displaced characteristic function") {
    CHECK(displaced_char(123.0, 0.0) == Complex(1.0, 0.0));
    CHECK(displaced_char(0.0, 0.37) == Complex(1.0, 0.0));
    for (double nbar : {1.0, 10.0, 300.0, 1e4})
        for (double lambda : {-0.1, -0.013, 1e-4, 0.005, 0.05, 0.1}) {
            CAPTURE(nbar);
            CAPTURE(lambda);
            CHECK(std::abs(displaced_char(nbar, lambda) - oracle::poisson_char_direct(nbar, lambda)) <= 1e-10);
        }
}
