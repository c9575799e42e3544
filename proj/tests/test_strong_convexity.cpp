#include "convexjet/interp1d.hpp"
#include "convexjet/strong_convexity.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace convexjet;

TEST_CASE("tilt_samples")
{
    const SampleSet s(std::vector<double>{0, 1}, {0, 0.05});
    CHECK(tilt_samples(s, 0.0).values() == s.values());
    const auto t = tilt_samples(s, 0.1);
    CHECK(t.value(0) == 0.0);
    CHECK(std::abs(t.value(1)) <= 1e-17);
    CHECK(tilt_samples(SampleSet(std::vector<double>{0, 1, 2}, {0, 0.5, 2}), 1.0).values() ==
          std::vector<double>{0, 0, 0});
    CHECK_THROWS_AS(tilt_samples(s, -1.0), InputError);
}

TEST_CASE("untilt_pw")
{
    const ConvexPW1D G({-1.0, 1.0}, {2.0, 3.0}, 0.0, 1.0);
    const auto same = untilt_pw(G, 0.0);
    CHECK(same.eval(0.7) == G.eval(0.7));
    const ConvexPW1D zero({0.0}, {0.0}, 0.0, 0.0);
    const auto q = untilt_pw(zero, 2.0);
    CHECK(q.eval(3.0) == doctest::Approx(9.0));
    CHECK(q.eval_grad(3.0) == doctest::Approx(6.0));
    const ConvexPW1D affine({0.0}, {1.0}, 0.0, 1.0);
    const auto a = untilt_pw(affine, 1.0);
    CHECK(a.eval(2.0) == doctest::Approx(5.0));
    CHECK(a.eval_grad(2.0) == doctest::Approx(3.0));
    CHECK(untilt_pw(G, 0.5).lip_grad() == doctest::Approx(G.lip_grad() + 0.5));
}

TEST_CASE("tilt then untilt is the identity at the samples")
{
    oracle::Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xs, fs;
        oracle::random_convex_dataset(rng, 5, xs, fs);
        const double eta = rng.uniform(0, 2);
        const SampleSet s(xs, fs);
        const auto t = tilt_samples(s, eta);
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(t.value(i) + 0.5 * eta * xs[i] * xs[i] == doctest::Approx(fs[i]).epsilon(1e-14).scale(1.0));
    }
}

TEST_CASE("flexsc_transform substitution")
{
    const SampleSet s(std::vector<double>{0, 1, 2}, {0, 0.5, 2});
    const WhitneyField f({Jet(0.0, 0.0, 0.0), Jet(1.0, 0.5, 1.0), Jet(2.0, 2.0, 2.0)});
    const auto P = flexsc_transform(f, s, 1.0, 2.0);
    CHECK(P[1].value == 0.25);
    CHECK(P[1].grad1() == 0.5);
    const auto small = flexsc_transform(f, s, 1e-300, 2.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(small[i].value == f[i].value);
        CHECK(small[i].grad1() == f[i].grad1());
    }
    const WhitneyField wrong({Jet(0.0, 0.1, 0.0), Jet(1.0, 0.5, 1.0), Jet(2.0, 2.0, 2.0)});
    CHECK_THROWS_AS(flexsc_transform(wrong, s, 1.0, 2.0), InputError);
    CHECK_THROWS_AS(flexsc_transform(f, s, 1.0, 1.0), InputError);
}

TEST_CASE("flexsc_transform is affine per point and keeps anchors")
{
    oracle::Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Point> pts;
        std::vector<double> vals;
        std::vector<Jet> jets;
        for (int i = 0; i < 4; ++i) {
            const Point p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            pts.push_back(p);
            vals.push_back(rng.uniform(-1, 1));
            jets.emplace_back(p, vals.back(), std::vector<double>{rng.uniform(-1, 1), rng.uniform(-1, 1)});
        }
        const SampleSet s(pts, vals);
        const WhitneyField f(jets);
        const double eta = rng.uniform(0.1, 1), p = rng.uniform(1.1, 4);
        const auto P = flexsc_transform(f, s, eta, p);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(P[i].base == s.point(i));
            const double n2 = norm_sq(s.point(i).coords());
            CHECK(P[i].value == doctest::Approx(vals[i] - eta / (2 * p) * n2).epsilon(1e-14).scale(1.0));
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(P[i].gradient[k] == doctest::Approx(f[i].gradient[k] - eta / p * s.point(i)[k]).scale(1.0));
        }
    }
}

TEST_CASE("scprop_extend_1d on jets of x^2/2")
{
    const SampleSet s(std::vector<double>{0, 1, 2}, {0, 0.5, 2});
    const WhitneyField f({Jet(0.0, 0.0, 0.0), Jet(1.0, 0.5, 1.0), Jet(2.0, 2.0, 2.0)});
    const auto F = scprop_extend_1d(f, s, 1.0, 1.0, 2.0);
    CHECK(F.lip_grad() <= 2.5 + 1e-12);
    CHECK(F.is_strongly_convex(0.5, 1e-12));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(F.eval(s.x(i)) == doctest::Approx(s.value(i)).epsilon(1e-12).scale(1.0));
        CHECK(F.eval_grad(s.x(i)) == doctest::Approx(f[i].grad1()).epsilon(1e-12).scale(1.0));
    }
    // Only (eta/p)-strong convexity is promised: the ramp-at-qM profile is
    // a different interpolant from x^2/2 between the samples.
    CHECK(std::abs(F.eval(0.5) - 0.125) > 1e-6);
}

TEST_CASE("scprop_extend_1d on the two-point example")
{
    const double eta = 0.1;
    const SampleSet s(std::vector<double>{0, 1}, {0, eta / 2});
    const WhitneyField f({Jet(0.0, 0.0, 0.0), Jet(1.0, eta / 2, 2 * eta)});
    const auto F = scprop_extend_1d(f, s, eta, 1.0, 2.0);
    CHECK(F.is_strongly_convex(eta / 2, 1e-12));
    CHECK_FALSE(F.is_strongly_convex(eta, 1e-12));
    CHECK(F.eval(0.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(F.eval_grad(0.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(F.eval(1.0) == doctest::Approx(eta / 2).epsilon(1e-12));
    CHECK(F.eval_grad(1.0) == doctest::Approx(2 * eta).epsilon(1e-12));
    CHECK(F.lip_grad() <= 2.0 + eta / 2 + 1e-12);
}

TEST_CASE("scprop_extend_1d single jet and guards")
{
    const SampleSet s(std::vector<double>{1}, {3});
    const WhitneyField f({Jet(1.0, 3.0, -2.0)});
    const auto F = scprop_extend_1d(f, s, 0.4, 1.0, 2.0);
    // a parabola of curvature eta/p through the jet
    for (double x : {-3.0, 0.0, 1.0, 4.0})
        CHECK(F.eval(x) == doctest::Approx(3.0 - 2.0 * (x - 1) + 0.1 * (x - 1) * (x - 1)).epsilon(1e-12));
    CHECK_THROWS_AS(scprop_extend_1d(f, s, 0.0, 1.0, 2.0), InputError);
    CHECK_THROWS_AS(scprop_extend_1d(f, s, 2.0, 1.0, 2.0), InputError);
}

TEST_CASE("oned_sc_reduce and reconstruct")
{
    const SampleSet s(std::vector<double>{0, 1}, {0, 0.05});
    const auto r0 = oned_sc_reduce(s, 0.0, 1.0);
    CHECK(r0.scale == 1.0);
    CHECK(r0.samples.values() == s.values());
    const auto r = oned_sc_reduce(s, 0.1, 1.0);
    CHECK(r.scale == doctest::Approx(1.1));
    CHECK(std::abs(r.samples.value(1)) <= 1e-17);

    const ConvexPW1D G({0.0, 1.0}, {0.0, 2.0}, 0.0, 0.0);
    CHECK(oned_sc_reconstruct(G, 0.0, 1.0).eval(0.5) == G.eval(0.5));
    const auto F = oned_sc_reconstruct(G, 0.5, 1.0);
    CHECK(F.eval(0.5) == doctest::Approx(1.5 * G.eval(0.5) + 0.25 * 0.25));
    CHECK(F.lip_grad() == doctest::Approx(1.5 * G.lip_grad() + 0.5));
    CHECK(F.is_strongly_convex(0.5, 1e-12));
}

TEST_CASE("reduce, select, build, reconstruct stays within 2M + 3 eta")
{
    oracle::Rng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const double eta = rng.uniform(0.05, 0.5), M = 1.0;
        const auto g = oracle::random_convex_pq(rng, M - eta, -2, 2);
        const auto xs = oracle::sorted_points(rng, rng.integer(2, 8), -2, 2, 0.1);
        std::vector<double> fs;
        for (double x : xs) fs.push_back(g(x) + 0.5 * eta * x * x);
        const SampleSet s(xs, fs);
        const auto red = oned_sc_reduce(s, eta, M);
        const auto sel = select_jets(red.samples, M);
        REQUIRE(succeeded(sel));
        const auto G = build_extension(std::get<JetSelection>(sel).field, red.samples, 2 * M);
        const auto F = oned_sc_reconstruct(G, eta, M);
        CHECK(F.lip_grad() <= 2 * M + 3 * eta + 1e-8);
        CHECK(F.is_strongly_convex(eta, 1e-9));
        const auto rep = verify_extension(F, s, 2 * M + 3 * eta, eta, 1e-8);
        CHECK(rep.ok);
    }
}

TEST_CASE("flexsc contract on random admissible fields")
{
    oracle::Rng rng(44);
    int instances = 0;
    while (instances < 200) {
        const double eta = rng.uniform(0.05, 0.5);
        const double p = rng.uniform(1.2, 5.0), q = p / (p - 1);
        const auto g = oracle::random_convex_pq(rng, 1.0, -2, 2);
        const auto xs = oracle::sorted_points(rng, rng.integer(2, 7), -2, 2, 0.1);
        std::vector<double> fs;
        std::vector<Jet> jets;
        for (double x : xs) {
            fs.push_back(g(x) + 0.5 * eta * x * x);
            jets.emplace_back(x, fs.back(), g.grad(x) + eta * x);
        }
        const SampleSet s(xs, fs);
        const WhitneyField f(jets);
        const double M = g.lip_bound() + eta;
        bool hyp = true;
        for (const auto& j : f) hyp = hyp && gamma_membership(j, s, eta);
        hyp = hyp && wells_all_pairs(f, M).ok;
        REQUIRE(hyp);
        const auto P = flexsc_transform(f, s, eta, p);
        CHECK_NOTHROW(check_flexsc_contract(P, q, M));
        for (std::size_t i = 0; i < P.size(); ++i)
            for (std::size_t j = i + 1; j < P.size(); ++j)
                CHECK(wells_compatible(P[i], P[j], q * M).min_residual() >= -1e-9);
        ++instances;
    }
}

TEST_CASE("check_flexsc_contract names the failing pair")
{
    const WhitneyField P({Jet(0.0, 0.0, 0.0), Jet(1.0, 0.0, 5.0)});
    try {
        check_flexsc_contract(P, 2.0, 1.0);
        FAIL("expected a violation");
    } catch (const WellsViolationError& e) {
        CHECK(e.first == 0);
        CHECK(e.second == 1);
        CHECK(e.residual < 0);
    }
}
