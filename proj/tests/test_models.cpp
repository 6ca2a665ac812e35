#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "letterfit/errors.hpp"
#include "letterfit/models.hpp"

using namespace letterfit;

namespace {

// Exact frequencies of a family at given shape parameters, C chosen by the
// normalization so they sum to one.
std::vector<double> generate(ModelId id, ParamVector shape, int n) {
    shape.C = normalize_scale(id, shape, n);
    std::vector<double> freqs(n);
    for (int r = 1; r <= n; ++r)
        freqs[r - 1] = evaluate(id, shape, r, n);
    return freqs;
}

} // namespace

TEST_SUITE("models") {
    TEST_CASE("registry matches the published parameter accounting") {
        const auto& reg = model_registry();
        REQUIRE(reg.size() == 10);
        const int expected_p[] = {0, 1, 1, 1, 2, 2, 2, 2, 2, 3};
        for (int i = 0; i < 10; ++i) {
            CHECK(reg[i].eq == i + 1);
            CHECK(reg[i].p == expected_p[i]);
        }
        CHECK(model_spec(ModelId::gusein_zade).needs_n);
        CHECK(model_spec(ModelId::weibull).needs_n);
        CHECK(model_spec(ModelId::cocho_beta).needs_n);
        CHECK_FALSE(model_spec(ModelId::power_law).needs_n);
        CHECK(model_by_name("cocho_beta") != nullptr);
        CHECK(model_by_name("cocho_beta")->id == ModelId::cocho_beta);
        CHECK(model_by_name("nope") == nullptr);
    }

    TEST_CASE("gusein evaluation at the published scale") {
        ParamVector p;
        p.C = 0.0374;
        CHECK(evaluate(ModelId::gusein_zade, p, 1, 26) ==
              doctest::Approx(0.0374 * std::log(27.0)));
        CHECK(evaluate(ModelId::gusein_zade, p, 1, 26) == doctest::Approx(0.1233).epsilon(1e-3));
    }

    TEST_CASE("weibull with a=1 equals gusein at every rank") {
        ParamVector p;
        p.C = 0.041;
        p.a = 1.0;
        for (int r = 1; r <= 26; ++r)
            CHECK(evaluate(ModelId::weibull, p, r, 26) ==
                  doctest::Approx(evaluate(ModelId::gusein_zade, p, r, 26)).epsilon(1e-15));
    }

    TEST_CASE("family nesting identities at the reducing parameter values") {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> unit(0.05, 1.2);
        for (int trial = 0; trial < 50; ++trial) {
            ParamVector p;
            p.C = unit(rng);
            p.a = unit(rng);
            int n = 10 + trial % 18;
            int r = 1 + trial % n;
            double power = evaluate(ModelId::power_law, p, r, n);
            ParamVector cocho = p;
            cocho.b = 0.0; // (n+1-r)^0 = 1
            CHECK(evaluate(ModelId::cocho_beta, cocho, r, n) == doctest::Approx(power).epsilon(1e-14));
            ParamVector yule = p;
            yule.b = 1.0; // 1^r = 1
            CHECK(evaluate(ModelId::yule, yule, r, n) == doctest::Approx(power).epsilon(1e-14));
        }
    }

    TEST_CASE("cocho with zero shapes is the uniform limit") {
        ParamVector p;
        p.a = 0.0;
        p.b = 0.0;
        p.C = normalize_scale(ModelId::cocho_beta, p, 10);
        CHECK(p.C == doctest::Approx(0.1));
        for (int r = 1; r <= 10; ++r)
            CHECK(evaluate(ModelId::cocho_beta, p, r, 10) == doctest::Approx(0.1));
    }

    TEST_CASE("domain errors") {
        ParamVector p;
        p.C = 1.0;
        p.b = 0.0;
        CHECK_THROWS_AS(evaluate(ModelId::yule, p, 1, 26), DomainError);
        p.b = -0.5;
        CHECK_THROWS_AS(evaluate(ModelId::yule, p, 2, 26), DomainError);
        p.b = 0.9;
        CHECK_THROWS_AS(evaluate(ModelId::yule, p, 0, 26), DomainError);
        CHECK_THROWS_AS(evaluate(ModelId::yule, p, 27, 26), DomainError);
    }

    TEST_CASE("normalize_scale against direct summation") {
        // Independent oracle: sum the generator term by term.
        double sum = 0.0;
        for (int r = 1; r <= 26; ++r)
            sum += std::log(27.0 / r);
        ParamVector none;
        CHECK(normalize_scale(ModelId::gusein_zade, none, 26) ==
              doctest::Approx(1.0 / sum).epsilon(1e-14));

        ParamVector flat;
        flat.a = 0.0;
        CHECK(normalize_scale(ModelId::power_law, flat, 10) == doctest::Approx(0.1));

        ParamVector cocho;
        cocho.a = 0.210;
        cocho.b = 1.35;
        double gsum = 0.0;
        for (int r = 1; r <= 26; ++r)
            gsum += std::pow(27.0 - r, 1.35) / std::pow(r, 0.210);
        CHECK(normalize_scale(ModelId::cocho_beta, cocho, 26) ==
              doctest::Approx(1.0 / gsum).epsilon(1e-14));
    }

    TEST_CASE("normalized frequencies sum to one for every family") {
        ParamVector shapes[10];
        shapes[1].a = 0.616;
        shapes[2].a = 0.118;
        shapes[3].a = 0.0401;
        shapes[4].a = 0.935;
        shapes[5].a = 0.0280;
        shapes[5].b = 0.00325;
        shapes[6].a = 0.0543;
        shapes[6].b = 0.897;
        shapes[7].a = -1.05;
        shapes[7].b = -1.31;
        shapes[8].a = 0.210;
        shapes[8].b = 1.35;
        shapes[9].a = 0.245;
        shapes[9].b = -0.00242;
        shapes[9].c = 0.0813;
        for (int i = 0; i < 10; ++i) {
            auto freqs = generate(model_registry()[i].id, shapes[i], 26);
            double sum = 0.0;
            for (double f : freqs)
                sum += f;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("multiplicative families stay positive for C > 0") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> shape(-2.0, 2.0);
        const ModelId ids[] = {ModelId::gusein_zade, ModelId::power_law, ModelId::exponential,
                               ModelId::weibull,     ModelId::yule,      ModelId::menzerath_altmann,
                               ModelId::cocho_beta};
        for (int trial = 0; trial < 200; ++trial) {
            ModelId id = ids[trial % 7];
            ParamVector p;
            p.C = 0.01 + std::abs(shape(rng));
            p.a = shape(rng);
            p.b = (id == ModelId::yule) ? 0.05 + std::abs(shape(rng)) : shape(rng);
            int n = 5 + trial % 24;
            for (int r = 1; r <= n; ++r)
                CHECK(evaluate(id, p, r, n) > 0.0);
        }
    }

    TEST_CASE("linearize recovers generating parameters exactly") {
        // Generate-then-fit oracle for every log-linearizable family.
        struct Case {
            ModelId id;
            double a, b;
        };
        const Case cases[] = {
            {ModelId::power_law, 0.6, 0.0},    {ModelId::exponential, 0.118, 0.0},
            {ModelId::weibull, 0.935, 0.0},    {ModelId::yule, 0.0543, 0.897},
            {ModelId::menzerath_altmann, -1.05, -1.31}, {ModelId::cocho_beta, 0.2, 1.4},
        };
        for (const auto& c : cases) {
            ParamVector shape;
            shape.a = c.a;
            shape.b = c.b;
            auto freqs = generate(c.id, shape, 26);
            auto seed = linearize(c.id, freqs, 26);
            CAPTURE(model_spec(c.id).name);
            CHECK(seed.a == doctest::Approx(c.a).epsilon(1e-9));
            if (model_spec(c.id).uses_b)
                CHECK(seed.b == doctest::Approx(c.b).epsilon(1e-9));
        }
    }

    TEST_CASE("linearize of the linear families is exact least squares") {
        ParamVector shape;
        shape.a = 0.0401;
        auto freqs = generate(ModelId::logarithmic, shape, 26);
        auto seed = linearize(ModelId::logarithmic, freqs, 26);
        CHECK(seed.a == doctest::Approx(0.0401).epsilon(1e-12));

        ParamVector q;
        q.a = 0.0280;
        q.b = 0.00325;
        auto qf = generate(ModelId::quadratic_log, q, 26);
        auto qseed = linearize(ModelId::quadratic_log, qf, 26);
        CHECK(qseed.a == doctest::Approx(0.0280).epsilon(1e-12));
        CHECK(qseed.b == doctest::Approx(0.00325).epsilon(1e-12));
    }

    TEST_CASE("frappat seeds from the exponential transform") {
        ParamVector shape;
        shape.a = 0.245;
        shape.b = -0.00242;
        shape.c = 0.0813;
        auto freqs = generate(ModelId::frappat, shape, 26);
        auto seed = linearize(ModelId::frappat, freqs, 26);
        CHECK(seed.C == 0.0);
        CHECK(seed.b == 0.0);
        CHECK(seed.c > 0.0);
        CHECK(std::isfinite(seed.a));
    }

    TEST_CASE("linearize needs p+2 positive ranks") {
        std::vector<double> sparse(26, 0.0);
        sparse[0] = 0.7;
        sparse[1] = 0.3;
        CHECK_THROWS_AS(linearize(ModelId::cocho_beta, sparse, 26), InsufficientDataError);
        CHECK_THROWS_AS(linearize(ModelId::gusein_zade, std::vector<double>(26, 0.0), 26),
                        InsufficientDataError);
    }

    TEST_CASE("piecewise evaluation switches constants at the breakpoint") {
        PiecewiseSpec spec;
        spec.breakpoints = {22};
        spec.constants = {0.04065, 0.01394};
        const int n = 26;
        CHECK(evaluate_piecewise(spec, 21, n) ==
              doctest::Approx(0.04065 * std::log(27.0 / 21)));
        CHECK(evaluate_piecewise(spec, 22, n) ==
              doctest::Approx(0.01394 * std::log(27.0 / 22)));

        PiecewiseSpec one;
        one.constants = {0.0374};
        ParamVector g;
        g.C = 0.0374;
        for (int r = 1; r <= n; ++r)
            CHECK(evaluate_piecewise(one, r, n) ==
                  doctest::Approx(evaluate(ModelId::gusein_zade, g, r, n)).epsilon(1e-15));

        PiecewiseSpec equal;
        equal.breakpoints = {10};
        equal.constants = {0.0374, 0.0374};
        for (int r = 1; r <= n; ++r)
            CHECK(evaluate_piecewise(equal, r, n) ==
                  doctest::Approx(evaluate(ModelId::gusein_zade, g, r, n)).epsilon(1e-15));
    }
}
