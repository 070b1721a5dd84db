#include "frogcert/bounds.hpp"

#include <stdexcept>

#include "frogcert/operators.hpp"
#include "frogcert/pgf.hpp"

namespace frogcert {

namespace {

void require_rate(double a) {
    if (!(a >= BOUNDS_MIN_RATE))
        throw std::invalid_argument(
            "bounds: rate must be >= 3 (validity threshold of the l/h/Psi family)");
}

// e^{(p*a/q)(x - s)} with p, q small exact integers and s an exact double.
Interval exp_scaled(double a, std::int64_t p, std::int64_t q, Interval x,
                    double s) {
    const Interval coef =
        iv_div_exact(iv_mul_exact(iv_point(a), static_cast<double>(p)),
                     static_cast<double>(q));
    return iv_exp(iv_mul(coef, iv_sub(x, iv_point(s))));
}

Interval quarter_root(Interval v) { return iv_sqrt(iv_sqrt(v)); }

// a^{9/4} = a^2 * a^{1/4}
Interval pow_9_4(double a) {
    const Interval av = iv_point(a);
    return iv_mul(iv_sq(av), quarter_root(av));
}

// a^{-9/4} = (1/a)^2 * (1/a)^{1/4}; 1/a is a division by an exact scalar.
Interval pow_neg_9_4(double a) {
    const Interval inv = iv_div_exact(iv_point(1.0), a);
    return iv_mul(iv_sq(inv), quarter_root(inv));
}

} // namespace

BoundParams bound_params(double a) {
    require_rate(a);
    const Interval em3 = exp_scaled(a, -1, 3, iv_point(1.0), 0.0); // e^{-a/3}
    BoundParams p;
    p.a = a;
    p.c = iv_sub(iv_ratio(3, 2), iv_mul(iv_ratio(3, 4), em3));
    p.d = iv_sub(iv_point(1.0), iv_mul(iv_ratio(7, 12), em3));
    p.ca = pow_neg_9_4(a);
    return p;
}

Interval l_upper(double a, Interval x) {
    require_rate(a);
    const BoundParams p = bound_params(a);
    const Interval t1 = iv_mul(iv_div_exact(iv_add(x, iv_point(3.0)), 4.0),
                               exp_scaled(a, 1, 1, x, 1.0));
    const Interval t2 = iv_mul(iv_div_exact(iv_add(x, iv_point(1.0)), 4.0),
                               exp_scaled(a, 1, 3, x, 3.0));
    const Interval t3 = iv_mul(p.c, exp_scaled(a, 2, 3, x, 2.0));
    return iv_add(iv_add(t1, t2), t3);
}

Interval h_upper(double a, Interval x) {
    require_rate(a);
    const BoundParams p = bound_params(a);
    const Interval t1 = iv_mul(iv_div_exact(iv_add(x, iv_point(3.0)), 4.0),
                               exp_scaled(a, 1, 1, x, 1.0));
    const Interval t2 = iv_mul(iv_div_exact(iv_add(x, iv_point(1.0)), 12.0),
                               exp_scaled(a, 1, 3, x, 3.0));
    const Interval t3 = iv_mul(p.d, exp_scaled(a, 2, 3, x, 2.0));
    return iv_add(iv_add(t1, t2), t3);
}

Interval psi(double a, Interval x) {
    require_rate(a);
    const Interval x2_3 = iv_div_exact(iv_add(x, iv_point(2.0)), 3.0);
    const Interval x7_8 = iv_div_exact(iv_add(x, iv_point(7.0)), 8.0);
    const Interval t1 = iv_mul(iv_mul(x2_3, iv_sq(x7_8)),
                               exp_scaled(a, 1, 1, x, 1.0));

    const Interval x1_3 = iv_div_exact(iv_add(x, iv_point(1.0)), 3.0);
    const Interval x6_8 = iv_div_exact(iv_add(x, iv_point(6.0)), 8.0);
    const Interval t2 = iv_mul(iv_mul(x1_3, x6_8), exp_scaled(a, 1, 2, x, 2.0));

    // (x + 1/3)/3 = (3x + 1)/9
    const Interval x13_9 =
        iv_div_exact(iv_add(iv_mul_exact(x, 3.0), iv_point(1.0)), 9.0);
    const Interval x2_8 = iv_div_exact(iv_add(x, iv_point(2.0)), 8.0);
    const Interval t3 = iv_mul(iv_mul(x13_9, x2_8), exp_scaled(a, 1, 6, x, 6.0));

    const Interval t4 = iv_mul(iv_ratio(41, 9), exp_scaled(a, 2, 3, x, 2.0));
    return iv_add(iv_add(t1, t2), iv_add(t3, t4));
}

Interval q_func(double a, Interval x) {
    require_rate(a);
    return iv_mul(exp_scaled(a, -1, 1, x, 1.0), psi(a, x));
}

std::string region_name(Region r) {
    switch (r) {
    case Region::i: return "i";
    case Region::ii: return "ii";
    case Region::iii: return "iii";
    case Region::iv: return "iv";
    }
    return "?";
}

std::vector<RegionReport> region_constants(double a) {
    require_rate(a);
    const Interval one = iv_point(1.0);
    std::vector<RegionReport> out;

    // (i): (13/24) a^{-1/4} + (7/12) a^{9/4} e^{-a/2} + (85/18) a^{9/4} e^{-2a/3}
    //      must stay below 7/12 - 1/20.
    {
        const Interval a94 = pow_9_4(a);
        const Interval am14 = quarter_root(iv_div_exact(one, a));
        Interval v = iv_mul(iv_ratio(13, 24), am14);
        v = iv_add(v, iv_mul(iv_mul(iv_ratio(7, 12), a94),
                             exp_scaled(a, -1, 2, one, 0.0)));
        v = iv_add(v, iv_mul(iv_mul(iv_ratio(85, 18), a94),
                             exp_scaled(a, -2, 3, one, 0.0)));
        const Interval thr = iv_sub(iv_ratio(7, 12), iv_ratio(1, 20));
        out.push_back({Region::i, v, 0.513, thr, true,
                       iv_strictly_right_of(thr, v)});
    }

    // (ii): 125/256 - (7a/24) e^{-a/4} - (5a/36) e^{-5a/12} - (41a/27) e^{-a/2}
    //       must stay above 1/20.
    {
        const Interval av = iv_point(a);
        Interval v = iv_ratio(125, 256);
        v = iv_sub(v, iv_mul(iv_div_exact(iv_mul_exact(av, 7.0), 24.0),
                             exp_scaled(a, -1, 4, one, 0.0)));
        v = iv_sub(v, iv_mul(iv_div_exact(iv_mul_exact(av, 5.0), 36.0),
                             exp_scaled(a, -5, 12, one, 0.0)));
        v = iv_sub(v, iv_mul(iv_div_exact(iv_mul_exact(av, 41.0), 27.0),
                             exp_scaled(a, -1, 2, one, 0.0)));
        const Interval thr = iv_ratio(1, 20);
        out.push_back({Region::ii, v, 0.369, thr, false,
                       iv_strictly_right_of(v, thr)});
    }

    // (iii): 375/512 + (13/32) e^{-a/16} + (25/288) e^{-5a/48} + (41/9) e^{-3a/8}
    //        must stay below e^{(1/20)(1/8 - 1)} = e^{-7/160}.
    {
        Interval v = iv_ratio(375, 512);
        v = iv_add(v, iv_mul(iv_ratio(13, 32), exp_scaled(a, -1, 16, one, 0.0)));
        v = iv_add(v, iv_mul(iv_ratio(25, 288), exp_scaled(a, -5, 48, one, 0.0)));
        v = iv_add(v, iv_mul(iv_ratio(41, 9), exp_scaled(a, -3, 8, one, 0.0)));
        const Interval thr = iv_exp(iv_ratio(-7, 160));
        out.push_back({Region::iii, v, 0.926, thr, true,
                       iv_strictly_right_of(thr, v)});
    }

    // (iv): (17/24)(57/64)^2 + (3/8)(49/64) + (11/72)(17/64) + (41/9) e^{-a/3}
    //       must stay below e^{-1/20}.
    {
        Interval v = iv_mul(iv_ratio(17, 24), iv_sq(iv_ratio(57, 64)));
        v = iv_add(v, iv_mul(iv_ratio(3, 8), iv_ratio(49, 64)));
        v = iv_add(v, iv_mul(iv_ratio(11, 72), iv_ratio(17, 64)));
        v = iv_add(v, iv_mul(iv_ratio(41, 9), exp_scaled(a, -1, 3, one, 0.0)));
        const Interval thr = iv_exp(iv_ratio(-1, 20));
        out.push_back({Region::iv, v, 0.9203, thr, true,
                       iv_strictly_right_of(thr, v)});
    }

    return out;
}

bool psi_dominates_A(double a, const std::vector<double>& grid) {
    require_rate(a);
    const ExponentialPgf g(a);
    for (double x : grid) {
        const Interval xi = iv_point(x);
        if (!(psi(a, xi).lo >= op_A(g, xi).hi))
            return false;
    }
    return true;
}

bool eps_step_check(double a, const std::vector<double>& grid) {
    if (!(a > 0.0))
        throw std::invalid_argument("eps_step_check: rate must be positive");
    const ExponentialPgf g(a);
    const Interval rate_up = iv_add(iv_point(a), iv_ratio(1, 20));
    for (double x : grid) {
        const Interval xi = iv_point(x);
        const Interval dom = exp_pgf_eval(rate_up, xi);
        const Interval av = op_A(g, xi);
        if (iv_strictly_right_of(av, dom))
            return false; // certified violation at this grid point
    }
    return true;
}

bool psbound_check(double a) {
    require_rate(a);
    const BoundParams p = bound_params(a);
    const Interval x = iv_sub(iv_point(1.0), p.ca); // 1 - c(a)
    const Interval lhs = psi(a, x);
    const Interval rhs = iv_sub(
        iv_point(1.0),
        iv_mul(iv_add(iv_point(a), iv_ratio(1, 20)), p.ca));
    return lhs.hi <= rhs.lo;
}

} // namespace frogcert
