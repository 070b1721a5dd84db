#include "frogcert/operators.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace frogcert {

Interval exp_pgf_eval(Interval rate, Interval x) {
    return iv_exp(iv_mul(rate, iv_sub(x, iv_point(1.0))));
}

Interval exp_pgf_deriv(Interval rate, Interval x) {
    return iv_mul(rate, exp_pgf_eval(rate, x));
}

std::string ExponentialPgf::descriptor() const {
    if (rate_.lo == rate_.hi)
        return "exp(" + std::to_string(rate_.lo) + "(x-1))";
    return "exp(" + iv_str(rate_) + "(x-1))";
}

namespace {

struct LhPair {
    Interval L;
    Interval H;
};

// Shared evaluation of L g and H g at one point; the three handle queries
// g((x+2)/3), g((x+1)/3), g(x/3) are reused across every term.
LhPair eval_LH(const PgfHandle& g, Interval x) {
    const Interval g2 = g.eval(iv_div_exact(iv_add(x, iv_point(2.0)), 3.0));
    const Interval g1 = g.eval(iv_div_exact(iv_add(x, iv_point(1.0)), 3.0));
    const Interval g0 = g.eval(iv_div_exact(x, 3.0));

    const Interval g2sq = iv_sq(g2);
    const Interval g1sq = iv_sq(g1);
    const Interval g2cu = iv_mul(g2sq, g2);

    const Interval q4_3 = iv_div_exact(iv_add(x, iv_point(3.0)), 4.0); // (x+3)/4
    const Interval q4_2 = iv_div_exact(iv_add(x, iv_point(2.0)), 4.0); // (x+2)/4
    const Interval q4_1 = iv_div_exact(iv_add(x, iv_point(1.0)), 4.0); // (x+1)/4

    const Interval bracket_mid = iv_sub(g1sq, iv_mul(g2, g1sq));
    const Interval bracket_last =
        iv_add(iv_sub(iv_sub(g0, iv_mul_exact(iv_mul(g1, g0), 2.0)),
                      iv_mul(g2sq, g0)),
               iv_mul_exact(iv_mul(iv_mul(g2, g1), g0), 2.0));

    const Interval L = iv_add(
        iv_add(iv_mul(q4_3, g2cu), iv_mul_exact(iv_mul(q4_2, bracket_mid), 2.0)),
        iv_mul(q4_1, bracket_last));

    const Interval q6_3 = iv_div_exact(iv_add(x, iv_point(3.0)), 6.0); // (x+3)/6
    const Interval q6_2 = iv_div_exact(iv_add(x, iv_point(2.0)), 6.0); // (x+2)/6

    const Interval H = iv_add(iv_add(iv_div_exact(L, 3.0), iv_mul(q6_3, g2cu)),
                              iv_mul(q6_2, bracket_mid));
    return {L, H};
}

} // namespace

Interval op_L(const PgfHandle& g, Interval x) { return eval_LH(g, x).L; }

Interval op_H(const PgfHandle& g, Interval x) { return eval_LH(g, x).H; }

Interval op_A(const PgfHandle& g, Interval x) {
    const Interval y0 = iv_div_exact(x, 2.0);
    const Interval y1 = iv_div_exact(iv_add(x, iv_point(1.0)), 2.0);
    const LhPair p0 = eval_LH(g, y0);
    const LhPair p1 = eval_LH(g, y1);

    const Interval x3 = iv_div_exact(x, 3.0);                          // x/3
    const Interval x1_3 = iv_div_exact(iv_add(x, iv_point(1.0)), 3.0); // (x+1)/3

    Interval r = iv_mul(x3, p0.L);
    r = iv_add(r, iv_mul(x1_3, iv_sq(p1.L)));
    r = iv_sub(r, iv_mul(x3, iv_mul(p1.L, p0.L)));
    r = iv_add(r, iv_div_exact(p0.H, 3.0));
    r = iv_add(r, iv_div_exact(iv_mul(p1.L, p1.H), 3.0));
    r = iv_sub(r, iv_div_exact(iv_mul(p1.L, p0.H), 3.0));
    return r;
}

namespace {

// A applied to an inner handle, memoized by exact query endpoints. Each
// iteration level re-expands the evaluation tree, so the memo is what keeps
// n = 3 affordable on a grid.
class AppliedA final : public PgfHandle {
public:
    explicit AppliedA(std::shared_ptr<const PgfHandle> inner)
        : inner_(std::move(inner)) {}

    Interval eval(Interval x) const override {
        const auto key = std::make_pair(x.lo, x.hi);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        const Interval v = op_A(*inner_, x);
        std::lock_guard<std::mutex> lk(mu_);
        memo_.emplace(key, v);
        return v;
    }

    std::string descriptor() const override {
        return "A[" + inner_->descriptor() + "]";
    }

private:
    std::shared_ptr<const PgfHandle> inner_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<double, double>, Interval> memo_;
};

} // namespace

std::vector<Interval> iterate_A_on_exponential(double rate, int n,
                                               const std::vector<double>& grid) {
    if (n < 0 || n > 3)
        throw std::invalid_argument(
            "iterate_A_on_exponential: n must be in [0,3]; the evaluation tree "
            "grows as 6^n handle queries per grid point");
    std::shared_ptr<const PgfHandle> h = std::make_shared<ExponentialPgf>(rate);
    for (int k = 0; k < n; ++k)
        h = std::make_shared<AppliedA>(h);
    std::vector<Interval> out;
    out.reserve(grid.size());
    for (double x : grid)
        out.push_back(h->eval(iv_point(x)));
    return out;
}

std::vector<double> descending_grid(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("descending_grid: need at least 2 points");
    std::vector<double> g(n);
    const double m = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = static_cast<double>(n - 1 - i) / m;
    return g;
}

} // namespace frogcert
