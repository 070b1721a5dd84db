#pragma once

// Probability generating function handles. A handle evaluates a PGF
// g : [0,1] -> [0,1] over intervals; enclosures must contain the exact
// value of g on every point of the query interval. The exponential
// (Poisson) family e^{a(x-1)} is the workhorse instance.

#include <memory>
#include <string>

#include "frogcert/interval.hpp"

namespace frogcert {

class PgfHandle {
public:
    virtual ~PgfHandle() = default;
    virtual Interval eval(Interval x) const = 0;
    virtual std::string descriptor() const = 0;
};

// e^{a(x-1)} for a Poisson rate a >= 0. The rate is carried as an interval
// so that non-representable rates (a + 1/20, say) stay certified; exact
// rates use a degenerate interval.
Interval exp_pgf_eval(Interval rate, Interval x);
Interval exp_pgf_deriv(Interval rate, Interval x);

class ExponentialPgf final : public PgfHandle {
public:
    explicit ExponentialPgf(double rate) : rate_(iv_point(rate)) { check(); }
    explicit ExponentialPgf(Interval rate) : rate_(rate) { check(); }

    Interval eval(Interval x) const override { return exp_pgf_eval(rate_, x); }
    Interval deriv(Interval x) const { return exp_pgf_deriv(rate_, x); }
    Interval rate() const { return rate_; }
    std::string descriptor() const override;

private:
    void check() const {
        if (rate_.lo < 0.0)
            throw std::invalid_argument("ExponentialPgf: negative rate");
    }
    Interval rate_;
};

// The constant-1 PGF (the seed of the A-iteration).
class OnePgf final : public PgfHandle {
public:
    Interval eval(Interval) const override { return iv_point(1.0); }
    std::string descriptor() const override { return "1"; }
};

} // namespace frogcert
