#pragma once

// Exact enumeration of the finite box models whose hit-count laws realize
// the operators: a box, once hit, releases a U-distributed batch of frogs
// exactly once (later arrivals are stopped), so the full outcome tree is
// finite and every branch probability is an exact rational. The resulting
// PGFs must coincide with A eta / L eta / H eta where eta is the PGF of U;
// that equality is the hard cross-check grounding the operator evaluators
// in the stochastic processes they summarize.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frogcert/interval.hpp"
#include "frogcert/pgf.hpp"

namespace frogcert {

using BigRat = boost::multiprecision::cpp_rational;

struct FiniteDistribution {
    std::vector<BigRat> probs; // probs[k] = P(count = k)

    std::size_t support_bound() const { return probs.empty() ? 0 : probs.size() - 1; }
    void validate() const; // nonnegative entries summing exactly to 1

    static FiniteDistribution delta(std::size_t k);
    static FiniteDistribution uniform01(); // uniform on {0, 1}
};

enum class BoxModel { A, L, H };

std::string box_model_name(BoxModel m);

// Exact law of the number of frogs hitting the root (model A) or the apex
// vertex (models L, H), with boxes releasing i.i.d. U batches. Release
// support is capped at 3 so the outcome tree stays enumerable.
FiniteDistribution enumerate_box_model(BoxModel model,
                                       const FiniteDistribution& release);

// Certified enclosure of sum_k p_k x^k.
Interval pgf_of(const FiniteDistribution& dist, Interval x);

// The same sum evaluated exactly at a rational point.
BigRat pgf_of_exact(const FiniteDistribution& dist, const BigRat& x);

// Tightest double enclosure of an exact rational.
Interval iv_from_bigrat(const BigRat& r);

bool bigrat_in_interval(const BigRat& v, Interval iv);

// PGF handle over a finite distribution, for feeding enumerated laws (and
// the release laws themselves) to the operator evaluators.
class FinitePgf final : public PgfHandle {
public:
    explicit FinitePgf(FiniteDistribution dist, std::string label = "finite");
    Interval eval(Interval x) const override;
    std::string descriptor() const override { return label_; }
    const FiniteDistribution& dist() const { return dist_; }

private:
    FiniteDistribution dist_;
    std::string label_;
};

} // namespace frogcert
