#include "frogcert/enumerate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>

namespace frogcert {

void FiniteDistribution::validate() const {
    if (probs.empty())
        throw std::invalid_argument("FiniteDistribution: empty support");
    BigRat sum = 0;
    for (const BigRat& p : probs) {
        if (p < 0)
            throw std::invalid_argument("FiniteDistribution: negative probability");
        sum += p;
    }
    if (sum != 1)
        throw std::invalid_argument("FiniteDistribution: probabilities sum to " +
                                    sum.str() + ", not 1");
}

FiniteDistribution FiniteDistribution::delta(std::size_t k) {
    FiniteDistribution d;
    d.probs.assign(k + 1, BigRat(0));
    d.probs[k] = 1;
    return d;
}

FiniteDistribution FiniteDistribution::uniform01() {
    FiniteDistribution d;
    d.probs = {BigRat(1, 2), BigRat(1, 2)};
    return d;
}

std::string box_model_name(BoxModel m) {
    switch (m) {
    case BoxModel::A: return "A";
    case BoxModel::L: return "L";
    case BoxModel::H: return "H";
    }
    return "?";
}

namespace {

std::int64_t binomial(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// One side fragment: an apex vertex with three boxes below it. Frogs at the
// apex coming up from a box continue to {apex parent, other box, other box}
// uniformly; a frog released by box i never re-enters box i.
//
// Enumeration is a depth-first expansion of pending moves with exact branch
// probabilities. Box activation is idempotent and frog choices are
// independent, so the processing order does not affect the law; keeping the
// pending list sorted makes equal situations collapse in the memo, which is
// what keeps support-3 releases enumerable.
class BoxEnumerator {
public:
    BoxEnumerator(BoxModel model, const FiniteDistribution& release)
        : model_(model), release_(release) {}

    FiniteDistribution run() {
        Dist result;
        if (model_ == BoxModel::A) {
            // Root frog descends to one side (1/2 each); the frog native to
            // the intermediate vertex picks root / side 0 / side 1 (1/3 each).
            for (int s = 0; s < 2; ++s) {
                for (int d = 0; d < 3; ++d) {
                    State st;
                    int immediate = 0;
                    if (d == 0) {
                        immediate = 1; // the intermediate frog reaches the root
                        enter_side(st, s, /*extra_forced=*/1);
                    } else if (d - 1 == s) {
                        // both designated frogs land together: H scenario
                        enter_side(st, s, /*extra_forced=*/2);
                    } else {
                        enter_side(st, s, 1);
                        enter_side(st, 1 - s, 1);
                    }
                    accumulate(result, eval(st), BigRat(1, 6), immediate);
                }
            }
        } else {
            State st;
            enter_side(st, 0, model_ == BoxModel::H ? 2 : 1);
            accumulate(result, eval(st), BigRat(1), 0);
        }

        FiniteDistribution out;
        std::size_t maxk = 0;
        for (const auto& [k, p] : result)
            maxk = std::max(maxk, static_cast<std::size_t>(k));
        out.probs.assign(maxk + 1, BigRat(0));
        BigRat total = 0;
        for (const auto& [k, p] : result) {
            out.probs[static_cast<std::size_t>(k)] = p;
            total += p;
        }
        if (total != 1)
            throw std::logic_error("box enumeration leaked probability: total = " +
                                   total.str());
        return out;
    }

private:
    using Dist = std::map<int, BigRat>;

    struct Move {
        enum Kind : std::uint8_t { Native, Forced, BoxHit, AtApex } kind;
        std::uint8_t side;
        std::uint8_t box;   // BoxHit
        std::uint8_t count; // AtApex cohort size

        std::uint8_t encode() const {
            return static_cast<std::uint8_t>(kind) |
                   static_cast<std::uint8_t>(side << 2) |
                   static_cast<std::uint8_t>(box << 3) |
                   static_cast<std::uint8_t>(count << 5);
        }
        bool operator<(const Move& o) const { return encode() < o.encode(); }
    };

    // Accumulated root hits are deliberately not part of the state: the
    // dynamics never depend on them, so sub-distributions memoize cleanly.
    struct State {
        std::array<bool, 2> entered{false, false};
        std::array<std::array<bool, 3>, 2> box_active{{{false, false, false},
                                                       {false, false, false}}};
        std::vector<Move> pending; // kept sorted

        std::string key() const {
            std::string k;
            k.reserve(pending.size() + 2);
            std::uint8_t masks = 0;
            for (int s = 0; s < 2; ++s) {
                if (entered[static_cast<std::size_t>(s)]) masks |= 1u << s;
                for (int b = 0; b < 3; ++b)
                    if (box_active[static_cast<std::size_t>(s)]
                                  [static_cast<std::size_t>(b)])
                        masks |= 1u << (2 + 3 * s + b);
            }
            k.push_back(static_cast<char>(masks));
            for (const Move& m : pending)
                k.push_back(static_cast<char>(m.encode()));
            return k;
        }
    };

    static void push_sorted(State& st, Move m) {
        st.pending.insert(
            std::upper_bound(st.pending.begin(), st.pending.end(), m), m);
    }

    static void accumulate(Dist& into, const Dist& sub, const BigRat& w,
                           int shift) {
        for (const auto& [k, p] : sub)
            into[k + shift] += w * p;
    }

    // A side becomes active with its native frog (free first step, four
    // directions) plus one or two frogs forced downward.
    void enter_side(State& st, int side, int extra_forced) {
        st.entered[static_cast<std::size_t>(side)] = true;
        push_sorted(st, {Move::Native, static_cast<std::uint8_t>(side), 0, 0});
        for (int i = 0; i < extra_forced; ++i)
            push_sorted(st, {Move::Forced, static_cast<std::uint8_t>(side), 0, 0});
    }

    // L/H: frogs stop at the apex's parent, each one a hit. A: they choose
    // root or the sibling side later, as a pending cohort.
    int arrive_at_apex(State& st, int side, int count) {
        if (count == 0) return 0;
        if (model_ == BoxModel::A) {
            push_sorted(st, {Move::AtApex, static_cast<std::uint8_t>(side), 0,
                             static_cast<std::uint8_t>(count)});
            return 0;
        }
        return count;
    }

    void hit_box(State& st, int side, int box) {
        auto& active = st.box_active[static_cast<std::size_t>(side)]
                                    [static_cast<std::size_t>(box)];
        if (active)
            return; // later arrivals are stopped at the box
        active = true;
        push_sorted(st, {Move::BoxHit, static_cast<std::uint8_t>(side),
                         static_cast<std::uint8_t>(box), 0});
    }

    // Distribution of root hits produced from this state onward.
    Dist eval(const State& st) {
        if (st.pending.empty())
            return {{0, BigRat(1)}};
        const std::string key = st.key();
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;

        State base = st;
        const Move mv = base.pending.back();
        base.pending.pop_back();
        const int side = mv.side;
        Dist out;

        switch (mv.kind) {
        case Move::Native:
            // four directions: up to the apex's parent, or one of the boxes
            for (int d = 0; d < 4; ++d) {
                State t = base;
                int h = 0;
                if (d == 0)
                    h = arrive_at_apex(t, side, 1);
                else
                    hit_box(t, side, d - 1);
                accumulate(out, eval(t), BigRat(1, 4), h);
            }
            break;
        case Move::Forced:
            for (int b = 0; b < 3; ++b) {
                State t = base;
                hit_box(t, side, b);
                accumulate(out, eval(t), BigRat(1, 3), 0);
            }
            break;
        case Move::BoxHit: {
            // Branch over the release batch size, then over the multinomial
            // split of the batch across {apex-parent, other box, other box}.
            for (std::size_t k = 0; k < release_.probs.size(); ++k) {
                const BigRat pk = release_.probs[k];
                if (pk == 0) continue;
                if (k == 0) {
                    accumulate(out, eval(base), pk, 0);
                    continue;
                }
                const int o1 = mv.box == 0 ? 1 : 0;
                const int o2 = mv.box == 2 ? 1 : 2;
                const BigRat third_pow =
                    BigRat(1, boost::multiprecision::pow(
                                  boost::multiprecision::cpp_int(3),
                                  static_cast<unsigned>(k)));
                for (int ka = 0; ka <= static_cast<int>(k); ++ka) {
                    for (int k1 = 0; ka + k1 <= static_cast<int>(k); ++k1) {
                        const int k2 = static_cast<int>(k) - ka - k1;
                        const std::int64_t ways =
                            binomial(static_cast<int>(k), ka) *
                            binomial(static_cast<int>(k) - ka, k1);
                        State t = base;
                        const int h = arrive_at_apex(t, side, ka);
                        if (k1 > 0) hit_box(t, side, o1);
                        if (k2 > 0) hit_box(t, side, o2);
                        accumulate(out, eval(t), pk * third_pow * ways, h);
                    }
                }
            }
            break;
        }
        case Move::AtApex: {
            // m independent frogs at the shared parent vertex, each to the
            // root (1/2, one hit each) or across to the sibling side (1/2).
            // The first crosser through an untraveled edge passes and plays
            // the L scenario there; every later crosser is stopped.
            const int m = mv.count;
            for (int j = 0; j <= m; ++j) {
                State t = base;
                const int crossers = m - j;
                if (crossers > 0) {
                    const int other = 1 - side;
                    if (!t.entered[static_cast<std::size_t>(other)])
                        enter_side(t, other, 1);
                }
                const BigRat prob(binomial(m, j),
                                  boost::multiprecision::cpp_int(1) << m);
                accumulate(out, eval(t), prob, j);
            }
            break;
        }
        }
        memo_.emplace(key, out);
        return out;
    }

    BoxModel model_;
    const FiniteDistribution& release_;
    std::map<std::string, Dist> memo_;
};

} // namespace

FiniteDistribution enumerate_box_model(BoxModel model,
                                       const FiniteDistribution& release) {
    release.validate();
    if (release.support_bound() > 3) {
        const std::size_t k = release.support_bound();
        // six boxes, each k frogs, each with 3 destinations, twice over
        throw std::invalid_argument(
            "enumerate_box_model: release support " + std::to_string(k) +
            " > 3; outcome tree would hold roughly 3^" +
            std::to_string(6 * k) + " leaves");
    }
    return BoxEnumerator(model, release).run();
}

Interval pgf_of(const FiniteDistribution& dist, Interval x) {
    Interval acc = iv_point(0.0);
    for (std::size_t i = dist.probs.size(); i-- > 0;)
        acc = iv_add(iv_from_bigrat(dist.probs[i]), iv_mul(acc, x));
    return acc;
}

BigRat pgf_of_exact(const FiniteDistribution& dist, const BigRat& x) {
    BigRat acc = 0;
    for (std::size_t i = dist.probs.size(); i-- > 0;)
        acc = dist.probs[i] + acc * x;
    return acc;
}

Interval iv_from_bigrat(const BigRat& r) {
    const double d = r.convert_to<double>();
    const BigRat dr(d);
    if (dr == r) return iv_point(d);
    if (dr < r) return {d, detail::next_up(d)};
    return {detail::next_down(d), d};
}

bool bigrat_in_interval(const BigRat& v, Interval iv) {
    return BigRat(iv.lo) <= v && v <= BigRat(iv.hi);
}

FinitePgf::FinitePgf(FiniteDistribution dist, std::string label)
    : dist_(std::move(dist)), label_(std::move(label)) {
    dist_.validate();
}

Interval FinitePgf::eval(Interval x) const { return pgf_of(dist_, x); }

} // namespace frogcert
