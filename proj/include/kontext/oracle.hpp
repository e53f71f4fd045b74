// Brute-force cross-check: every probability, perturbation, and coefficient
// recomputed by direct summation over the sample points, sharing no code
// with the calculus layer it checks. Deliberately plain-loop style.

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kontext/space.hpp"

namespace kontext {

template <class S>
struct OracleRecord {
    std::vector<S> pa, pb;              // conditional marginals under C
    std::vector<std::vector<S>> t;      // t[y][x] = P(b=x | a=y)
    std::vector<S> delta;               // per b-outcome FTP perturbation
    std::vector<S> weight;              // per b-outcome product under the root
    std::vector<double> lambda;         // delta / (2*sqrt(weight)), NaN where undefined
    S ftp_residual;                     // P(B_1|C) − Σ_y P(A_y|C)P(B_1|A_y C)
    bool context_degenerate = false;
};

/// Everything recomputed from raw weights. Requires P(A_y) > 0 for all y and
/// P(C) > 0; degenerate contexts are reported via the flag, not an exception.
template <class S>
OracleRecord<S> oracle_context(const FiniteSpace<S>& space, const RandomVariable& a,
                               const RandomVariable& b, Event context) {
    const std::size_t npts = space.size();
    auto mass = [&](auto&& keep) {
        S total = scalar_traits<S>::zero();
        for (std::size_t i = 0; i < npts; ++i)
            if (keep(i)) total += space.weight(i);
        return total;
    };
    auto in = [&](Event e, std::size_t i) { return e.contains(i); };

    OracleRecord<S> rec;
    const std::size_t na = a.arity(), nb = b.arity();
    S pc = mass([&](std::size_t i) { return in(context, i); });
    if (scalar_traits<S>::is_zero(pc)) {
        rec.context_degenerate = true;
        rec.ftp_residual = scalar_traits<S>::zero();
        return rec;
    }
    for (std::size_t y = 0; y < na; ++y) {
        S pay = mass([&](std::size_t i) { return a.value_at(i) == a.spectrum()[y]; });
        S pay_c = mass([&](std::size_t i) {
            return in(context, i) && a.value_at(i) == a.spectrum()[y];
        });
        rec.pa.push_back(pay_c / pc);
        if (scalar_traits<S>::is_zero(pay_c)) rec.context_degenerate = true;
        std::vector<S> row;
        for (std::size_t x = 0; x < nb; ++x) {
            S joint = mass([&](std::size_t i) {
                return a.value_at(i) == a.spectrum()[y] && b.value_at(i) == b.spectrum()[x];
            });
            row.push_back(joint / pay);
        }
        rec.t.push_back(std::move(row));
    }
    for (std::size_t x = 0; x < nb; ++x) {
        S pbx = mass([&](std::size_t i) {
            return in(context, i) && b.value_at(i) == b.spectrum()[x];
        });
        rec.pb.push_back(pbx / pc);
    }
    for (std::size_t x = 0; x < nb; ++x) {
        S d = rec.pb[x];
        S w = scalar_traits<S>::one();
        for (std::size_t y = 0; y < na; ++y) {
            d -= rec.pa[y] * rec.t[y][x];
            w *= rec.pa[y] * rec.t[y][x];
        }
        rec.delta.push_back(d);
        rec.weight.push_back(w);
        if (scalar_traits<S>::is_zero(w)) {
            rec.lambda.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            rec.lambda.push_back(scalar_traits<S>::to_double(d) /
                                 (2.0 * std::sqrt(scalar_traits<S>::to_double(w))));
        }
    }
    // classical total probability, conditioning on A_y ∩ C directly
    rec.ftp_residual = rec.pb[0];
    if (!rec.context_degenerate) {
        for (std::size_t y = 0; y < na; ++y) {
            S pay_c = mass([&](std::size_t i) {
                return in(context, i) && a.value_at(i) == a.spectrum()[y];
            });
            S joint = mass([&](std::size_t i) {
                return in(context, i) && a.value_at(i) == a.spectrum()[y] &&
                       b.value_at(i) == b.spectrum()[0];
            });
            rec.ftp_residual -= (pay_c / pc) * (joint / pay_c);
        }
    }
    return rec;
}

/// The two-event splitting coefficient recomputed the same way.
template <class S>
double oracle_mu(const FiniteSpace<S>& space, Event bset, Event d1, Event d2, Event context) {
    const std::size_t npts = space.size();
    auto mass = [&](auto&& keep) {
        S total = scalar_traits<S>::zero();
        for (std::size_t i = 0; i < npts; ++i)
            if (keep(i)) total += space.weight(i);
        return total;
    };
    S pc = mass([&](std::size_t i) { return context.contains(i); });
    S pd1 = mass([&](std::size_t i) { return d1.contains(i); });
    S head = (mass([&](std::size_t i) { return bset.contains(i) && d1.contains(i); }) / pd1) *
             (mass([&](std::size_t i) { return d1.contains(i) && context.contains(i); }) / pc);
    S tail = mass([&](std::size_t i) {
                 return bset.contains(i) && d2.contains(i) && context.contains(i);
             }) / pc;
    S lhs = mass([&](std::size_t i) {
                return bset.contains(i) && (d1.contains(i) || d2.contains(i)) && context.contains(i);
            }) / pc;
    return scalar_traits<S>::to_double(lhs - head - tail) /
           (2.0 * std::sqrt(scalar_traits<S>::to_double(head * tail)));
}

}  // namespace kontext
