#pragma once

// The admissible-order formulas: the three-branch threshold (written m_arc
// here), its Lorentz companion m_script, the linear high-frequency order,
// the multilinear order, and the composite admissibility predicates for the
// bilinear and multilinear boundedness statements.
//
// Everything is computed in exact extended-rational arithmetic; a double
// API mirrors each formula for irrational inputs.

#include <optional>
#include <span>
#include <vector>

#include "fiolab/thresholds/extended_rational.hpp"

namespace fiolab {

namespace detail {

inline void check_rho(const ExtReal& rho) {
    if (rho < ExtReal(0) || rho > ExtReal(1))
        throw std::invalid_argument("order formula: rho must lie in [0,1]");
}

inline void check_lebesgue(const ExtReal& p, const char* name) {
    if (p < ExtReal(1)) throw std::invalid_argument(std::string("order formula: ") + name + " must be >= 1");
}

}  // namespace detail

struct MArc {
    ExtReal value;
    int branch = 0;  // 1, 2 or 3 in the order the definition prints them
};

// Three-branch admissible order. Branch boundaries are half-open exactly as
// printed: branch 1 when p < 2, or p >= 2 with 1 <= q < p'; branch 2 when
// 2 <= p, q; branch 3 when p > 2 and p' <= q <= 2.  At q = 2, p > 2 branches
// 2 and 3 coincide.
inline MArc m_arc_full(const ExtReal& rho, const ExtReal& p, const ExtReal& q, int n) {
    detail::check_rho(rho);
    detail::check_lebesgue(p, "p");
    detail::check_lebesgue(q, "q");
    if (n < 1) throw std::invalid_argument("m_arc: n must be >= 1");

    const ExtReal n1(n - 1);
    const ExtReal half(1, 2);
    const ExtReal rho_m1_n = ExtReal(n) * (rho - ExtReal(1));  // n(rho-1) <= 0

    if (p < ExtReal(2) || q < p.conjugate()) {
        const ExtReal minpq = min(p, q);
        MArc r;
        r.branch = 1;
        r.value = -(n1 * half * (p.reciprocal() + minpq.reciprocal())) + rho_m1_n / minpq;
        return r;
    }
    if (q >= ExtReal(2)) {
        MArc r;
        r.branch = 2;
        r.value = rho_m1_n * half - n1 * (half - q.reciprocal());
        return r;
    }
    if (p > ExtReal(2) && p.conjugate() <= q && q <= ExtReal(2)) {
        MArc r;
        r.branch = 3;
        const ExtReal denom = ExtReal(1) - ExtReal(2) / p;
        r.value = rho_m1_n / q - (n1 / denom) * (q.reciprocal() - half);
        return r;
    }
    throw std::logic_error("m_arc: parameters fell between branches (definition defect)");
}

inline ExtReal m_arc(const ExtReal& rho, const ExtReal& p, const ExtReal& q, int n) {
    return m_arc_full(rho, p, q, n).value;
}

// Lorentz-endpoint companion, defined for 1 < q < 2 only.
inline ExtReal m_script(const ExtReal& rho, const ExtReal& p, const ExtReal& q, int n) {
    detail::check_rho(rho);
    detail::check_lebesgue(p, "p");
    if (!(ExtReal(1) < q && q < ExtReal(2)))
        throw std::invalid_argument("m_script: q must lie in (1,2)");
    const ExtReal n1(n - 1);
    const ExtReal half(1, 2);
    return ExtReal(n) * (rho - ExtReal(1)) / q -
           (n1 / (ExtReal(1) + p.reciprocal())) * (q.reciprocal() - half);
}

// Order threshold of the first linear high-frequency theorem:
// with s = min(2,p,q),  -(n-1)/2 (1/s + 1/min(s',p)) + n(rho-1)/s.
inline ExtReal theorem_a_order(const ExtReal& rho, const ExtReal& p, const ExtReal& q, int n) {
    detail::check_rho(rho);
    detail::check_lebesgue(p, "p");
    detail::check_lebesgue(q, "q");
    const ExtReal s = min(ExtReal(2), min(p, q));
    const ExtReal ms = min(s.conjugate(), p);
    const ExtReal half(1, 2);
    return -(ExtReal(n - 1) * half * (s.reciprocal() + ms.reciprocal())) +
           ExtReal(n) * (rho - ExtReal(1)) / s;
}

// Pseudodifferential variant: same with the (n-1) spherical term dropped.
inline ExtReal pseudodifferential_order(const ExtReal& rho, const ExtReal& p, const ExtReal& q,
                                        int n) {
    detail::check_rho(rho);
    const ExtReal s = min(ExtReal(2), min(p, q));
    return ExtReal(n) * (rho - ExtReal(1)) / s;
}

// Multilinear order threshold: -(n-1) sum_j |1/q_j - 1/2|.
inline ExtReal theorem_d_order(std::span<const ExtReal> q, int n) {
    ExtReal sum(0);
    const ExtReal half(1, 2);
    for (const auto& qj : q) {
        detail::check_lebesgue(qj, "q_j");
        const ExtReal inv = qj.reciprocal();
        sum = sum + (inv >= half ? inv - half : half - inv);
    }
    return -(ExtReal(n - 1) * sum);
}

struct BilinearAdmissibility {
    bool ok = false;
    ExtReal r, r2;
    ExtReal threshold1, threshold2;  // the two strict upper bounds on m1, m2
    std::optional<std::pair<ExtReal, ExtReal>> lorentz_window;  // [lo, hi) on m2
};

// Admissibility of a bilinear product-type amplitude of orders (m1, m2):
// the iteration bound requires m1 below the (rho1, p, q1) threshold and m2
// below the (rho2, r2, q2) threshold with 1/r2 = 1/p + 1/q1.
inline BilinearAdmissibility bilinear_admissible(const ExtReal& m1, const ExtReal& m2,
                                                 const ExtReal& rho1, const ExtReal& rho2,
                                                 const ExtReal& p, const ExtReal& q1,
                                                 const ExtReal& q2, int n) {
    detail::check_lebesgue(p, "p");
    detail::check_lebesgue(q1, "q1");
    detail::check_lebesgue(q2, "q2");
    if (q1 < q2) throw std::invalid_argument("bilinear_admissible: q1 must be max(q1,q2)");
    if (q1 < p.conjugate())
        throw std::invalid_argument("bilinear_admissible: hypothesis q1 >= p' violated");

    BilinearAdmissibility out;
    out.r = (p.reciprocal() + q1.reciprocal() + q2.reciprocal()).reciprocal();
    out.r2 = (p.reciprocal() + q1.reciprocal()).reciprocal();
    out.threshold1 = m_arc(rho1, p, q1, n);
    out.threshold2 = m_arc(rho2, out.r2, q2, n);
    out.ok = m1 < out.threshold1 && m2 < out.threshold2;
    if (ExtReal(1) <= q2 && q2 < ExtReal(2) && ExtReal(2) <= out.r2)
        out.lorentz_window = {out.threshold2, m_script(rho2, out.r2, q2, n)};
    return out;
}

struct MultilinearAdmissibility {
    bool ok = false;
    ExtReal r;
    std::vector<ExtReal> thresholds;
};

// Admissibility for the multilinear theorem with rho = 1 product amplitudes:
// sum(m)/min(m) >= 2/p and m_j below the threshold at p_j = p sum(m)/m_j.
inline MultilinearAdmissibility theorem_d_admissible(std::span<const ExtReal> m, const ExtReal& p,
                                                     std::span<const ExtReal> q, int n) {
    if (m.size() != q.size() || m.empty())
        throw std::invalid_argument("theorem_d_admissible: need matching nonempty m and q lists");
    detail::check_lebesgue(p, "p");
    ExtReal sum_m(0), min_m = m[0];
    for (const auto& mj : m) {
        if (!(mj < ExtReal(0)))
            throw std::invalid_argument("theorem_d_admissible: every order m_j must be negative");
        sum_m = sum_m + mj;
        min_m = min(min_m, mj);
    }
    for (const auto& qj : q) {
        detail::check_lebesgue(qj, "q_j");
        if (p.is_infinite() && qj.is_infinite())
            throw std::invalid_argument("theorem_d_admissible: q_j must be finite when p = inf");
    }

    MultilinearAdmissibility out;
    ExtReal inv_r = p.reciprocal();
    for (const auto& qj : q) inv_r = inv_r + qj.reciprocal();
    out.r = inv_r.reciprocal();

    out.ok = (sum_m / min_m >= ExtReal(2) / p);
    for (std::size_t j = 0; j < m.size(); ++j) {
        const ExtReal pj = p * (sum_m / m[j]);  // >= 1 since sum_m/m_j >= 1
        const ExtReal thr = m_arc(ExtReal(1), pj, q[j], n);
        out.thresholds.push_back(thr);
        if (!(m[j] < thr)) out.ok = false;
    }
    return out;
}

// ---- double mirror of the formulas, for irrational parameters ----

namespace detail {

inline double conj_d(double p) {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}
inline double inv_d(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace detail

inline double m_arc_d(double rho, double p, double q, int n) {
    const double pp = detail::conj_d(p);
    if (p < 2.0 || q < pp) {
        const double minpq = std::min(p, q);
        return -0.5 * (n - 1) * (detail::inv_d(p) + detail::inv_d(minpq)) +
               n * (rho - 1.0) * detail::inv_d(minpq);
    }
    if (q >= 2.0) return 0.5 * n * (rho - 1.0) - (n - 1) * (0.5 - detail::inv_d(q));
    return n * (rho - 1.0) * detail::inv_d(q) -
           (n - 1) / (1.0 - 2.0 * detail::inv_d(p)) * (detail::inv_d(q) - 0.5);
}

inline double m_script_d(double rho, double p, double q, int n) {
    return n * (rho - 1.0) / q - (n - 1) / (1.0 + detail::inv_d(p)) * (1.0 / q - 0.5);
}

inline double theorem_a_order_d(double rho, double p, double q, int n) {
    const double s = std::min({2.0, p, q});
    const double ms = std::min(detail::conj_d(s), p);
    return -0.5 * (n - 1) * (detail::inv_d(s) + detail::inv_d(ms)) + n * (rho - 1.0) / s;
}

inline double theorem_d_order_d(std::span<const double> q, int n) {
    double sum = 0.0;
    for (double qj : q) sum += std::abs(detail::inv_d(qj) - 0.5);
    return -(n - 1) * sum;
}

}  // namespace fiolab
