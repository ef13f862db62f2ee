#pragma once

#include <vector>

#include "ccym/mfield.hpp"

namespace ccym {

// Truncated series in the collar coordinate r with matrix-field coefficients:
//     sum_m p_m r^m + log(r) * sum_m q_m r^m.
// `order` is the highest power whose coefficient is trustworthy. kExact marks a
// polynomial: coefficients beyond the stored ones are exactly zero. Products drop
// log^2 terms; callers keep log parts at powers where log^2 is out of range.
class RSeries {
public:
    static constexpr int kExact = 1 << 28;

    RSeries() = default;  // exact zero
    // Polynomial (exact) from coefficients.
    static RSeries polynomial(std::vector<MField> coeffs);
    // Truncated series known through `order`; missing coefficients are zero.
    static RSeries truncated(std::vector<MField> coeffs, int order);
    static RSeries constant(const MField& c) { return polynomial({c}); }

    int order() const { return order_; }
    bool exact() const { return order_ >= kExact; }
    bool is_zero() const;
    // Lowest power with a stored nonzero coefficient (order + 1 if none is known).
    int valuation() const;
    // Number of stored coefficient slots.
    int stored() const { return static_cast<int>(std::max(p_.size(), q_.size())); }

    // Coefficient of r^m (throws if m exceeds the known order).
    const MField& coeff(int m) const;
    const MField& log_coeff(int m) const;
    MField& coeff_ref(int m);
    MField& log_coeff_ref(int m);

    RSeries& set_order(int o);
    RSeries truncate(int o) const;

    friend RSeries operator+(const RSeries& a, const RSeries& b);
    friend RSeries operator-(const RSeries& a, const RSeries& b);
    friend RSeries operator*(const RSeries& a, const RSeries& b);
    friend RSeries operator*(double s, const RSeries& a);
    friend RSeries comm(const RSeries& a, const RSeries& b);
    friend RSeries partial(const RSeries& a, int axis);
    friend RSeries trace(const RSeries& a);

    // d/dr
    RSeries dr() const;
    // r * d/dr (keeps the order)
    RSeries rdr() const;
    // multiply by r^k
    RSeries shift(int k) const;
    // apply f to every coefficient (p and q)
    template <class F>
    RSeries map(F f) const {
        RSeries r;
        r.order_ = order_;
        r.p_.resize(p_.size());
        r.q_.resize(q_.size());
        for (std::size_t i = 0; i < p_.size(); ++i)
            if (!p_[i].is_zero()) r.p_[i] = f(p_[i]);
        for (std::size_t i = 0; i < q_.size(); ++i)
            if (!q_[i].is_zero()) r.q_[i] = f(q_[i]);
        return r;
    }

private:
    int order_ = kExact;
    std::vector<MField> p_, q_;

    void trim();
    static const MField& get(const std::vector<MField>& v, int m) {
        static const MField zero;
        return (m >= 0 && m < static_cast<int>(v.size())) ? v[m] : zero;
    }
    template <class Op>
    static RSeries bilinear(const RSeries& a, const RSeries& b, Op op);
};

}  // namespace ccym
