#include "ccym/series.hpp"

#include <algorithm>

#include "ccym/errors.hpp"

namespace ccym {

RSeries RSeries::polynomial(std::vector<MField> coeffs) {
    RSeries r;
    r.p_ = std::move(coeffs);
    r.order_ = kExact;
    return r;
}

RSeries RSeries::truncated(std::vector<MField> coeffs, int order) {
    RSeries r;
    r.p_ = std::move(coeffs);
    r.order_ = order;
    r.trim();
    return r;
}

bool RSeries::is_zero() const {
    for (const auto& x : p_)
        if (!x.is_zero()) return false;
    for (const auto& x : q_)
        if (!x.is_zero()) return false;
    return true;
}

void RSeries::trim() {
    if (!exact()) {
        const std::size_t cap = static_cast<std::size_t>(std::max(order_ + 1, 0));
        if (p_.size() > cap) p_.resize(cap);
        if (q_.size() > cap) q_.resize(cap);
    }
}

const MField& RSeries::coeff(int m) const {
    if (m > order_) throw DomainError("series: coefficient r^" + std::to_string(m) + " beyond known order " + std::to_string(order_));
    return get(p_, m);
}

const MField& RSeries::log_coeff(int m) const {
    if (m > order_) throw DomainError("series: log coefficient r^" + std::to_string(m) + " beyond known order " + std::to_string(order_));
    return get(q_, m);
}

MField& RSeries::coeff_ref(int m) {
    if (static_cast<int>(p_.size()) <= m) p_.resize(m + 1);
    return p_[m];
}

MField& RSeries::log_coeff_ref(int m) {
    if (static_cast<int>(q_.size()) <= m) q_.resize(m + 1);
    return q_[m];
}

RSeries& RSeries::set_order(int o) {
    order_ = o;
    trim();
    return *this;
}

RSeries RSeries::truncate(int o) const {
    RSeries r = *this;
    r.order_ = std::min(order_, o);
    r.trim();
    return r;
}

RSeries operator+(const RSeries& a, const RSeries& b) {
    RSeries r;
    r.order_ = std::min(a.order_, b.order_);
    const std::size_t np = std::max(a.p_.size(), b.p_.size());
    const std::size_t nq = std::max(a.q_.size(), b.q_.size());
    r.p_.resize(np);
    r.q_.resize(nq);
    for (std::size_t i = 0; i < np; ++i) r.p_[i] = RSeries::get(a.p_, static_cast<int>(i)) + RSeries::get(b.p_, static_cast<int>(i));
    for (std::size_t i = 0; i < nq; ++i) r.q_[i] = RSeries::get(a.q_, static_cast<int>(i)) + RSeries::get(b.q_, static_cast<int>(i));
    r.trim();
    return r;
}

RSeries operator-(const RSeries& a, const RSeries& b) { return a + (-1.0) * b; }

RSeries operator*(double s, const RSeries& a) {
    return a.map([s](const MField& x) { return s * x; });
}

int RSeries::valuation() const {
    const int len = stored();
    for (int m = 0; m < len; ++m)
        if (!get(p_, m).is_zero() || !get(q_, m).is_zero()) return m;
    return exact() ? kExact : order_ + 1;
}

template <class Op>
RSeries RSeries::bilinear(const RSeries& a, const RSeries& b, Op op) {
    RSeries r;
    // A product is trustworthy through min(ord_a + val_b, ord_b + val_a).
    const long va = a.valuation(), vb = b.valuation();
    const long oa = a.order_, ob = b.order_;
    r.order_ = static_cast<int>(std::min<long>(RSeries::kExact, std::min(oa + vb, ob + va)));
    const int la = a.stored(), lb = b.stored();
    if (la == 0 || lb == 0) return r;
    int len = la + lb - 1;
    if (!r.exact()) len = std::min(len, r.order_ + 1);
    if (len <= 0) return r;
    r.p_.resize(len);
    const bool has_log = !a.q_.empty() || !b.q_.empty();
    if (has_log) r.q_.resize(len);
    for (int m = 0; m < len; ++m) {
        MField s, t;
        for (int i = std::max(0, m - lb + 1); i <= std::min(m, la - 1); ++i) {
            const MField& ap = get(a.p_, i);
            const MField& bp = get(b.p_, m - i);
            s += op(ap, bp);
            if (has_log) {
                t += op(ap, get(b.q_, m - i));
                t += op(get(a.q_, i), bp);
            }
        }
        r.p_[m] = std::move(s);
        if (has_log) r.q_[m] = std::move(t);
    }
    return r;
}

RSeries operator*(const RSeries& a, const RSeries& b) {
    return RSeries::bilinear(a, b, [](const MField& x, const MField& y) { return x * y; });
}

RSeries comm(const RSeries& a, const RSeries& b) {
    return RSeries::bilinear(a, b, [](const MField& x, const MField& y) { return comm(x, y); });
}

RSeries partial(const RSeries& a, int axis) {
    return a.map([axis](const MField& x) { return partial(x, axis); });
}

RSeries trace(const RSeries& a) {
    return a.map([](const MField& x) { return trace(x); });
}

RSeries RSeries::dr() const {
    RSeries r;
    r.order_ = exact() ? kExact : order_ - 1;
    if (!get(q_, 0).is_zero()) throw DomainError("series: d/dr of log(r) * r^0 term is singular");
    const int len = stored();
    if (len <= 1) return r;
    r.p_.resize(len - 1);
    if (!q_.empty()) r.q_.resize(len - 1);
    for (int m = 1; m < len; ++m) {
        r.p_[m - 1] = static_cast<double>(m) * get(p_, m) + get(q_, m);
        if (!q_.empty()) r.q_[m - 1] = static_cast<double>(m) * get(q_, m);
    }
    r.trim();
    return r;
}

RSeries RSeries::rdr() const {
    RSeries r;
    r.order_ = order_;
    const int len = stored();
    r.p_.resize(len);
    if (!q_.empty()) r.q_.resize(len);
    for (int m = 0; m < len; ++m) {
        r.p_[m] = static_cast<double>(m) * get(p_, m) + get(q_, m);
        if (!q_.empty()) r.q_[m] = static_cast<double>(m) * get(q_, m);
    }
    return r;
}

RSeries RSeries::shift(int k) const {
    if (k < 0) throw DomainError("series: negative shift");
    RSeries r;
    r.order_ = exact() ? kExact : order_ + k;
    r.p_.resize(p_.size() + k);
    for (std::size_t i = 0; i < p_.size(); ++i) r.p_[i + k] = p_[i];
    if (!q_.empty()) {
        r.q_.resize(q_.size() + k);
        for (std::size_t i = 0; i < q_.size(); ++i) r.q_[i + k] = q_[i];
    }
    return r;
}

}  // namespace ccym
