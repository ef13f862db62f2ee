#pragma once

// Index-level algorithms shared by boundary fields (S = MField) and collar
// series (S = RSeries). S must provide +, -, *, double*S, partial(S, axis)
// and comm(S, S); a default-constructed S is an exact zero.

#include <vector>

#include "ccym/errors.hpp"
#include "ccym/tensor.hpp"

namespace ccym {

template <class S>
Tensor<S> operator+(Tensor<S> a, const Tensor<S>& b) {
    if (a.size() != b.size()) throw ShapeError("tensor add: rank mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a.c[i] = a.c[i] + b.c[i];
    return a;
}

template <class S>
Tensor<S> operator-(Tensor<S> a, const Tensor<S>& b) {
    if (a.size() != b.size()) throw ShapeError("tensor sub: rank mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a.c[i] = a.c[i] - b.c[i];
    return a;
}

template <class S>
Tensor<S> operator*(double s, Tensor<S> a) {
    for (auto& x : a.c) x = s * x;
    return a;
}

// Componentwise product with a rank-0 quantity on the left.
template <class S>
Tensor<S> scale_by(const S& s, Tensor<S> a) {
    for (auto& x : a.c) x = s * x;
    return a;
}

template <class S>
Tensor<S> tensor_partial(const Tensor<S>& t, int axis) {
    Tensor<S> r(t.n, t.slots);
    for (std::size_t i = 0; i < t.size(); ++i) r.c[i] = partial(t.c[i], axis);
    return r;
}

// Gamma(k,i,j) = Gamma^k_ij of the Levi-Civita connection of g.
template <class S>
Tensor<S> christoffel(const Tensor<S>& g, const Tensor<S>& ginv) {
    const int n = g.n;
    Tensor<S> dg(n, lower_slots(3));  // dg(a,i,j) = d_a g_ij
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                dg(a, i, j) = partial(g(i, j), a);
                dg(a, j, i) = dg(a, i, j);
            }
    Tensor<S> gam(n, {Slot::Upper, Slot::Lower, Slot::Lower});
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<S> low(n);  // Gamma_{l ij}
            for (int l = 0; l < n; ++l) low[l] = 0.5 * (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
            for (int k = 0; k < n; ++k) {
                S s{};
                for (int l = 0; l < n; ++l) s = s + ginv(k, l) * low[l];
                gam(k, i, j) = s;
                gam(k, j, i) = s;
            }
        }
    return gam;
}

// F_ij = d_i A_j - d_j A_i + [A_i, A_j].
template <class S>
Tensor<S> gauge_curvature_t(const Tensor<S>& a) {
    if (a.rank() != 1) throw ShapeError("gauge_curvature: connection must be a one-form");
    const int n = a.n;
    Tensor<S> f(n, lower_slots(2));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            S v = partial(a(j), i) - partial(a(i), j) + comm(a(i), a(j));
            f(j, i) = -1.0 * v;
            f(i, j) = std::move(v);
        }
    return f;
}

// (nabla T)(a, I) = nabla_a T_I with Levi-Civita connection gam (null: flat)
// and gauge coupling [A_a, .] (null: none). The new slot comes first.
template <class S>
Tensor<S> cov_deriv(const Tensor<S>& t, const Tensor<S>* gam, const Tensor<S>* conn) {
    const int n = t.n;
    std::vector<Slot> slots{Slot::Lower};
    slots.insert(slots.end(), t.slots.begin(), t.slots.end());
    Tensor<S> r(n, slots);
    const std::size_t m = t.size();
    for (int a = 0; a < n; ++a) {
        for (std::size_t f = 0; f < m; ++f) {
            S v = partial(t.c[f], a);
            if (conn) v = v + comm((*conn)(a), t.c[f]);
            if (gam) {
                std::vector<int> d = t.digits(f);
                for (int s = 0; s < t.rank(); ++s) {
                    const int orig = d[s];
                    for (int e = 0; e < n; ++e) {
                        d[s] = e;
                        const S& te = t.c[t.flat_of(d)];
                        if (t.slots[s] == Slot::Upper)
                            v = v + (*gam)(orig, a, e) * te;
                        else
                            v = v - (*gam)(e, a, orig) * te;
                    }
                    d[s] = orig;
                }
            }
            r.c[static_cast<std::size_t>(a) * m + f] = std::move(v);
        }
    }
    return r;
}

// sum_ab ginv^{ab} T_{..a..b..} over slots s1 < s2 (null ginv: identity).
template <class S>
Tensor<S> metric_contract(const Tensor<S>& t, const Tensor<S>* ginv, int s1, int s2) {
    if (s1 >= s2 || s2 >= t.rank()) throw ShapeError("metric_contract: bad slots");
    const int n = t.n;
    std::vector<Slot> slots;
    for (int s = 0; s < t.rank(); ++s)
        if (s != s1 && s != s2) slots.push_back(t.slots[s]);
    Tensor<S> r(n, slots);
    if (slots.empty()) r.c.resize(1);
    for (std::size_t f = 0; f < r.c.size(); ++f) {
        std::vector<int> rd = slots.empty() ? std::vector<int>{} : r.digits(f);
        std::vector<int> d(t.rank());
        for (int s = 0, k = 0; s < t.rank(); ++s)
            if (s != s1 && s != s2) d[s] = rd[k++];
        S v{};
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (!ginv && a != b) continue;
                d[s1] = a;
                d[s2] = b;
                if (ginv)
                    v = v + (*ginv)(a, b) * t.c[t.flat_of(d)];
                else
                    v = v + t.c[t.flat_of(d)];
            }
        r.c[f] = std::move(v);
    }
    return r;
}

// Raise slot s with ginv (null: identity).
template <class S>
Tensor<S> raise_slot(const Tensor<S>& t, const Tensor<S>* ginv, int s) {
    Tensor<S> r = t;
    r.slots[s] = Slot::Upper;
    if (!ginv) return r;
    const int n = t.n;
    for (std::size_t f = 0; f < t.size(); ++f) {
        std::vector<int> d = t.digits(f);
        const int i = d[s];
        S v{};
        for (int e = 0; e < n; ++e) {
            d[s] = e;
            v = v + (*ginv)(i, e) * t.c[t.flat_of(d)];
        }
        r.c[f] = std::move(v);
    }
    return r;
}

}  // namespace ccym
